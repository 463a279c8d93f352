#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>

namespace ephemera {

using Iteration = std::int64_t;

/// Agent identifier; agents are stored densely in ID order.
enum class AgentId : std::uint32_t {};

constexpr std::uint32_t value_of(AgentId id) noexcept { return static_cast<std::uint32_t>(id); }
constexpr AgentId agent_id(std::size_t index) noexcept { return static_cast<AgentId>(index); }

struct Cell {
    int x = 0;
    int y = 0;
    constexpr bool operator==(const Cell&) const = default;
};

constexpr int chebyshev(Cell a, Cell b) noexcept {
    const int dx = a.x > b.x ? a.x - b.x : b.x - a.x;
    const int dy = a.y > b.y ? a.y - b.y : b.y - a.y;
    return std::max(dx, dy);
}

constexpr int sign(int v) noexcept { return (v > 0) - (v < 0); }

/// One Chebyshev-greedy step: move each axis by its sign toward `to`.
constexpr Cell step_toward(Cell from, Cell to) noexcept {
    return {from.x + sign(to.x - from.x), from.y + sign(to.y - from.y)};
}

}  // namespace ephemera
