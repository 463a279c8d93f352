#pragma once

/// @file events.hpp
/// @brief Trial event log.
///
/// One line per event: `t,kind,agent,color[,counterpart]`.
///   delivery  agent learned color from counterpart (Merged or Evicted outcome)
///   reject    agent was answered by counterpart but had no free capacity
///   evict     agent dropped a learned color to make room (logged before its delivery)
///   forget    agent's learned color expired
///   capture   agent collected a target of color

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ephemera/color.hpp"
#include "ephemera/geometry.hpp"

namespace ephemera {

enum class EventKind { Delivery, Reject, Evict, Forget, Capture };

std::string_view to_string(EventKind k) noexcept;

struct Event {
    Iteration t = 0;
    EventKind kind = EventKind::Capture;
    AgentId agent{};
    Color color = Color::Red;
    std::optional<AgentId> counterpart;

    std::string to_line() const;
    static Event from_line(std::string_view line);
    bool operator==(const Event&) const = default;
};

void write_events(std::ostream& out, const std::vector<Event>& events);
std::vector<Event> read_events(std::istream& in);

}  // namespace ephemera
