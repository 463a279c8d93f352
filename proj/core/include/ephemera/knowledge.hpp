#pragma once

/// @file knowledge.hpp
/// @brief Per-agent knowledge with provenance, expiry, and learned capacity.
///
/// Innate entries are permanent and do not count against capacity. Learned
/// entries expire at learned_at + duration and are bounded by MemorySize.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ephemera/color.hpp"
#include "ephemera/geometry.hpp"

namespace ephemera {

/// Maximum number of concurrently held learned subtrees (1-4), or unlimited.
class MemorySize {
public:
    constexpr MemorySize() = default;
    static constexpr MemorySize unlimited() { return MemorySize{}; }
    static MemorySize of(int limit);

    constexpr bool is_unlimited() const { return !limit_; }
    constexpr std::optional<int> limit() const { return limit_; }
    constexpr bool admits(std::size_t learned) const { return !limit_ || learned < static_cast<std::size_t>(*limit_); }
    constexpr bool operator==(const MemorySize&) const = default;

    std::string to_string() const;

private:
    constexpr explicit MemorySize(int limit) : limit_(limit) {}
    std::optional<int> limit_;
};

enum class CapacityPolicy { RejectWhenFull, EvictOldest };

struct Innate {
    bool operator==(const Innate&) const = default;
};
struct Learned {
    AgentId from_agent;
    bool operator==(const Learned&) const = default;
};

struct KnowledgeEntry {
    Color color = Color::Red;
    std::variant<Innate, Learned> source;
    std::optional<Iteration> learned_at;  // absent for innate
    std::optional<Iteration> expires_at;  // absent means never

    bool is_innate() const { return std::holds_alternative<Innate>(source); }
    bool operator==(const KnowledgeEntry&) const = default;
};

struct LearnOutcome {
    enum class Kind { Merged, Refreshed, AlreadyInnate, RejectedFull, Evicted };
    Kind kind = Kind::Merged;
    std::optional<Color> victim;  // set only for Evicted

    /// True when the learned color was newly added to the store.
    bool added() const { return kind == Kind::Merged || kind == Kind::Evicted; }
    bool operator==(const LearnOutcome&) const = default;
};

class KnowledgeStore {
public:
    KnowledgeStore() = default;
    KnowledgeStore(ColorSet innate, MemorySize capacity);

    LearnOutcome learn(Color c, AgentId from, Iteration now, Iteration duration,
                       CapacityPolicy policy = CapacityPolicy::RejectWhenFull);

    /// Removes learned entries with expires_at <= now; returns them in canonical order.
    std::vector<Color> forget_expired(Iteration now);

    /// Drops a learned entry outright (no-op for innate or absent colors).
    bool forget(Color c);

    /// Entry present (innate, or learned and not yet swept by forget_expired).
    bool knows(Color c) const { return entries_[index_of(c)].has_value(); }
    /// Innate, or learned with expires_at > now.
    bool knows_at(Color c, Iteration now) const;
    ColorSet known() const;
    ColorSet innate() const;
    std::size_t learned_count() const;
    MemorySize capacity() const { return capacity_; }
    const std::optional<KnowledgeEntry>& entry(Color c) const { return entries_[index_of(c)]; }

    bool operator==(const KnowledgeStore&) const = default;

private:
    std::array<std::optional<KnowledgeEntry>, kColorCount> entries_{};
    MemorySize capacity_;
};

struct KnowledgeCensus {
    std::array<int, kColorCount> knowers{};  // r_k, g_k, y_k, b_k
    int max_possible = 0;

    int r_k() const { return knowers[0]; }
    int g_k() const { return knowers[1]; }
    int y_k() const { return knowers[2]; }
    int b_k() const { return knowers[3]; }
    int total() const { return knowers[0] + knowers[1] + knowers[2] + knowers[3]; }

    /// Folds one agent's store into the census.
    void add(const KnowledgeStore& store);

    bool operator==(const KnowledgeCensus&) const = default;
};

KnowledgeCensus census(std::span<const KnowledgeStore> stores);

}  // namespace ephemera
