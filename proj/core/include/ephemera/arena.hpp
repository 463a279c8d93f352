#pragma once

/// @file arena.hpp
/// @brief Discrete-time grid world.
///
/// step() advances the clock to t+1 and runs, each phase over agents in
/// ascending ID:
///   1. resolve queries emitted during iteration t
///   2. forget expired learned knowledge (pruning trees)
///   3. sense
///   4. tick trees; Query intents emit queries
///   5. execute intents (collect / move / explore / stand)
///   6. record a metrics snapshot when t+1 is a multiple of snapshot_interval
///
/// All randomness comes from one Rng stream drawn in that phase/agent order.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ephemera/agent.hpp"
#include "ephemera/config.hpp"
#include "ephemera/events.hpp"
#include "ephemera/metrics.hpp"
#include "ephemera/perception.hpp"
#include "ephemera/protocol.hpp"
#include "ephemera/rng.hpp"

namespace ephemera {

struct Target {
    TargetId id = 0;
    Color color = Color::Red;
    Cell pos;
    bool alive = true;
    bool operator==(const Target&) const = default;
};

struct Counters {
    std::int64_t queries_sent = 0;
    std::int64_t deliveries = 0;
    std::int64_t forgets = 0;
    std::int64_t rejects = 0;
    bool operator==(const Counters&) const = default;
};

class SetupError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Arena {
public:
    /// Places targets (distinct cells, color-major order) and then agents
    /// (overlap allowed; IDs assigned I, M, R, G, Y, B blocks in order) from an
    /// Rng seeded with `seed`. Records the t=0 snapshot under `trial`.
    Arena(const ScenarioConfig& config, std::uint64_t seed, int trial = 0);

    /// False once max_iterations is reached or no target is left.
    bool running() const;
    void step();

    Perception sense(const AgentState& agent) const;

    const ScenarioConfig& config() const { return config_; }
    Iteration t() const { return t_; }
    int trial() const { return trial_; }
    const std::vector<Target>& targets() const { return targets_; }
    const std::vector<AgentState>& agents() const { return agents_; }
    const std::vector<QueryMessage>& pending_queries() const { return pending_; }
    const std::array<int, kColorCount>& captures() const { return captures_; }
    int captured_total() const;
    int alive_targets() const { return alive_; }
    const Counters& counters() const { return counters_; }
    const std::vector<Event>& events() const { return events_; }
    const std::vector<MetricsSnapshot>& snapshots() const { return snapshots_; }

    /// Moves the recorded snapshots out (used when finishing a trial).
    std::vector<MetricsSnapshot> take_snapshots() { return std::move(snapshots_); }
    std::vector<Event> take_events() { return std::move(events_); }

    // Test hooks: direct placement for hand-built scenarios.
    AgentState& agent_mut(AgentId id) { return agents_[value_of(id)]; }
    void place_agent(AgentId id, Cell pos);
    /// Replaces all targets; positions must be distinct and in bounds.
    void set_targets(std::vector<Target> targets);

private:
    bool in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < config_.width && c.y < config_.height; }
    std::size_t cell_index(Cell c) const {
        return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(config_.width) + static_cast<std::size_t>(c.x);
    }
    void rebuild_occupancy();

    void phase_resolve();
    void phase_forget();
    void phase_act(const std::vector<Perception>& perceptions);
    void execute_intent(AgentState& agent, const bt::ActionKind& intent, const Perception& perception);
    void explore(AgentState& agent);
    void record_snapshot();

    ScenarioConfig config_;
    int trial_ = 0;
    Rng rng_;
    Iteration t_ = 0;
    std::vector<Target> targets_;
    std::vector<std::int32_t> occupancy_;  // cell -> alive target index, or -1
    int alive_ = 0;
    std::vector<AgentState> agents_;
    std::vector<QueryMessage> pending_;
    std::array<int, kColorCount> captures_{};
    Counters counters_;
    std::vector<Event> events_;
    std::vector<MetricsSnapshot> snapshots_;
};

}  // namespace ephemera
