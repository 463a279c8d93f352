#pragma once

/// @file protocol.hpp
/// @brief Query / respond / merge exchange between agents.
///
/// An agent whose tick intent is Query broadcasts a color query. At the start
/// of the next iteration the nearest agent within comm radius that knows the
/// color (ties: lowest ID) answers with the serialized knowledge subtree; the
/// querier parses it, records it in its store and grafts it into its tree.

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ephemera/agent.hpp"
#include "ephemera/perception.hpp"

namespace ephemera {

struct Delivery {
    AgentId querier{};
    AgentId responder{};
    std::string payload;
    Iteration delivered_at = 0;
    Color color = Color::Red;
    LearnOutcome outcome;
};

struct ProtocolParams {
    int comm_radius = 10;
    Iteration query_cooldown = 25;
    Iteration memory_duration = 20000;
    CapacityPolicy capacity_policy = CapacityPolicy::RejectWhenFull;
};

class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Color of the nearest visible target the agent does not know; distance ties
/// go to canonical color order.
std::optional<Color> nearest_unknown_color(const Perception& perception, ColorSet known);

/// Emits a query unless the agent is cooling down; sets the new cooldown.
std::optional<QueryMessage> emit_query(AgentState& agent, const Perception& perception, Iteration now,
                                       Iteration query_cooldown);

/// Resolves `pending` (processed in ascending querier ID) against `agents`,
/// which must be indexed by AgentId. Returns one Delivery per answered query,
/// including answers the querier could not store (outcome RejectedFull).
std::vector<Delivery> resolve_and_deliver(std::span<const QueryMessage> pending, std::span<AgentState> agents,
                                          const ProtocolParams& params, Iteration now);

}  // namespace ephemera
