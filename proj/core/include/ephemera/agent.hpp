#pragma once

#include <optional>

#include "ephemera/bt.hpp"
#include "ephemera/config.hpp"
#include "ephemera/geometry.hpp"
#include "ephemera/knowledge.hpp"

namespace ephemera {

struct QueryMessage {
    AgentId querier{};
    Color color = Color::Red;
    Iteration emitted_at = 0;
    bool operator==(const QueryMessage&) const = default;
};

/// Invariant at every phase boundary: tree == assemble_agent_tree(store.known()).
struct AgentState {
    AgentId id{};
    RobotType robot_type = RobotType::I;
    Cell pos;
    KnowledgeStore store;
    bt::Node tree;
    Iteration cooldown_until = 0;
    std::optional<QueryMessage> pending_query;

    bool operator==(const AgentState&) const = default;
};

}  // namespace ephemera
