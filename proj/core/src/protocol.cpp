#include "ephemera/protocol.hpp"

#include <algorithm>

namespace ephemera {

std::optional<Color> nearest_unknown_color(const Perception& perception, ColorSet known) {
    std::optional<Color> best;
    int best_distance = 0;
    for (const auto& t : perception.targets) {
        if (known.contains(t.color)) continue;
        if (!best || t.distance < best_distance ||
            (t.distance == best_distance && index_of(t.color) < index_of(*best))) {
            best = t.color;
            best_distance = t.distance;
        }
    }
    return best;
}

std::optional<QueryMessage> emit_query(AgentState& agent, const Perception& perception, Iteration now,
                                       Iteration query_cooldown) {
    if (now < agent.cooldown_until) return std::nullopt;
    const auto color = nearest_unknown_color(perception, agent.store.known());
    if (!color) return std::nullopt;
    agent.cooldown_until = now + query_cooldown;
    QueryMessage msg{agent.id, *color, now};
    agent.pending_query = msg;
    return msg;
}

std::vector<Delivery> resolve_and_deliver(std::span<const QueryMessage> pending, std::span<AgentState> agents,
                                          const ProtocolParams& params, Iteration now) {
    std::vector<QueryMessage> order(pending.begin(), pending.end());
    std::stable_sort(order.begin(), order.end(), [](const QueryMessage& a, const QueryMessage& b) {
        return value_of(a.querier) < value_of(b.querier);
    });

    std::vector<Delivery> deliveries;
    for (const auto& query : order) {
        auto& querier = agents[value_of(query.querier)];
        querier.pending_query.reset();

        const AgentState* responder = nullptr;
        int best = 0;
        for (const auto& candidate : agents) {
            if (candidate.id == querier.id) continue;
            const int d = chebyshev(candidate.pos, querier.pos);
            if (d > params.comm_radius || !candidate.store.knows_at(query.color, now)) continue;
            // agents are visited in ID order, so strict < keeps the lowest ID on ties
            if (responder == nullptr || d < best) {
                responder = &candidate;
                best = d;
            }
        }
        if (responder == nullptr) continue;  // lapses; querier may retry after cooldown

        Delivery delivery{querier.id, responder->id, bt::serialize(bt::make_knowledge_subtree(query.color)), now,
                          query.color, {}};

        bt::Node subtree;
        try {
            subtree = bt::parse(delivery.payload);
        } catch (const bt::ParseError& e) {
            throw ProtocolError("undecodable payload from agent " + std::to_string(value_of(responder->id)) + ": " +
                                e.what());
        }
        if (subtree != bt::make_knowledge_subtree(query.color)) {
            throw ProtocolError("payload does not encode the queried skill: " + delivery.payload);
        }

        delivery.outcome =
            querier.store.learn(query.color, responder->id, now, params.memory_duration, params.capacity_policy);
        if (delivery.outcome.victim) querier.tree = bt::prune(querier.tree, *delivery.outcome.victim);
        if (delivery.outcome.added()) querier.tree = bt::graft(querier.tree, query.color);
        deliveries.push_back(std::move(delivery));
    }
    return deliveries;
}

}  // namespace ephemera
