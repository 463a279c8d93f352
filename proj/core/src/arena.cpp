#include "ephemera/arena.hpp"

#include <string>

namespace ephemera {

Arena::Arena(const ScenarioConfig& config, std::uint64_t seed, int trial)
    : config_(config), trial_(trial), rng_(seed) {
    config_.validate();
    const auto cells = static_cast<std::uint64_t>(config_.width) * static_cast<std::uint64_t>(config_.height);
    if (static_cast<std::uint64_t>(config_.target_count()) > cells) {
        throw SetupError("scenario '" + config_.name + "' needs " + std::to_string(config_.target_count()) +
                         " target cells but the grid has only " + std::to_string(cells));
    }

    occupancy_.assign(cells, -1);
    targets_.reserve(static_cast<std::size_t>(config_.target_count()));
    for (Color c : kAllColors) {
        for (int k = 0; k < config_.targets_per_color; ++k) {
            std::uint64_t cell;
            do {
                cell = rng_.below(cells);
            } while (occupancy_[cell] >= 0);
            const auto id = static_cast<TargetId>(targets_.size());
            const Cell pos{static_cast<int>(cell % static_cast<std::uint64_t>(config_.width)),
                           static_cast<int>(cell / static_cast<std::uint64_t>(config_.width))};
            occupancy_[cell] = static_cast<std::int32_t>(id);
            targets_.push_back(Target{id, c, pos, true});
        }
    }
    alive_ = static_cast<int>(targets_.size());

    agents_.reserve(static_cast<std::size_t>(config_.agent_count()));
    for (RobotType type : kAllRobotTypes) {
        for (int k = 0; k < config_.robot_counts[static_cast<std::size_t>(type)]; ++k) {
            const std::uint64_t cell = rng_.below(cells);
            AgentState agent;
            agent.id = agent_id(agents_.size());
            agent.robot_type = type;
            agent.pos = {static_cast<int>(cell % static_cast<std::uint64_t>(config_.width)),
                         static_cast<int>(cell / static_cast<std::uint64_t>(config_.width))};
            agent.store = KnowledgeStore(innate_colors(type), config_.memory_size);
            agent.tree = bt::assemble_agent_tree(agent.store.known());
            agents_.push_back(std::move(agent));
        }
    }

    record_snapshot();
}

bool Arena::running() const { return t_ < config_.max_iterations && alive_ > 0; }

int Arena::captured_total() const { return captures_[0] + captures_[1] + captures_[2] + captures_[3]; }

void Arena::place_agent(AgentId id, Cell pos) {
    if (!in_bounds(pos)) throw std::out_of_range("agent position out of bounds");
    agents_[value_of(id)].pos = pos;
}

void Arena::set_targets(std::vector<Target> targets) {
    targets_ = std::move(targets);
    for (std::size_t i = 0; i < targets_.size(); ++i) {
        targets_[i].id = static_cast<TargetId>(i);
        if (!in_bounds(targets_[i].pos)) throw std::out_of_range("target position out of bounds");
    }
    rebuild_occupancy();
}

void Arena::rebuild_occupancy() {
    std::fill(occupancy_.begin(), occupancy_.end(), -1);
    alive_ = 0;
    for (const auto& target : targets_) {
        if (!target.alive) continue;
        auto& slot = occupancy_[cell_index(target.pos)];
        if (slot >= 0) throw std::invalid_argument("two alive targets share a cell");
        slot = static_cast<std::int32_t>(target.id);
        ++alive_;
    }
}

Perception Arena::sense(const AgentState& agent) const {
    Perception p;
    for (const auto& target : targets_) {
        if (!target.alive) continue;
        const int d = chebyshev(agent.pos, target.pos);
        if (d <= config_.sense_radius) p.targets.push_back({target.id, target.color, target.pos, d});
    }
    p.sees_unknown = !(p.visible_colors() - agent.store.known()).empty();
    return p;
}

void Arena::step() {
    if (!running()) return;
    ++t_;
    if (config_.learning_enabled) phase_resolve();
    pending_.clear();
    phase_forget();

    std::vector<Perception> perceptions;
    perceptions.reserve(agents_.size());
    for (const auto& agent : agents_) perceptions.push_back(sense(agent));

    phase_act(perceptions);

    if (t_ % config_.snapshot_interval == 0) record_snapshot();
}

void Arena::phase_resolve() {
    const ProtocolParams params{config_.comm_radius, config_.query_cooldown, config_.memory_duration,
                                config_.capacity_policy};
    for (const auto& d : resolve_and_deliver(pending_, agents_, params, t_)) {
        if (d.outcome.kind == LearnOutcome::Kind::RejectedFull) {
            ++counters_.rejects;
            events_.push_back({t_, EventKind::Reject, d.querier, d.color, d.responder});
            continue;
        }
        if (d.outcome.victim) {
            ++counters_.forgets;
            events_.push_back({t_, EventKind::Evict, d.querier, *d.outcome.victim, std::nullopt});
        }
        if (d.outcome.added()) {
            ++counters_.deliveries;
            events_.push_back({t_, EventKind::Delivery, d.querier, d.color, d.responder});
        }
    }
}

void Arena::phase_forget() {
    for (auto& agent : agents_) {
        for (Color c : agent.store.forget_expired(t_)) {
            agent.tree = bt::prune(agent.tree, c);
            ++counters_.forgets;
            events_.push_back({t_, EventKind::Forget, agent.id, c, std::nullopt});
        }
    }
}

void Arena::phase_act(const std::vector<Perception>& perceptions) {
    std::vector<bt::ActionKind> intents;
    intents.reserve(agents_.size());
    for (std::size_t i = 0; i < agents_.size(); ++i) {
        auto& agent = agents_[i];
        bt::Blackboard bb{perceptions[i], agent.store.known(), std::nullopt};
        bt::tick(agent.tree, bb);
        // the trailing Explore leaf guarantees an intent on canonical trees
        intents.push_back(bb.intent.value_or(bt::ActionKind{bt::Explore{}}));
        if (config_.learning_enabled && std::holds_alternative<bt::Query>(intents.back())) {
            if (auto msg = emit_query(agent, perceptions[i], t_, config_.query_cooldown)) {
                pending_.push_back(*msg);
                ++counters_.queries_sent;
            }
        }
    }
    for (std::size_t i = 0; i < agents_.size(); ++i) execute_intent(agents_[i], intents[i], perceptions[i]);
}

void Arena::execute_intent(AgentState& agent, const bt::ActionKind& intent, const Perception& perception) {
    if (std::holds_alternative<bt::Query>(intent)) return;
    if (std::holds_alternative<bt::Explore>(intent)) {
        explore(agent);
        return;
    }

    const Color c = std::get<bt::Collect>(intent).color;
    const std::int32_t here = occupancy_[cell_index(agent.pos)];
    if (here >= 0 && targets_[static_cast<std::size_t>(here)].color == c) {
        auto& target = targets_[static_cast<std::size_t>(here)];
        target.alive = false;
        occupancy_[cell_index(agent.pos)] = -1;
        --alive_;
        ++captures_[index_of(c)];
        events_.push_back({t_, EventKind::Capture, agent.id, c, std::nullopt});
        return;
    }

    // Nearest still-alive visible target of c; an earlier agent may have
    // taken the one this agent saw.
    const SeenTarget* goal = nullptr;
    for (const auto& seen : perception.targets) {
        if (seen.color != c || !targets_[seen.id].alive) continue;
        if (goal == nullptr || seen.distance < goal->distance) goal = &seen;
    }
    if (goal == nullptr) {
        explore(agent);
        return;
    }
    agent.pos = step_toward(agent.pos, goal->pos);
}

void Arena::explore(AgentState& agent) {
    std::array<Cell, 8> options{};
    std::size_t n = 0;
    for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const Cell next{agent.pos.x + dx, agent.pos.y + dy};
            if (in_bounds(next)) options[n++] = next;
        }
    }
    if (n == 0) return;  // 1x1 grid
    agent.pos = options[rng_.below(n)];
}

void Arena::record_snapshot() { snapshots_.push_back(snapshot(*this, trial_)); }

}  // namespace ephemera
