#include "ephemera/knowledge.hpp"

#include <stdexcept>

namespace ephemera {

MemorySize MemorySize::of(int limit) {
    if (limit < 1 || limit > static_cast<int>(kColorCount)) {
        throw std::invalid_argument("memory size must be 1-4 or unlimited, got " + std::to_string(limit));
    }
    return MemorySize(limit);
}

std::string MemorySize::to_string() const { return limit_ ? std::to_string(*limit_) : "unlimited"; }

KnowledgeStore::KnowledgeStore(ColorSet innate, MemorySize capacity) : capacity_(capacity) {
    for (Color c : innate) entries_[index_of(c)] = KnowledgeEntry{c, Innate{}, std::nullopt, std::nullopt};
}

LearnOutcome KnowledgeStore::learn(Color c, AgentId from, Iteration now, Iteration duration, CapacityPolicy policy) {
    if (duration < 1) throw std::invalid_argument("memory duration must be >= 1");
    auto& slot = entries_[index_of(c)];
    if (slot) {
        if (slot->is_innate()) return {LearnOutcome::Kind::AlreadyInnate, std::nullopt};
        slot->source = Learned{from};
        slot->expires_at = std::max(*slot->expires_at, now + duration);
        return {LearnOutcome::Kind::Refreshed, std::nullopt};
    }

    LearnOutcome outcome{LearnOutcome::Kind::Merged, std::nullopt};
    if (!capacity_.admits(learned_count())) {
        if (policy == CapacityPolicy::RejectWhenFull) return {LearnOutcome::Kind::RejectedFull, std::nullopt};
        // Oldest learned entry; canonical iteration order settles ties.
        std::optional<Color> victim;
        for (Color k : kAllColors) {
            const auto& e = entries_[index_of(k)];
            if (!e || e->is_innate()) continue;
            if (!victim || *e->learned_at < *entries_[index_of(*victim)]->learned_at) victim = k;
        }
        entries_[index_of(*victim)].reset();
        outcome = {LearnOutcome::Kind::Evicted, victim};
    }
    slot = KnowledgeEntry{c, Learned{from}, now, now + duration};
    return outcome;
}

std::vector<Color> KnowledgeStore::forget_expired(Iteration now) {
    std::vector<Color> removed;
    for (Color c : kAllColors) {
        auto& e = entries_[index_of(c)];
        if (e && e->expires_at && *e->expires_at <= now) {
            e.reset();
            removed.push_back(c);
        }
    }
    return removed;
}

bool KnowledgeStore::forget(Color c) {
    auto& e = entries_[index_of(c)];
    if (!e || e->is_innate()) return false;
    e.reset();
    return true;
}

bool KnowledgeStore::knows_at(Color c, Iteration now) const {
    const auto& e = entries_[index_of(c)];
    return e && (!e->expires_at || *e->expires_at > now);
}

ColorSet KnowledgeStore::known() const {
    ColorSet s;
    for (Color c : kAllColors) {
        if (knows(c)) s.insert(c);
    }
    return s;
}

ColorSet KnowledgeStore::innate() const {
    ColorSet s;
    for (const auto& e : entries_) {
        if (e && e->is_innate()) s.insert(e->color);
    }
    return s;
}

std::size_t KnowledgeStore::learned_count() const {
    std::size_t n = 0;
    for (const auto& e : entries_) {
        if (e && !e->is_innate()) ++n;
    }
    return n;
}

void KnowledgeCensus::add(const KnowledgeStore& store) {
    for (Color c : kAllColors) {
        if (store.knows(c)) ++knowers[index_of(c)];
    }
    max_possible += static_cast<int>(kColorCount);
}

KnowledgeCensus census(std::span<const KnowledgeStore> stores) {
    KnowledgeCensus result;
    for (const auto& s : stores) result.add(s);
    return result;
}

}  // namespace ephemera
