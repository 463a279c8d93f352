// Acceptance suite: runs the built-in scenarios once and prints one
// PASS/FAIL line per criterion. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "ephemera/arena.hpp"
#include "ephemera/bt.hpp"
#include "ephemera/experiment.hpp"
#include "ephemera/knowledge.hpp"
#include "ephemera/metrics.hpp"
#include "ephemera/rng.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace ephemera;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail << what;
            pass = false;
        }
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::map<std::string, std::string> directory_contents(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& entry : fs::directory_iterator(dir)) out[entry.path().filename().string()] = slurp(entry.path());
    return out;
}

double final_mean(const ScenarioResult& r) { return r.aggregate.back().mean_captured; }

class Suite {
public:
    explicit Suite(fs::path workdir) : workdir_(std::move(workdir)) {}

    const ScenarioResult& scenario(const std::string& name) {
        auto it = results_.find(name);
        if (it == results_.end()) {
            const auto config = *find_scenario(name);
            it = results_.emplace(name, run_scenario(config, workdir_ / "scenarios", RunOptions{0, true})).first;
        }
        return it->second;
    }

    const fs::path& workdir() const { return workdir_; }

private:
    fs::path workdir_;
    std::map<std::string, ScenarioResult> results_;
};

const std::vector<std::string> kDurations{"T1K", "T2K", "T5K", "T10K", "T20K"};
const std::vector<double> kDurationValues{1000, 2000, 5000, 10000, 20000};

void initial_knowledge(Suite& s, Verdict& v) {
    for (const auto& name : std::vector<std::string>{"NL", "T1K", "T2K", "T5K", "T10K", "T20K", "M1", "M2", "M3",
                                                     "M4"}) {
        for (const auto& trial : s.scenario(name).trials) {
            v.check(trial.snapshots.front().t == 0 && trial.snapshots.front().knowledge_percent == 10.0,
                    name + " does not start at 10.0");
        }
    }
    for (const auto& trial : s.scenario("BL").trials) {
        for (const auto& snap : trial.snapshots) {
            v.check(snap.knowledge_percent == 100.0, "BL below 100.0 at t=" + std::to_string(snap.t));
        }
    }
}

void table_fidelity(Suite&, Verdict& v) {
    const std::map<std::string, std::pair<Iteration, int>> expected{
        {"T1K", {1000, 0}},   {"T2K", {2000, 0}},   {"T5K", {5000, 0}}, {"T10K", {10000, 0}},
        {"T20K", {20000, 0}}, {"M1", {20000, 1}},   {"M2", {20000, 2}}, {"M3", {20000, 3}},
        {"M4", {20000, 4}},
    };
    for (const auto& config : builtin_scenarios()) {
        v.check(config.targets_per_color == 25 && config.max_iterations == 20000 && config.trials == 10,
                config.name + " size/iterations/trials");
        if (config.name == "BL") {
            v.check(config.robot_counts == std::array<int, 6>{0, 50, 0, 0, 0, 0}, "BL robots");
            continue;
        }
        v.check(config.robot_counts == std::array<int, 6>{45, 5, 0, 0, 0, 0}, config.name + " robots");
        if (config.name == "NL") {
            v.check(!config.learning_enabled, "NL learning flag");
            continue;
        }
        const auto [duration, size] = expected.at(config.name);
        v.check(config.learning_enabled, config.name + " learning flag");
        v.check(config.memory_duration == duration, config.name + " duration");
        v.check(size == 0 ? config.memory_size.is_unlimited() : config.memory_size == MemorySize::of(size),
                config.name + " memory size");
    }
    const Arena arena(*find_scenario("T5K"), trial_seed(42, 0));
    std::array<int, 4> per_color{};
    for (const auto& t : arena.targets()) ++per_color[index_of(t.color)];
    v.check(per_color == std::array<int, 4>{25, 25, 25, 25}, "target colors at setup");
    int masters = 0;
    for (const auto& a : arena.agents()) masters += a.store.known() == ColorSet::all();
    v.check(arena.agents().size() == 50 && masters == 5, "agent mix at setup");
}

void duration_trend(Suite& s, Verdict& v) {
    std::vector<double> means;
    for (const auto& name : kDurations) means.push_back(final_mean(s.scenario(name)));
    const double rho = oracle::spearman(kDurationValues, means);
    v.detail << "T1K=" << means.front() << " T20K=" << means.back() << " rho=" << rho << "; ";
    v.check(means.back() > means.front(), "mean(T20K) <= mean(T1K)");
    v.check(rho > 0, "non-positive rank correlation");
}

void size_trend(Suite& s, Verdict& v) {
    std::map<std::string, const AggregateRow*> last;
    for (const auto& name : std::vector<std::string>{"M1", "M2", "M3", "M4"}) last[name] = &s.scenario(name).aggregate.back();
    v.detail << "M1=" << last["M1"]->mean_captured << " M4=" << last["M4"]->mean_captured << "; ";
    v.check(last["M1"]->mean_captured < last["M4"]->mean_captured, "mean(M1) >= mean(M4)");
    for (const auto& a : std::vector<std::string>{"M2", "M3", "M4"}) {
        for (const auto& b : std::vector<std::string>{"M2", "M3", "M4"}) {
            if (a == b) continue;
            const double m = last[a]->mean_captured;
            v.check(m >= last[b]->min_captured && m <= last[b]->max_captured, a + " mean outside " + b + " envelope");
        }
    }
}

void bracketing(Suite& s, Verdict& v) {
    const double nl = final_mean(s.scenario("NL"));
    const double bl = final_mean(s.scenario("BL"));
    v.detail << "NL=" << nl << " BL=" << bl << "; ";
    for (const auto& name : kDurations) {
        const double m = final_mean(s.scenario(name));
        v.check(nl <= m && m <= bl, name + " outside [NL, BL]");
    }
}

void knowledge_shape(Suite& s, Verdict& v) {
    for (const auto& trial : s.scenario("T20K").trials) {
        for (std::size_t k = 1; k < trial.snapshots.size(); ++k) {
            v.check(trial.snapshots[k].knowledge_percent >= trial.snapshots[k - 1].knowledge_percent,
                    "T20K knowledge decreased in trial " + std::to_string(trial.trial));
        }
    }
    int decreasing = 0;
    for (const auto& trial : s.scenario("T1K").trials) {
        bool dropped = false;
        for (std::size_t k = 1; k < trial.snapshots.size(); ++k) {
            dropped = dropped || trial.snapshots[k].knowledge_percent < trial.snapshots[k - 1].knowledge_percent;
        }
        decreasing += dropped;
    }
    v.detail << "T1K trials with a decrease=" << decreasing << "; ";
    v.check(decreasing >= 8, "T1K decrease in fewer than 8 trials");
}

void conservation(Suite& s, Verdict& v) {
    std::vector<std::string> names{"NL", "BL", "M1", "M2", "M3", "M4"};
    names.insert(names.end(), kDurations.begin(), kDurations.end());
    for (const auto& name : names) {
        const auto config = *find_scenario(name);
        for (const auto& trial : s.scenario(name).trials) {
            std::size_t next = 0;
            int captures = 0;
            for (std::size_t k = 0; k < trial.snapshots.size(); ++k) {
                const auto& snap = trial.snapshots[k];
                while (next < trial.events.size() && trial.events[next].t <= snap.t) {
                    captures += trial.events[next++].kind == EventKind::Capture;
                }
                const int alive = config.target_count() - captures;
                v.check(snap.captured_total() == captures && alive >= 0 &&
                            snap.captured_total() + alive == config.target_count(),
                        name + " capture conservation");
                if (k == 0) continue;
                const auto& prev = trial.snapshots[k - 1];
                v.check(snap.captured_total() >= prev.captured_total() && snap.queries_sent >= prev.queries_sent &&
                            snap.deliveries >= prev.deliveries && snap.forgets >= prev.forgets &&
                            snap.rejects >= prev.rejects,
                        name + " counter decreased");
            }
        }
    }
    Arena arena(*find_scenario("T1K"), trial_seed(7, 0));
    while (arena.running()) {
        arena.step();
        v.check(arena.captured_total() + arena.alive_targets() == arena.config().target_count(),
                "live arena conservation");
    }
}

void reproducibility(Suite& s, Verdict& v) {
    const auto base = s.workdir() / "repro";
    auto run = [&](const std::string& sub, const std::string& threads) {
        std::ostringstream out, err;
        const int code = cli::run({"ephemera", "run", "--scenario", "T5K", "--seed", "42", "--threads", threads, "--out",
                                   (base / sub).string()},
                                  out, err);
        v.check(code == 0, "cli run failed: " + err.str());
        return directory_contents(base / sub);
    };
    const auto first = run("a", "4");
    const auto second = run("b", "4");
    const auto serial = run("serial", "1");
    v.check(first.size() == 11, "expected 11 CSV files");
    v.check(first == second, "repeat runs differ");
    v.check(first == serial, "parallel and serial runs differ");
}

void oracle_agreement(Suite& s, Verdict& v) {
    const auto config = *find_scenario("T5K");
    const auto& result = s.scenario("T5K");
    for (int i = 0; i < 3; ++i) {
        const auto rows = oracle::read_trial_rows((s.workdir() / "scenarios" / trial_csv_name(config, i)).string());
        std::vector<Iteration> times;
        for (const auto& r : rows) times.push_back(r.t);
        const auto replayed = oracle::replay_knowledge_percent(config, result.trials[i].events, times);
        for (std::size_t k = 0; k < rows.size(); ++k) {
            v.check(format_fixed4(replayed[k]) == format_fixed4(rows[k].knowledge),
                    "replay mismatch in trial " + std::to_string(i) + " at t=" + std::to_string(rows[k].t));
        }
    }

    std::mt19937_64 rng(2024);
    std::vector<Iteration> checkpoints;
    for (int k = 0; k < 20; ++k) checkpoints.push_back(1 + static_cast<Iteration>(rng() % 20000));
    std::sort(checkpoints.begin(), checkpoints.end());
    auto t1k = *find_scenario("T1K");
    Arena arena(t1k, trial_seed(42, 5));
    std::size_t checked = 0;
    for (Iteration cp : checkpoints) {
        while (arena.running() && arena.t() < cp) arena.step();
        std::vector<KnowledgeStore> stores;
        for (const auto& a : arena.agents()) stores.push_back(a.store);
        v.check(census(stores).knowers == oracle::brute_force_census(arena),
                "census mismatch at t=" + std::to_string(arena.t()));
        ++checked;
    }
    v.check(checked == 20, "fewer than 20 census checks");
}

void tree_laws(Suite&, Verdict& v) {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 1000; ++i) {
        const auto tree = oracle::random_tree(rng);
        const auto text = bt::serialize(tree);
        v.check(bt::parse(text) == tree && bt::serialize(bt::parse(text)) == text, "round-trip failed: " + text);
    }
    for (unsigned bits = 0; bits < 16; ++bits) {
        const auto set = ColorSet::from_bits(static_cast<std::uint8_t>(bits));
        const auto tree = bt::assemble_agent_tree(set);
        v.check(bt::is_agent_tree(tree) && bt::known_colors(tree) == set, "assembled tree shape");
        for (Color c : kAllColors) {
            v.check(bt::graft(tree, c) == bt::assemble_agent_tree(set | ColorSet{c}), "graft law");
            v.check(bt::prune(tree, c) == bt::assemble_agent_tree(set - ColorSet{c}), "prune law");
            v.check(bt::graft(bt::graft(tree, c), c) == bt::graft(tree, c), "graft idempotence");
        }
    }
}

void store_rules(Suite&, Verdict& v) {
    const AgentId peer = agent_id(3);
    for (Iteration d : {1, 25, 1000, 20000}) {
        KnowledgeStore store({}, MemorySize::unlimited());
        store.learn(Color::Yellow, peer, 500, d);
        v.check(store.forget_expired(500 + d - 1).empty() && store.knows_at(Color::Yellow, 500 + d - 1),
                "forgotten early for d=" + std::to_string(d));
        v.check(store.forget_expired(500 + d) == std::vector<Color>{Color::Yellow} && !store.knows(Color::Yellow),
                "not forgotten at deadline for d=" + std::to_string(d));
    }
    KnowledgeStore reject({}, MemorySize::of(1));
    reject.learn(Color::Red, peer, 1, 100);
    const auto r = reject.learn(Color::Blue, peer, 2, 100);
    v.check(r.kind == LearnOutcome::Kind::RejectedFull && reject.known() == ColorSet{Color::Red}, "reject policy");

    KnowledgeStore evict({}, MemorySize::of(1));
    evict.learn(Color::Red, peer, 1, 100, CapacityPolicy::EvictOldest);
    const auto e = evict.learn(Color::Blue, peer, 2, 100, CapacityPolicy::EvictOldest);
    v.check(e.kind == LearnOutcome::Kind::Evicted && e.victim == Color::Red && evict.known() == ColorSet{Color::Blue},
            "evict_oldest policy");
}

}  // namespace

int main(int argc, char** argv) {
    fs::path workdir = fs::temp_directory_path() / "ephemera_acceptance";
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--workdir" && i + 1 < argc) {
            workdir = argv[++i];
        } else {
            std::cerr << "usage: ephemera_acceptance [--workdir DIR]\n";
            return 2;
        }
    }
    fs::remove_all(workdir);
    fs::create_directories(workdir);

    Suite suite(workdir);
    const std::vector<std::pair<std::string, std::function<void(Suite&, Verdict&)>>> criteria{
        {"initial-knowledge", initial_knowledge},
        {"table-fidelity", table_fidelity},
        {"duration-improves-captures", duration_trend},
        {"memory-size-trend", size_trend},
        {"bracketed-by-baselines", bracketing},
        {"knowledge-curve-shape", knowledge_shape},
        {"target-conservation", conservation},
        {"reproducibility", reproducibility},
        {"oracle-agreement", oracle_agreement},
        {"tree-round-trip-and-laws", tree_laws},
        {"expiry-and-capacity", store_rules},
    };

    int failures = 0;
    int index = 0;
    for (const auto& [name, body] : criteria) {
        ++index;
        Verdict verdict;
        const auto start = std::chrono::steady_clock::now();
        try {
            body(suite, verdict);
        } catch (const std::exception& e) {
            verdict.check(false, std::string("exception: ") + e.what());
        }
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        failures += !verdict.pass;
        std::cout << (verdict.pass ? "PASS" : "FAIL") << " " << index << " " << name << " (" << ms << " ms)";
        if (const auto detail = verdict.detail.str(); !detail.empty()) std::cout << " " << detail;
        std::cout << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
