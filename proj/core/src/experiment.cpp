#include "ephemera/experiment.hpp"

#include <atomic>
#include <exception>
#include <fstream>
#include <system_error>
#include <thread>

#include "ephemera/arena.hpp"
#include "ephemera/rng.hpp"

namespace ephemera {
namespace {

ScenarioConfig table_scenario(std::string name) {
    ScenarioConfig c;
    c.name = std::move(name);
    c.targets_per_color = 25;
    c.robot_counts = {45, 5, 0, 0, 0, 0};
    c.max_iterations = 20000;
    c.trials = 10;
    return c;
}

std::string two_digits(int n) { return n < 10 ? "0" + std::to_string(n) : std::to_string(n); }

}  // namespace

std::vector<ScenarioConfig> builtin_scenarios() {
    std::vector<ScenarioConfig> out;

    auto bl = table_scenario("BL");
    bl.robot_counts = {0, 50, 0, 0, 0, 0};
    out.push_back(bl);

    auto nl = table_scenario("NL");
    nl.learning_enabled = false;
    out.push_back(nl);

    for (Iteration d : {1000, 2000, 5000, 10000, 20000}) {
        auto t = table_scenario("T" + std::to_string(d / 1000) + "K");
        t.memory_duration = d;
        t.memory_size = MemorySize::unlimited();
        out.push_back(t);
    }
    for (int size = 1; size <= 4; ++size) {
        auto m = table_scenario("M" + std::to_string(size));
        m.memory_duration = 20000;
        m.memory_size = MemorySize::of(size);
        out.push_back(m);
    }
    return out;
}

std::optional<ScenarioConfig> find_scenario(std::string_view name) {
    for (auto& s : builtin_scenarios()) {
        if (s.name == name) return s;
    }
    return std::nullopt;
}

TrialResult run_trial(const ScenarioConfig& config, int trial) {
    TrialResult result;
    result.trial = trial;
    result.seed = trial_seed(config.base_seed, static_cast<std::uint64_t>(trial));

    Arena arena(config, result.seed, trial);
    while (arena.running()) arena.step();

    result.termination = arena.t();
    result.final_captures = arena.captures();
    result.snapshots = arena.take_snapshots();
    // Early finish: repeat the final state at the remaining grid points.
    const auto interval = config.snapshot_interval;
    const MetricsSnapshot final_state = snapshot(arena, trial);
    for (Iteration t = (arena.t() / interval + 1) * interval; t <= config.max_iterations; t += interval) {
        MetricsSnapshot padded = final_state;
        padded.t = t;
        result.snapshots.push_back(padded);
    }
    result.events = arena.take_events();
    return result;
}

ScenarioResult run_trials(const ScenarioConfig& config, const RunOptions& options) {
    config.validate();
    const auto n = static_cast<std::size_t>(config.trials);
    ScenarioResult result;
    result.trials.resize(n);
    std::vector<std::exception_ptr> errors(n);

    unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                result.trials[i] = run_trial(config, static_cast<int>(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    std::vector<std::vector<MetricsSnapshot>> series;
    series.reserve(n);
    for (const auto& t : result.trials) series.push_back(t.snapshots);
    result.aggregate = aggregate_trials(series);
    return result;
}

ScenarioResult run_scenario(const ScenarioConfig& config, const std::filesystem::path& out_dir,
                            const RunOptions& options) {
    auto result = run_trials(config, options);

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw std::system_error(ec, "cannot create output directory " + out_dir.string());

    for (const auto& trial : result.trials) {
        const auto path = out_dir / trial_csv_name(config, trial.trial);
        write_csv(trial.snapshots, path);
        result.files.push_back(path);
        if (options.write_events) {
            auto events_path = path;
            events_path.replace_extension(".events");
            std::ofstream out(events_path, std::ios::binary | std::ios::trunc);
            if (!out) throw std::system_error(errno, std::generic_category(), "cannot open " + events_path.string());
            write_events(out, trial.events);
        }
    }
    const auto aggregate_path = out_dir / aggregate_csv_name(config);
    write_aggregate_csv(result.aggregate, aggregate_path);
    result.files.push_back(aggregate_path);
    return result;
}

std::filesystem::path trial_csv_name(const ScenarioConfig& config, int trial) {
    return config.name + "_trial_" + two_digits(trial) + ".csv";
}

std::filesystem::path aggregate_csv_name(const ScenarioConfig& config) { return config.name + "_aggregate.csv"; }

}  // namespace ephemera
