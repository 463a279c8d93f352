#pragma once

/// @file experiment.hpp
/// @brief Builtin scenarios and seeded multi-trial execution.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "ephemera/config.hpp"
#include "ephemera/events.hpp"
#include "ephemera/metrics.hpp"

namespace ephemera {

/// BL, NL, T1K, T2K, T5K, T10K, T20K, M1, M2, M3, M4 in that order.
std::vector<ScenarioConfig> builtin_scenarios();
std::optional<ScenarioConfig> find_scenario(std::string_view name);

struct TrialResult {
    int trial = 0;
    std::uint64_t seed = 0;
    std::vector<MetricsSnapshot> snapshots;  // padded to the full grid on early finish
    std::array<int, kColorCount> final_captures{};
    Iteration termination = 0;
    std::vector<Event> events;

    bool operator==(const TrialResult&) const = default;
};

/// Runs one trial with seed trial_seed(config.base_seed, trial).
TrialResult run_trial(const ScenarioConfig& config, int trial);

struct RunOptions {
    /// Worker threads for trials; 0 picks hardware concurrency, 1 runs serially.
    unsigned threads = 0;
    /// Also write one event log per trial (`<name>_trial_NN.events`).
    bool write_events = false;
};

struct ScenarioResult {
    std::vector<TrialResult> trials;  // ordered by trial index
    std::vector<AggregateRow> aggregate;
    std::vector<std::filesystem::path> files;
};

/// Runs all trials of `config`. Results never depend on the thread count.
ScenarioResult run_trials(const ScenarioConfig& config, const RunOptions& options = {});

/// run_trials, then writes `<name>_trial_NN.csv` per trial and
/// `<name>_aggregate.csv` into `out_dir` (created if missing).
ScenarioResult run_scenario(const ScenarioConfig& config, const std::filesystem::path& out_dir,
                            const RunOptions& options = {});

std::filesystem::path trial_csv_name(const ScenarioConfig& config, int trial);
std::filesystem::path aggregate_csv_name(const ScenarioConfig& config);

}  // namespace ephemera
