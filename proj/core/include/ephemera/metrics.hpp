#pragma once

/// @file metrics.hpp
/// @brief Group knowledge percentage, capture counts, CSV output and
/// cross-trial aggregation.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ephemera/color.hpp"
#include "ephemera/geometry.hpp"
#include "ephemera/knowledge.hpp"

namespace ephemera {

class Arena;

/// (r_k + g_k + y_k + b_k) / max_possible * 100. Throws std::domain_error
/// when max_possible is 0.
double knowledge_percent(const KnowledgeCensus& census);

struct MetricsSnapshot {
    int trial = 0;
    Iteration t = 0;
    double knowledge_percent = 0.0;
    std::array<int, kColorCount> captured{};
    std::int64_t queries_sent = 0;
    std::int64_t deliveries = 0;
    std::int64_t forgets = 0;
    std::int64_t rejects = 0;

    int captured_total() const { return captured[0] + captured[1] + captured[2] + captured[3]; }
    bool operator==(const MetricsSnapshot&) const = default;
};

MetricsSnapshot snapshot(const Arena& arena, int trial);

inline constexpr std::string_view kTrialCsvHeader =
    "trial,t,knowledge_pct,cap_total,cap_r,cap_g,cap_y,cap_b,queries,deliveries,forgets,rejects";
inline constexpr std::string_view kAggregateCsvHeader =
    "t,mean_knowledge_pct,min,max,mean_cap_total,min,max";

/// Fixed-point decimal with 4 fractional digits, e.g. 10 -> "10.0000".
std::string format_fixed4(double value);

void write_csv(std::ostream& out, std::span<const MetricsSnapshot> snapshots);
void write_csv(std::span<const MetricsSnapshot> snapshots, const std::filesystem::path& path);
std::vector<MetricsSnapshot> read_csv(const std::filesystem::path& path);

struct AggregateRow {
    Iteration t = 0;
    double mean_knowledge = 0.0;
    double min_knowledge = 0.0;
    double max_knowledge = 0.0;
    double mean_captured = 0.0;
    int min_captured = 0;
    int max_captured = 0;
    bool operator==(const AggregateRow&) const = default;
};

/// Per snapshot index: mean/min/max of knowledge percent and total captures.
/// Throws std::invalid_argument on empty input or mismatched snapshot grids.
std::vector<AggregateRow> aggregate_trials(std::span<const std::vector<MetricsSnapshot>> per_trial);

void write_aggregate_csv(std::ostream& out, std::span<const AggregateRow> rows);
void write_aggregate_csv(std::span<const AggregateRow> rows, const std::filesystem::path& path);
std::vector<AggregateRow> read_aggregate_csv(const std::filesystem::path& path);

}  // namespace ephemera
