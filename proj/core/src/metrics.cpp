#include "ephemera/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string_view>
#include <system_error>

#include "ephemera/arena.hpp"

namespace ephemera {
namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) return fields;
        start = comma + 1;
    }
}

template <typename T>
T parse_field(std::string_view field, const std::filesystem::path& path, int line_no) {
    T value{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": bad field '" +
                                 std::string(field) + "'");
    }
    return value;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::system_error(errno, std::generic_category(), "cannot open " + path.string() + " for writing");
    return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw std::system_error(errno, std::generic_category(), "write failed for " + path.string());
}

// Reads the CSV body (header checked) line by line.
template <typename RowFn>
void read_rows(const std::filesystem::path& path, std::string_view header, std::size_t columns, RowFn&& on_row) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::system_error(errno, std::generic_category(), "cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != header) {
        throw std::runtime_error(path.string() + ": unexpected CSV header");
    }
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split(line);
        if (fields.size() != columns) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": expected " +
                                     std::to_string(columns) + " fields");
        }
        on_row(fields, line_no);
    }
}

}  // namespace

double knowledge_percent(const KnowledgeCensus& census) {
    if (census.max_possible <= 0) throw std::domain_error("knowledge percent undefined for zero agents");
    return static_cast<double>(census.total()) / static_cast<double>(census.max_possible) * 100.0;
}

MetricsSnapshot snapshot(const Arena& arena, int trial) {
    KnowledgeCensus c;
    for (const auto& agent : arena.agents()) c.add(agent.store);
    MetricsSnapshot s;
    s.trial = trial;
    s.t = arena.t();
    s.knowledge_percent = knowledge_percent(c);
    s.captured = arena.captures();
    s.queries_sent = arena.counters().queries_sent;
    s.deliveries = arena.counters().deliveries;
    s.forgets = arena.counters().forgets;
    s.rejects = arena.counters().rejects;
    return s;
}

std::string format_fixed4(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, 4);
    if (ec != std::errc{}) throw std::runtime_error("cannot format value");
    return std::string(buf, ptr);
}

void write_csv(std::ostream& out, std::span<const MetricsSnapshot> snapshots) {
    out << kTrialCsvHeader << '\n';
    for (const auto& s : snapshots) {
        out << s.trial << ',' << s.t << ',' << format_fixed4(s.knowledge_percent) << ',' << s.captured_total();
        for (int c : s.captured) out << ',' << c;
        out << ',' << s.queries_sent << ',' << s.deliveries << ',' << s.forgets << ',' << s.rejects << '\n';
    }
}

void write_csv(std::span<const MetricsSnapshot> snapshots, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    write_csv(out, snapshots);
    finish_write(out, path);
}

std::vector<MetricsSnapshot> read_csv(const std::filesystem::path& path) {
    std::vector<MetricsSnapshot> rows;
    read_rows(path, kTrialCsvHeader, 12, [&](const std::vector<std::string_view>& f, int n) {
        MetricsSnapshot s;
        s.trial = parse_field<int>(f[0], path, n);
        s.t = parse_field<Iteration>(f[1], path, n);
        s.knowledge_percent = parse_field<double>(f[2], path, n);
        for (std::size_t c = 0; c < kColorCount; ++c) s.captured[c] = parse_field<int>(f[4 + c], path, n);
        if (parse_field<int>(f[3], path, n) != s.captured_total()) {
            throw std::runtime_error(path.string() + ":" + std::to_string(n) + ": cap_total mismatch");
        }
        s.queries_sent = parse_field<std::int64_t>(f[8], path, n);
        s.deliveries = parse_field<std::int64_t>(f[9], path, n);
        s.forgets = parse_field<std::int64_t>(f[10], path, n);
        s.rejects = parse_field<std::int64_t>(f[11], path, n);
        rows.push_back(s);
    });
    return rows;
}

std::vector<AggregateRow> aggregate_trials(std::span<const std::vector<MetricsSnapshot>> per_trial) {
    if (per_trial.empty()) throw std::invalid_argument("aggregate_trials: no trials");
    const std::size_t points = per_trial.front().size();
    for (const auto& series : per_trial) {
        if (series.size() != points) throw std::invalid_argument("aggregate_trials: trials have different lengths");
    }

    std::vector<AggregateRow> rows;
    rows.reserve(points);
    const auto n = static_cast<double>(per_trial.size());
    for (std::size_t i = 0; i < points; ++i) {
        AggregateRow row;
        row.t = per_trial.front()[i].t;
        row.min_knowledge = row.max_knowledge = per_trial.front()[i].knowledge_percent;
        row.min_captured = row.max_captured = per_trial.front()[i].captured_total();
        double knowledge_sum = 0.0;
        double captured_sum = 0.0;
        for (const auto& series : per_trial) {
            const auto& s = series[i];
            if (s.t != row.t) throw std::invalid_argument("aggregate_trials: snapshot grids differ");
            knowledge_sum += s.knowledge_percent;
            captured_sum += s.captured_total();
            row.min_knowledge = std::min(row.min_knowledge, s.knowledge_percent);
            row.max_knowledge = std::max(row.max_knowledge, s.knowledge_percent);
            row.min_captured = std::min(row.min_captured, s.captured_total());
            row.max_captured = std::max(row.max_captured, s.captured_total());
        }
        row.mean_knowledge = knowledge_sum / n;
        row.mean_captured = captured_sum / n;
        rows.push_back(row);
    }
    return rows;
}

void write_aggregate_csv(std::ostream& out, std::span<const AggregateRow> rows) {
    out << kAggregateCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.t << ',' << format_fixed4(r.mean_knowledge) << ',' << format_fixed4(r.min_knowledge) << ','
            << format_fixed4(r.max_knowledge) << ',' << format_fixed4(r.mean_captured) << ',' << r.min_captured << ','
            << r.max_captured << '\n';
    }
}

void write_aggregate_csv(std::span<const AggregateRow> rows, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    write_aggregate_csv(out, rows);
    finish_write(out, path);
}

std::vector<AggregateRow> read_aggregate_csv(const std::filesystem::path& path) {
    std::vector<AggregateRow> rows;
    read_rows(path, kAggregateCsvHeader, 7, [&](const std::vector<std::string_view>& f, int n) {
        AggregateRow r;
        r.t = parse_field<Iteration>(f[0], path, n);
        r.mean_knowledge = parse_field<double>(f[1], path, n);
        r.min_knowledge = parse_field<double>(f[2], path, n);
        r.max_knowledge = parse_field<double>(f[3], path, n);
        r.mean_captured = parse_field<double>(f[4], path, n);
        r.min_captured = parse_field<int>(f[5], path, n);
        r.max_captured = parse_field<int>(f[6], path, n);
        rows.push_back(r);
    });
    return rows;
}

}  // namespace ephemera
