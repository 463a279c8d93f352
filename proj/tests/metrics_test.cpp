#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ephemera/arena.hpp"
#include "ephemera/experiment.hpp"
#include "ephemera/metrics.hpp"

namespace {

using namespace ephemera;

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("ephemera_metrics_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

KnowledgeCensus census_of(std::array<int, 4> k, int max) {
    KnowledgeCensus c;
    c.knowers = k;
    c.max_possible = max;
    return c;
}

TEST(KnowledgePercent, TableOneValues) {
    EXPECT_EQ(knowledge_percent(census_of({5, 5, 5, 5}, 200)), 10.0);
    EXPECT_EQ(knowledge_percent(census_of({50, 50, 50, 50}, 200)), 100.0);
    EXPECT_EQ(knowledge_percent(census_of({0, 0, 0, 0}, 200)), 0.0);
    EXPECT_EQ(knowledge_percent(census_of({1, 0, 0, 0}, 200)), 0.5);
    EXPECT_THROW(knowledge_percent(census_of({0, 0, 0, 0}, 0)), std::domain_error);
}

TEST(Snapshot, BaselineAndEphemeralStart) {
    const Arena bl(*find_scenario("BL"), 1);
    EXPECT_EQ(snapshot(bl, 3).knowledge_percent, 100.0);
    EXPECT_EQ(snapshot(bl, 3).trial, 3);
    const Arena t1k(*find_scenario("T1K"), 1);
    EXPECT_EQ(snapshot(t1k, 0).knowledge_percent, 10.0);
}

TEST(Snapshot, CapturesNonDecreasingAcrossInterval) {
    auto c = *find_scenario("BL");
    c.width = c.height = 150;
    Arena arena(c, 4);
    while (arena.running()) arena.step();
    const auto& s = arena.snapshots();
    ASSERT_GT(s.size(), 2u);
    for (std::size_t i = 1; i < s.size(); ++i) {
        EXPECT_GE(s[i].captured_total(), s[i - 1].captured_total());
        EXPECT_EQ(s[i].t, s[i - 1].t + c.snapshot_interval);
    }
}

TEST(FormatFixed4, Digits) {
    EXPECT_EQ(format_fixed4(10.0), "10.0000");
    EXPECT_EQ(format_fixed4(100.0), "100.0000");
    EXPECT_EQ(format_fixed4(0.25), "0.2500");
    EXPECT_EQ(format_fixed4(12.0 / 92.0 * 100.0), "13.0435");
}

TEST(WriteCsv, HeaderOnlyWhenEmpty) {
    std::ostringstream out;
    write_csv(out, std::vector<MetricsSnapshot>{});
    EXPECT_EQ(out.str(), "trial,t,knowledge_pct,cap_total,cap_r,cap_g,cap_y,cap_b,queries,deliveries,forgets,rejects\n");
}

TEST(WriteCsv, RowLayout) {
    MetricsSnapshot s;
    s.trial = 2;
    s.t = 300;
    s.knowledge_percent = 12.5;
    s.captured = {1, 2, 3, 4};
    s.queries_sent = 40;
    s.deliveries = 7;
    s.forgets = 3;
    s.rejects = 1;
    std::ostringstream out;
    write_csv(out, std::vector{s});
    EXPECT_EQ(out.str().substr(out.str().find('\n') + 1), "2,300,12.5000,10,1,2,3,4,40,7,3,1\n");
}

TEST(WriteCsv, BaselineTrialIsAllHundredAndStable) {
    auto c = *find_scenario("BL");
    c.width = c.height = 80;
    c.trials = 1;
    const auto r1 = run_trial(c, 0);
    const auto dir = temp_dir("bl");
    write_csv(r1.snapshots, dir / "a.csv");
    write_csv(run_trial(c, 0).snapshots, dir / "b.csv");
    const auto text = slurp(dir / "a.csv");
    EXPECT_EQ(text, slurp(dir / "b.csv"));
    EXPECT_EQ(text.find('\r'), std::string::npos);

    const auto rows = read_csv(dir / "a.csv");
    ASSERT_EQ(rows.size(), 201u);
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) {
        const auto first = line.find(',');
        const auto second = line.find(',', first + 1);
        const auto third = line.find(',', second + 1);
        EXPECT_EQ(line.substr(second + 1, third - second - 1), "100.0000");
    }
    EXPECT_EQ(rows, r1.snapshots);
}

TEST(WriteCsv, IoErrorNamesPath) {
    try {
        write_csv(std::vector<MetricsSnapshot>{}, "/nonexistent-dir/x.csv");
        FAIL();
    } catch (const std::system_error& e) {
        EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/x.csv"), std::string::npos);
    }
}

std::vector<MetricsSnapshot> series(std::initializer_list<std::pair<double, int>> points) {
    std::vector<MetricsSnapshot> out;
    Iteration t = 0;
    for (auto [k, cap] : points) {
        MetricsSnapshot s;
        s.t = t;
        t += 100;
        s.knowledge_percent = k;
        s.captured = {cap, 0, 0, 0};
        out.push_back(s);
    }
    return out;
}

TEST(Aggregate, SingleTrialIsIdentity) {
    const std::vector<std::vector<MetricsSnapshot>> trials{series({{10.0, 0}, {12.5, 3}})};
    const auto rows = aggregate_trials(trials);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1].mean_knowledge, 12.5);
    EXPECT_EQ(rows[1].mean_captured, 3.0);
    EXPECT_EQ(rows[1].min_captured, 3);
    EXPECT_EQ(rows[1].max_captured, 3);
}

TEST(Aggregate, MeanMinMax) {
    const std::vector<std::vector<MetricsSnapshot>> trials{series({{10.0, 10}}), series({{20.0, 20}})};
    const auto row = aggregate_trials(trials).at(0);
    EXPECT_EQ(row.mean_captured, 15.0);
    EXPECT_EQ(row.min_captured, 10);
    EXPECT_EQ(row.max_captured, 20);
    EXPECT_EQ(row.mean_knowledge, 15.0);
    EXPECT_EQ(row.min_knowledge, 10.0);
    EXPECT_EQ(row.max_knowledge, 20.0);
}

TEST(Aggregate, Errors) {
    EXPECT_THROW(aggregate_trials(std::vector<std::vector<MetricsSnapshot>>{}), std::invalid_argument);
    const std::vector<std::vector<MetricsSnapshot>> ragged{series({{1, 1}}), series({{1, 1}, {2, 2}})};
    EXPECT_THROW(aggregate_trials(ragged), std::invalid_argument);
}

TEST(Aggregate, CsvLayoutAndReadBack) {
    const std::vector<std::vector<MetricsSnapshot>> trials{series({{10.0, 10}, {10.5, 12}}), series({{10.0, 20}, {11.0, 25}})};
    const auto rows = aggregate_trials(trials);
    std::ostringstream out;
    write_aggregate_csv(out, rows);
    EXPECT_EQ(out.str(),
              "t,mean_knowledge_pct,min,max,mean_cap_total,min,max\n"
              "0,10.0000,10.0000,10.0000,15.0000,10,20\n"
              "100,10.7500,10.5000,11.0000,18.5000,12,25\n");
    const auto dir = temp_dir("agg");
    write_aggregate_csv(rows, dir / "agg.csv");
    EXPECT_EQ(read_aggregate_csv(dir / "agg.csv"), rows);
}

}  // namespace
