#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "soids/harness.hpp"

using namespace soids;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

ExperimentConfig tiny_config(const std::string& out_dir) {
    nlohmann::json j{{"dims", {6}},
                     {"K", 8},
                     {"T", 25},
                     {"repetitions", 2},
                     {"seed", 42},
                     {"workers", 2},
                     {"output_dir", out_dir},
                     {"algorithms", {"soids", "linucb", "estc", "otcs"}},
                     {"soids",
                      {{"schedule", "experimental"},
                       {"sampler", {{"M", 8}, {"burn_in", 40}, {"thin", 2}}}}},
                     {"otcs", {{"sampler", {{"M", 8}, {"burn_in", 40}, {"thin", 2}}}}},
                     {"estc", {{"t1", {{"6", 10}}}}}};
    return config_from_json(j);
}

}  // namespace

TEST_CASE("seed derivation is injective") {
    std::set<std::uint64_t> seen;
    for (int d = 0; d < 5; ++d)
        for (int algo = 0; algo < 4; ++algo)
            for (int rep = 0; rep < 200; ++rep)
                CHECK(seen.insert(derive_seed(99, d, algo, rep)).second);
    // Distinct masters decorrelate.
    CHECK(derive_seed(1, 0, 0, 0) != derive_seed(2, 0, 0, 0));
}

TEST_CASE("aggregation matches a two-pass oracle") {
    const std::vector<std::vector<double>> runs = {
        {1.0, 2.0, 3.0}, {2.0, 2.5, 2.0}, {0.5, 4.0, 9.0}};
    std::vector<double> mean, stddev;
    aggregate_traces(runs, mean, stddev);
    for (std::size_t t = 0; t < 3; ++t) {
        long double m = 0.0L;
        for (const auto& r : runs) m += r[t];
        m /= 3.0L;
        long double ss = 0.0L;
        for (const auto& r : runs) ss += (r[t] - m) * (r[t] - m);
        const long double sd = sqrtl(ss / 2.0L);
        CHECK(std::abs(mean[t] - static_cast<double>(m)) <= 1e-10);
        CHECK(std::abs(stddev[t] - static_cast<double>(sd)) <= 1e-10);
    }

    std::vector<double> m1, s1;
    aggregate_traces({{1.0, 2.0}}, m1, s1);
    CHECK(s1 == std::vector<double>{0.0, 0.0});
}

TEST_CASE("experiment writes deterministic files") {
    const std::string dir_a = "harness_test_out_a";
    const std::string dir_b = "harness_test_out_b";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);

    ExperimentConfig cfg = tiny_config(dir_a);
    const ExperimentResult ra = run_experiment(cfg);
    CHECK(ra.runs.size() == 8);
    CHECK(ra.aggregate_csvs.size() == 4);
    CHECK(fs::exists(ra.manifest_path));

    cfg.output_dir = dir_b;
    cfg.workers = 1;  // scheduling must not affect file contents
    const ExperimentResult rb = run_experiment(cfg);
    for (std::size_t i = 0; i < ra.runs.size(); ++i) {
        CHECK(slurp(ra.runs[i].csv_path) == slurp(rb.runs[i].csv_path));
    }
    for (std::size_t i = 0; i < ra.aggregate_csvs.size(); ++i)
        CHECK(slurp(ra.aggregate_csvs[i]) == slurp(rb.aggregate_csvs[i]));

    // Per-run CSV schema.
    const std::string csv = slurp(ra.runs[0].csv_path);
    CHECK(csv.rfind("round,gap,cumulative_regret\n", 0) == 0);

    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

TEST_CASE("plot embeds the plotted numbers") {
    const std::string dir = "harness_plot_out";
    fs::remove_all(dir);
    fs::create_directories(dir);

    // Two aggregate files across two dimensions; one has constant gap 1, so
    // its mean curve is the straight line t.
    {
        std::ofstream out(dir + "/agg_d4_estc.csv");
        out << "round,mean,std\n";
        for (int t = 1; t <= 10; ++t) out << t << ',' << t << ",0\n";
    }
    {
        std::ofstream out(dir + "/agg_d8_estc.csv");
        out << "round,mean,std\n";
        for (int t = 1; t <= 10; ++t) out << t << ',' << 0.5 * t << ",0.25\n";
    }
    const std::string svg_path = dir + "/plot.svg";
    emit_plot({dir + "/agg_d4_estc.csv", dir + "/agg_d8_estc.csv"}, svg_path);
    const std::string svg = slurp(svg_path);

    CHECK(svg.find("data-panel-d=\"4\"") != std::string::npos);
    CHECK(svg.find("data-panel-d=\"8\"") != std::string::npos);
    CHECK(svg.find("data-final-mean=\"10\"") != std::string::npos);
    CHECK(svg.find("data-final-mean=\"5\"") != std::string::npos);
    CHECK(svg.find("cumulative regret") != std::string::npos);
    CHECK(svg.find(">round<") != std::string::npos);

    // The straight line of slope one: embedded series is 1..10.
    CHECK(svg.find("data-points=\"1 2 3 4 5 6 7 8 9 10\"") != std::string::npos);

    CHECK_THROWS(emit_plot({dir + "/missing.csv"}, svg_path));
    {
        std::ofstream out(dir + "/agg_d4_bad.csv");
        out << "round,mean,std\n1,notanumber,0\n";
    }
    CHECK_THROWS_WITH_AS(emit_plot({dir + "/agg_d4_bad.csv"}, svg_path),
                         doctest::Contains("row 2"), std::runtime_error);
    fs::remove_all(dir);
}

TEST_CASE("config json round trip and overrides") {
    nlohmann::json j = config_to_json(tiny_config("x"));
    apply_override(j, "soids.sampler.M=64");
    apply_override(j, "output_dir=elsewhere");
    const ExperimentConfig cfg = config_from_json(j);
    CHECK(cfg.soids.sampler.M == 64);
    CHECK(cfg.output_dir == "elsewhere");
    CHECK(cfg.t1_for(6) == 10);
    CHECK(cfg.t1_for(40) == 100);  // fallback rule
    CHECK_THROWS_AS(apply_override(j, "nonsense"), std::invalid_argument);
}
