#pragma once

#include <map>
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "soids/baselines.hpp"
#include "soids/env.hpp"
#include "soids/soids.hpp"

namespace soids {

// The four algorithms of the reference experiment. Registry indices feed the
// seed derivation and stay stable regardless of config order.
enum class Algorithm { soids = 0, linucb = 1, estc = 2, otcs = 3 };

Algorithm algorithm_from_string(const std::string& name);
std::string algorithm_to_string(Algorithm algo);

struct ExperimentConfig {
    std::vector<int> dims = {20, 40, 100};
    int K = 200;
    int T = 1000;
    int repetitions = 10;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string output_dir = "out";
    std::vector<Algorithm> algorithms = {Algorithm::soids, Algorithm::linucb, Algorithm::estc,
                                         Algorithm::otcs};

    SoidsConfig soids;
    LinUcbParams linucb;
    OtcsParams otcs;
    std::map<int, int> estc_t1 = {{20, 50}, {40, 100}, {100, 100}};
    double estc_reg_scale = 0.25;

    int t1_for(int d) const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

// Applies "a.b.c=value" style overrides to a JSON config document.
void apply_override(nlohmann::json& j, const std::string& assignment);

// Injective over (d index < 2^16, algorithm < 2^8, repetition < 2^32); the
// final mix is bijective, so distinct tuples give distinct seeds.
std::uint64_t derive_seed(std::uint64_t master, int d_index, int algo_index, int repetition);

struct RunSummary {
    int d = 0;
    Algorithm algorithm = Algorithm::soids;
    int repetition = 0;
    double final_regret = 0.0;
    std::string csv_path;
};

struct ExperimentResult {
    std::vector<RunSummary> runs;
    std::vector<std::string> aggregate_csvs;
    std::string manifest_path;
    // final-round mean cumulative regret keyed by (d, algorithm)
    std::map<std::pair<int, Algorithm>, double> final_mean;
};

// Runs every (d, algorithm, repetition) combination, writing one CSV per run
// (round, gap, cumulative_regret), one aggregate CSV per (d, algorithm)
// (round, mean, std) and a manifest. The instance for a given d is shared by
// all algorithms and repetitions. Runs execute on up to `workers` threads;
// file contents do not depend on scheduling.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Per-round mean and sample standard deviation (zero for a single run).
void aggregate_traces(const std::vector<std::vector<double>>& cumulative,
                      std::vector<double>& mean, std::vector<double>& std_dev);

// One SVG panel per distinct d: mean curve per algorithm with a +-1 std band.
// The plotted series are embedded as data attributes for round-tripping.
void emit_plot(const std::vector<std::string>& aggregate_csvs, const std::string& output_path);

}  // namespace soids
