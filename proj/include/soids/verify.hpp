#pragma once

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "soids/policy.hpp"
#include "soids/rng.hpp"
#include "soids/surrogate.hpp"

namespace soids {

struct LemmaReport {
    std::string lemma;
    int instances_tested = 0;
    double max_violation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

nlohmann::json report_to_json(const LemmaReport& report);

// Declared tolerance for a lemma id; throws on unknown ids. Reports with
// tolerance 1.0 carry violations normalized by their per-item tolerances.
double lemma_tolerance(const std::string& lemma);

struct BruteResult {
    Policy policy;
    double value = 0.0;       // after projected-gradient refinement
    double mesh_value = 0.0;  // raw simplex-mesh minimum
};

// Exhaustive minimization of the gamma-information ratio over a simplex mesh
// of the given spacing (K <= 8), refined by projected gradient from the best
// mesh point. Halving the mesh never increases mesh_value.
BruteResult brute_ir_minimizer(const SurrogateStats& stats, double gamma, double mesh);

LemmaReport check_gir_minimizer(int trials, Rng& rng);
LemmaReport check_ids_oracle(int trials, Rng& rng);
LemmaReport check_amgm_constants();
LemmaReport check_covering_bound(int d, int s, double rho, Rng& rng);
LemmaReport check_sig_tig(int trials, Rng& rng);
LemmaReport check_supermartingale(int trials, Rng& rng);
LemmaReport check_lipschitz(int trials, Rng& rng);
LemmaReport check_schedule_bounds();
LemmaReport check_data_dep_hoeffding(Rng& rng);
LemmaReport check_kl_prior_bound(Rng& rng);
LemmaReport check_w_log_bound();
LemmaReport check_schedule_monotone();
LemmaReport check_implicit_rb(Rng& rng);

// Every checker, deterministically seeded; `filter` restricts to one lemma id.
std::vector<LemmaReport> run_all_lemmas(std::uint64_t seed,
                                        const std::optional<std::string>& filter = std::nullopt);

}  // namespace soids
