#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "soids/posterior.hpp"

namespace soids {

struct Policy;

// Per-action estimates of the surrogate regret and information gain under a
// weighted parameter set:
//   per_action_gap[k]  = sum_i w_i * Delta(a_k, theta_i)
//   per_action_info[k] = 1/2 * sum_i w_i * <theta_i - mean, a_k>^2
// For M posterior samples the weights are 1/M. per_sample_best caches the
// optimal action index of each parameter (full scan, shared tie rule).
struct SurrogateStats {
    Eigen::VectorXd per_action_gap;
    Eigen::VectorXd per_action_info;
    Eigen::VectorXd mean_param;
    std::vector<int> per_sample_best;
};

// Raised when an information ratio is requested for a policy with zero
// estimated information gain.
struct degenerate_ratio_error : std::domain_error {
    using std::domain_error::domain_error;
};

SurrogateStats surrogate_stats(const ParameterSamples& samples, const Eigen::MatrixXd& actions);

// Exact twin for a finite weighted parameter set (e.g. a grid posterior).
// Weights must be a probability vector over the rows of `params`.
SurrogateStats surrogate_stats_weighted(const Eigen::MatrixXd& params,
                                        const Eigen::VectorXd& weights,
                                        const Eigen::MatrixXd& actions);

double surrogate_regret(const SurrogateStats& stats, const Policy& policy);

double surrogate_info_gain(const SurrogateStats& stats, const Policy& policy);

// (surrogate regret)^gamma / surrogate information gain, gamma >= 2.
double info_ratio(const SurrogateStats& stats, const Policy& policy, double gamma);

// 1/2 sum_k pi_k 1/M sum_i <theta_i - theta0, a_k>^2. Verification only:
// requires the true parameter.
double true_info_gain(const ParameterSamples& samples, const Policy& policy,
                      const Eigen::MatrixXd& actions, const Eigen::VectorXd& theta0);

}  // namespace soids
