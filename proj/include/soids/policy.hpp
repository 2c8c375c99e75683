#pragma once

#include <Eigen/Dense>

#include "soids/posterior.hpp"
#include "soids/rng.hpp"
#include "soids/surrogate.hpp"

namespace soids {

// Probability vector over the action set.
struct Policy {
    Eigen::VectorXd probs;

    static Policy dirac(long K, long index);
    static Policy uniform(long K);
};

// Throws std::invalid_argument unless probs is a simplex vector (sum within
// 1e-10, entries nonnegative).
void validate_policy(const Policy& policy);

// Optimal action for a model: maximal <theta, a>, ties broken toward the
// action of minimal 0-norm, then toward the lowest index. `values` may carry
// the precomputed products actions * theta.
int optimal_action_index(const Eigen::VectorXd& theta, const Eigen::MatrixXd& actions);
int optimal_action_index(const Eigen::VectorXd& theta, const Eigen::MatrixXd& actions,
                         const Eigen::RowVectorXd& values);

struct SoidsPolicyResult {
    Policy policy;
    double value = 0.0;  // achieved 2-information ratio (0 in the degenerate case)
    bool degenerate = false;
};

// Minimizer of the 2-information ratio over the simplex. The minimizer is
// supported on at most two actions, so every ordered action pair is scanned
// with the closed-form one-dimensional solution. If every per-action
// information estimate is zero, the result is a Dirac on the smallest
// estimated gap with the degenerate flag set.
SoidsPolicyResult soids_policy(const SurrogateStats& stats);

// pi_k = fraction of posterior samples whose optimal action is a_k.
Policy fgts_policy(const ParameterSamples& samples, const Eigen::MatrixXd& actions);
Policy fgts_policy_weighted(const Eigen::MatrixXd& params, const Eigen::VectorXd& weights,
                            const Eigen::MatrixXd& actions);

struct ExploratoryDesign {
    Policy mu;
    double c_min = 0.0;  // smallest eigenvalue of sum_k mu_k a_k a_k^T
};

// Approximately maximizes the smallest eigenvalue of the design matrix by
// projected supergradient ascent (500 iterations, step 1/sqrt(iter), simplex
// projection by sorting), returning the best iterate. c_min = 0 signals that
// the actions do not span R^d.
ExploratoryDesign exploratory_design(const Eigen::MatrixXd& actions);

Policy mixture_policy(const Policy& base, const Policy& mu, double gamma_mix);

int sample_action(const Policy& policy, Rng& rng);

// Euclidean projection onto the probability simplex (sorting method).
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v);

}  // namespace soids
