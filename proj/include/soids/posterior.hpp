#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "soids/env.hpp"
#include "soids/prior.hpp"
#include "soids/rng.hpp"

namespace soids {

// Exact optimistic posterior over a finite candidate grid. Log weights are
// normalized so that logsumexp equals 0 (within 1e-10).
struct GridPosterior {
    std::vector<Eigen::VectorXd> grid;
    Eigen::VectorXd log_weights;
    double eta = 0.0;
    double lambda_current = 0.0;
};

// One-shot weight computation from the full history:
//   log w(theta) = log prior(theta) + eta * sum_s log p(Y_s|theta,A_s)
//                  + lambda * sum_s Delta(A_s, theta),  then normalized.
// The likelihood is the unnormalized Gaussian, log p(y|theta,a) =
// -(y - <theta,a>)^2 / 2. The prior over the grid is uniform unless explicit
// log masses are supplied. An empty history returns the prior.
GridPosterior grid_posterior(const std::vector<Eigen::VectorXd>& grid, const History& history,
                             const Eigen::MatrixXd& actions, double eta, double lambda,
                             const std::optional<Eigen::VectorXd>& log_prior = std::nullopt);

// M approximate posterior draws, one per row, with their sample mean.
struct ParameterSamples {
    Eigen::MatrixXd samples;  // M x d
    Eigen::VectorXd mean;

    int count() const { return static_cast<int>(samples.rows()); }
};

struct SamplerConfig {
    int M = 100;
    int burn_in = 500;
    int thin = 10;
    double step_size = 0.1;
    double target_acceptance = 0.5;
};

struct McmcResult {
    ParameterSamples samples;
    double acceptance_rate = 0.0;  // over kept (post burn-in) iterations
    double step_size = 0.0;        // step after burn-in adaptation
    Eigen::VectorXd last_state;    // warm start for the next round
};

// Metropolis-adjusted Langevin targeting
//   q1(theta) * exp(-eta/2 * sum_s (Y_s - <theta,A_s>)^2
//                   + lambda * sum_s Delta(A_s, theta)).
// The gap term contributes the subgradient a*(theta) - A_s on its active
// piece. The step size adapts multiplicatively toward target_acceptance
// during burn-in and is frozen afterwards. The chain starts at `init` when
// given, at zero otherwise.
McmcResult mcmc_sample(const RelaxedPrior& prior, const History& history,
                       const Eigen::MatrixXd& actions, double eta, double lambda,
                       const SamplerConfig& cfg, Rng& rng,
                       const std::optional<Eigen::VectorXd>& init = std::nullopt);

Eigen::VectorXd posterior_mean(const ParameterSamples& samples);

}  // namespace soids
