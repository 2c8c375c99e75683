#pragma once

#include <Eigen/Dense>
#include <vector>

#include "soids/rng.hpp"

namespace soids {

// Subset-selection prior over supports S, |S| in [1, s]: mass proportional to
// 2^{-|S|} split evenly among the supports of each cardinality. The empty set
// carries zero mass. Drawing a parameter means drawing S then a point uniform
// on the l1 ball restricted to S.
struct SubsetPrior {
    int d = 0;
    int s = 0;
};

// log Pi(S) for a support given by its index set. |S| must be in [1, s].
double subset_log_mass(const SubsetPrior& prior, const std::vector<int>& support);

Eigen::VectorXd sample_subset_prior(const SubsetPrior& prior, Rng& rng);

// Uniform draw from the unit l1 ball in k dimensions (signed exponentials
// normalized to the sphere, radius U^{1/k}).
Eigen::VectorXd sample_l1_ball(int k, Rng& rng);

// Coordinatewise spike-and-slab relaxation: each coordinate is a mixture of a
// Gaussian slab (variance rho1, weight beta) and a Laplace spike (scale rho0,
// weight 1-beta). The Bernoulli inclusion variables are marginalized out.
struct RelaxedPrior {
    double rho1 = 10.0;
    double rho0 = 0.1;
    double beta = 0.1;
};

void validate_prior(const RelaxedPrior& prior);

double relaxed_log_density(const RelaxedPrior& prior, const Eigen::VectorXd& theta);

// Coordinatewise derivative of the log density; 0 at theta_j = 0 (a valid
// subgradient by symmetry of both mixture components).
Eigen::VectorXd relaxed_log_density_subgradient(const RelaxedPrior& prior,
                                                const Eigen::VectorXd& theta);

// Coordinate variance of the relaxed prior, beta*rho1 + (1-beta)*2*rho0^2.
double relaxed_coordinate_variance(const RelaxedPrior& prior);

}  // namespace soids
