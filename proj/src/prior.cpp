#include "soids/prior.hpp"

#include <cmath>
#include <stdexcept>

namespace soids {

namespace {

double log_binomial(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// log sum_{k=1}^{s} 2^{-k} = log(1 - 2^{-s})
double log_size_normalizer(int s) {
    return std::log1p(-std::ldexp(1.0, -s));
}

}  // namespace

double subset_log_mass(const SubsetPrior& prior, const std::vector<int>& support) {
    if (prior.s < 1 || prior.s > prior.d)
        throw std::invalid_argument("subset prior: require 1 <= s <= d");
    const int k = static_cast<int>(support.size());
    if (k < 1 || k > prior.s)
        throw std::invalid_argument("subset_log_mass: |S| must be in [1, s]");
    for (int j : support)
        if (j < 0 || j >= prior.d)
            throw std::invalid_argument("subset_log_mass: index out of range");
    return -k * std::log(2.0) - log_binomial(prior.d, k) - log_size_normalizer(prior.s);
}

Eigen::VectorXd sample_l1_ball(int k, Rng& rng) {
    std::exponential_distribution<double> expo(1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::bernoulli_distribution sign(0.5);
    Eigen::VectorXd x(k);
    double norm = 0.0;
    for (int j = 0; j < k; ++j) {
        double e = expo(rng);
        x[j] = sign(rng) ? e : -e;
        norm += e;
    }
    double radius = std::pow(unif(rng), 1.0 / k);
    return x * (radius / norm);
}

Eigen::VectorXd sample_subset_prior(const SubsetPrior& prior, Rng& rng) {
    if (prior.s < 1 || prior.s > prior.d)
        throw std::invalid_argument("subset prior: require 1 <= s <= d");
    // Draw the size k with P(k) proportional to 2^{-k}, then a uniform
    // support of that size.
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double u = unif(rng) * (1.0 - std::ldexp(1.0, -prior.s));
    int k = 1;
    double acc = 0.5;
    while (u > acc && k < prior.s) {
        u -= acc;
        acc *= 0.5;
        ++k;
    }
    // Floyd's algorithm for a uniform k-subset of [0, d).
    std::vector<int> support;
    std::vector<char> used(static_cast<std::size_t>(prior.d), 0);
    for (int j = prior.d - k; j < prior.d; ++j) {
        std::uniform_int_distribution<int> pick(0, j);
        int t = pick(rng);
        if (used[static_cast<std::size_t>(t)]) t = j;
        used[static_cast<std::size_t>(t)] = 1;
        support.push_back(t);
    }
    Eigen::VectorXd coords = sample_l1_ball(k, rng);
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(prior.d);
    for (int j = 0; j < k; ++j) theta[support[static_cast<std::size_t>(j)]] = coords[j];
    return theta;
}

void validate_prior(const RelaxedPrior& prior) {
    if (!(prior.rho1 > 0) || !(prior.rho0 > 0))
        throw std::invalid_argument("relaxed prior: scales must be positive");
    if (!(prior.beta > 0) || !(prior.beta < 1))
        throw std::invalid_argument("relaxed prior: beta must be in (0,1)");
}

namespace {

// Coordinate log density and its derivative, evaluated stably through the
// log-space mixture weights.
struct CoordMix {
    double log_density;
    double derivative;
};

CoordMix coord_mixture(const RelaxedPrior& p, double x) {
    const double log_slab =
        std::log(p.beta) - 0.5 * x * x / p.rho1 - 0.5 * std::log(2.0 * M_PI * p.rho1);
    const double log_spike =
        std::log1p(-p.beta) - std::abs(x) / p.rho0 - std::log(2.0 * p.rho0);
    const double m = std::max(log_slab, log_spike);
    const double w1 = std::exp(log_slab - m);
    const double w0 = std::exp(log_spike - m);
    CoordMix out;
    out.log_density = m + std::log(w1 + w0);
    const double sgn = (x > 0) - (x < 0);
    out.derivative = (w1 * (-x / p.rho1) + w0 * (-sgn / p.rho0)) / (w1 + w0);
    return out;
}

}  // namespace

double relaxed_log_density(const RelaxedPrior& prior, const Eigen::VectorXd& theta) {
    validate_prior(prior);
    if (!theta.allFinite())
        throw std::invalid_argument("relaxed_log_density: non-finite coordinate");
    double total = 0.0;
    for (long j = 0; j < theta.size(); ++j) total += coord_mixture(prior, theta[j]).log_density;
    return total;
}

Eigen::VectorXd relaxed_log_density_subgradient(const RelaxedPrior& prior,
                                                const Eigen::VectorXd& theta) {
    validate_prior(prior);
    Eigen::VectorXd g(theta.size());
    for (long j = 0; j < theta.size(); ++j)
        g[j] = theta[j] == 0.0 ? 0.0 : coord_mixture(prior, theta[j]).derivative;
    return g;
}

double relaxed_coordinate_variance(const RelaxedPrior& prior) {
    return prior.beta * prior.rho1 + (1.0 - prior.beta) * 2.0 * prior.rho0 * prior.rho0;
}

}  // namespace soids
