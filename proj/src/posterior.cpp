#include "soids/posterior.hpp"

#include <cmath>
#include <stdexcept>

namespace soids {

namespace {

double logsumexp(const Eigen::VectorXd& v) {
    double m = v.maxCoeff();
    return m + std::log((v.array() - m).exp().sum());
}

}  // namespace

GridPosterior grid_posterior(const std::vector<Eigen::VectorXd>& grid, const History& history,
                             const Eigen::MatrixXd& actions, double eta, double lambda,
                             const std::optional<Eigen::VectorXd>& log_prior) {
    if (grid.empty()) throw std::invalid_argument("grid_posterior: empty grid");
    if (!(eta > 0) || lambda < 0)
        throw std::invalid_argument("grid_posterior: require eta > 0 and lambda >= 0");
    const long n = static_cast<long>(grid.size());
    const long d = actions.cols();
    for (const auto& theta : grid)
        if (theta.size() != d)
            throw std::invalid_argument("grid_posterior: grid/action dimension mismatch");
    if (log_prior && log_prior->size() != n)
        throw std::invalid_argument("grid_posterior: prior mass length mismatch");

    GridPosterior post;
    post.grid = grid;
    post.eta = eta;
    post.lambda_current = lambda;
    post.log_weights =
        log_prior ? *log_prior : Eigen::VectorXd::Zero(n).eval();

    for (long i = 0; i < n; ++i) {
        const Eigen::VectorXd values = actions * grid[static_cast<std::size_t>(i)];
        const double best = values.maxCoeff();
        double loglik = 0.0, gapsum = 0.0;
        for (const auto& rec : history) {
            if (rec.action_index < 0 || rec.action_index >= actions.rows())
                throw std::invalid_argument("grid_posterior: history action out of range");
            const double v = values[rec.action_index];
            const double r = rec.reward - v;
            loglik += -0.5 * r * r;
            gapsum += best - v;
        }
        post.log_weights[i] += eta * loglik + lambda * gapsum;
    }
    post.log_weights.array() -= logsumexp(post.log_weights);
    return post;
}

namespace {

// Sufficient statistics of the MALA target. The Gaussian part collapses to a
// quadratic form; the optimistic part collapses to t * max_k <theta, a_k>
// minus a fixed inner product.
struct Target {
    const RelaxedPrior* prior;
    const Eigen::MatrixXd* actions;
    double eta;
    double lambda;
    long t;                  // number of observations
    Eigen::MatrixXd gram;    // sum_s A_s A_s^T
    Eigen::VectorXd moment;  // sum_s Y_s A_s
    Eigen::VectorXd action_sum;
    double sq_sum = 0.0;  // sum_s Y_s^2

    double log_density(const Eigen::VectorXd& theta, Eigen::VectorXd& grad) const {
        double value = relaxed_log_density(*prior, theta);
        grad = relaxed_log_density_subgradient(*prior, theta);
        if (t > 0) {
            const Eigen::VectorXd gt = gram * theta;
            value += -0.5 * eta * (theta.dot(gt) - 2.0 * moment.dot(theta) + sq_sum);
            grad += eta * (moment - gt);
            if (lambda > 0) {
                Eigen::Index best;
                const Eigen::VectorXd values = (*actions) * theta;
                const double vmax = values.maxCoeff(&best);
                value += lambda * (t * vmax - action_sum.dot(theta));
                grad += lambda * (t * actions->row(best).transpose() - action_sum);
            }
        }
        return value;
    }
};

}  // namespace

McmcResult mcmc_sample(const RelaxedPrior& prior, const History& history,
                       const Eigen::MatrixXd& actions, double eta, double lambda,
                       const SamplerConfig& cfg, Rng& rng,
                       const std::optional<Eigen::VectorXd>& init) {
    validate_prior(prior);
    if (cfg.M < 2) throw std::invalid_argument("mcmc_sample: need at least two samples");
    if (cfg.burn_in < 0 || cfg.thin < 1 || !(cfg.step_size > 0))
        throw std::invalid_argument("mcmc_sample: bad sampler config");
    if (lambda < 0 || !(eta > 0))
        throw std::invalid_argument("mcmc_sample: require eta > 0 and lambda >= 0");

    const long d = actions.cols();
    Target target{&prior, &actions, eta, lambda, static_cast<long>(history.size()),
                  Eigen::MatrixXd::Zero(d, d), Eigen::VectorXd::Zero(d),
                  Eigen::VectorXd::Zero(d), 0.0};
    for (const auto& rec : history) {
        if (rec.action_index < 0 || rec.action_index >= actions.rows())
            throw std::invalid_argument("mcmc_sample: history action out of range");
        const Eigen::VectorXd a = actions.row(rec.action_index).transpose();
        target.gram.noalias() += a * a.transpose();
        target.moment += rec.reward * a;
        target.action_sum += a;
        target.sq_sum += rec.reward * rec.reward;
    }

    Eigen::VectorXd state = init ? *init : Eigen::VectorXd::Zero(d).eval();
    if (state.size() != d) throw std::invalid_argument("mcmc_sample: init dimension mismatch");
    Eigen::VectorXd grad(d), prop_grad(d);
    double logp = target.log_density(state, grad);
    if (!std::isfinite(logp))
        throw std::runtime_error("mcmc_sample: target not finite at initialization");

    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double step = cfg.step_size;
    const long total = cfg.burn_in + static_cast<long>(cfg.M) * cfg.thin;
    long kept_accepts = 0, kept_steps = 0;

    McmcResult out;
    out.samples.samples.resize(cfg.M, d);
    int stored = 0;

    Eigen::VectorXd noise(d), proposal(d);
    for (long iter = 0; iter < total; ++iter) {
        const double s2 = step * step;
        for (long j = 0; j < d; ++j) noise[j] = gauss(rng);
        proposal = state + 0.5 * s2 * grad + step * noise;
        const double prop_logp = target.log_density(proposal, prop_grad);

        // MH correction for the asymmetric Langevin proposal.
        const Eigen::VectorXd fwd = proposal - state - 0.5 * s2 * grad;
        const Eigen::VectorXd bwd = state - proposal - 0.5 * s2 * prop_grad;
        const double log_ratio =
            prop_logp - logp + (fwd.squaredNorm() - bwd.squaredNorm()) / (2.0 * s2);

        const bool accept = std::isfinite(prop_logp) && std::log(unif(rng)) < log_ratio;
        if (accept) {
            state.swap(proposal);
            grad.swap(prop_grad);
            logp = prop_logp;
        }

        if (iter < cfg.burn_in) {
            const double alpha =
                std::isfinite(log_ratio) ? std::min(1.0, std::exp(std::min(0.0, log_ratio))) : 0.0;
            step *= std::exp(0.05 * (alpha - cfg.target_acceptance));
        } else {
            kept_steps++;
            kept_accepts += accept ? 1 : 0;
            if ((iter - cfg.burn_in + 1) % cfg.thin == 0 && stored < cfg.M)
                out.samples.samples.row(stored++) = state.transpose();
        }
    }

    out.samples.mean = out.samples.samples.colwise().mean().transpose();
    out.acceptance_rate = kept_steps > 0 ? static_cast<double>(kept_accepts) / kept_steps : 0.0;
    out.step_size = step;
    out.last_state = state;
    return out;
}

Eigen::VectorXd posterior_mean(const ParameterSamples& samples) {
    if (samples.count() < 1) throw std::invalid_argument("posterior_mean: empty sample set");
    return samples.samples.colwise().mean().transpose();
}

}  // namespace soids
