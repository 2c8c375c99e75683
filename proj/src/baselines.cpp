#include "soids/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace soids {

RidgeState RidgeState::make(int d, double lambda_ridge) {
    if (!(lambda_ridge > 0))
        throw std::invalid_argument("ridge state: lambda_ridge must be positive");
    RidgeState state;
    state.gram = lambda_ridge * Eigen::MatrixXd::Identity(d, d);
    state.moment = Eigen::VectorXd::Zero(d);
    state.lambda_ridge = lambda_ridge;
    return state;
}

void RidgeState::update(const Eigen::VectorXd& action, double reward) {
    gram.noalias() += action * action.transpose();
    moment += reward * action;
}

Eigen::VectorXd RidgeState::theta_hat() const {
    return gram.llt().solve(moment);
}

double linucb_radius(const RidgeState& state, double delta, double S) {
    const long d = state.gram.rows();
    const Eigen::LLT<Eigen::MatrixXd> llt(state.gram);
    double logdet = 0.0;
    for (long j = 0; j < d; ++j) logdet += 2.0 * std::log(llt.matrixL()(j, j));
    return std::sqrt(state.lambda_ridge) * S +
           std::sqrt(2.0 * std::log(1.0 / delta) + logdet - d * std::log(state.lambda_ridge));
}

namespace {

int ucb_argmax(const RidgeState& state, const Eigen::MatrixXd& actions, double radius) {
    const Eigen::LLT<Eigen::MatrixXd> llt(state.gram);
    const Eigen::VectorXd theta = llt.solve(state.moment);
    int best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (long k = 0; k < actions.rows(); ++k) {
        const Eigen::VectorXd a = actions.row(k).transpose();
        const double bonus = std::sqrt(a.dot(llt.solve(a)));
        const double score = a.dot(theta) + radius * bonus;
        if (score > best_score) {
            best_score = score;
            best = static_cast<int>(k);
        }
    }
    return best;
}

}  // namespace

int linucb_action(const RidgeState& state, const Eigen::MatrixXd& actions, double delta,
                  double S) {
    return ucb_argmax(state, actions, linucb_radius(state, delta, S));
}

RegretTrace linucb_run(const Instance& inst, int T, const LinUcbParams& params, Rng& rng) {
    RidgeState state = RidgeState::make(inst.d, params.lambda_ridge);
    std::vector<double> gaps;
    gaps.reserve(static_cast<std::size_t>(T));
    for (int t = 1; t <= T; ++t) {
        const int k = linucb_action(state, inst.actions, params.delta, params.S);
        const double y = pull(inst, k, rng);
        state.update(inst.actions.row(k).transpose(), y);
        gaps.push_back(gap(inst, k));
    }
    return cumulative_regret(gaps);
}

LassoModel lasso_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double reg) {
    const long n = X.rows();
    const long d = X.cols();
    if (n < 1 || y.size() != n) throw std::invalid_argument("lasso_fit: bad design");
    if (!(reg > 0)) throw std::invalid_argument("lasso_fit: reg must be positive");

    LassoModel model;
    model.reg = reg;
    model.coef = Eigen::VectorXd::Zero(d);
    const Eigen::VectorXd col_sq = X.array().square().colwise().sum().transpose();
    Eigen::VectorXd residual = y;  // y - X theta

    const double tol = 1e-8;
    const int max_sweeps = 10000;
    model.converged = false;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double max_change = 0.0;
        for (long j = 0; j < d; ++j) {
            if (col_sq[j] == 0.0) continue;
            const double old = model.coef[j];
            const double rho = X.col(j).dot(residual) / n + col_sq[j] / n * old;
            const double threshold = std::max(0.0, std::abs(rho) - reg);
            const double updated = (rho > 0 ? 1.0 : -1.0) * threshold / (col_sq[j] / n);
            if (updated != old) {
                residual += (old - updated) * X.col(j);
                model.coef[j] = updated;
                max_change = std::max(max_change, std::abs(updated - old));
            }
        }
        if (max_change < tol) {
            model.converged = true;
            break;
        }
    }
    return model;
}

RegretTrace estc_run(const Instance& inst, int T, int T1, Rng& rng, double reg_scale) {
    if (T1 < 1 || T1 > T) throw std::invalid_argument("estc_run: require 1 <= T1 <= T");
    if (!(reg_scale > 0)) throw std::invalid_argument("estc_run: reg_scale must be positive");
    std::vector<double> gaps;
    gaps.reserve(static_cast<std::size_t>(T));

    Eigen::MatrixXd X(T1, inst.d);
    Eigen::VectorXd y(T1);
    std::uniform_int_distribution<int> pick(0, inst.num_actions() - 1);
    for (int t = 0; t < T1; ++t) {
        const int k = pick(rng);
        X.row(t) = inst.actions.row(k);
        y[t] = pull(inst, k, rng);
        gaps.push_back(gap(inst, k));
    }

    const double reg =
        reg_scale * 4.0 * std::sqrt(std::log(static_cast<double>(inst.d)) / T1);
    const LassoModel model = lasso_fit(X, y, reg);
    Eigen::Index committed;
    (inst.actions * model.coef).maxCoeff(&committed);
    const double committed_gap = gap(inst, static_cast<int>(committed));
    for (int t = T1; t < T; ++t) gaps.push_back(committed_gap);
    return cumulative_regret(gaps);
}

double OtcsRadius::radius(const RidgeState& state, long t) const {
    if (fixed) return *fixed;
    const long d = state.gram.rows();
    const Eigen::LLT<Eigen::MatrixXd> llt(state.gram);
    double logdet = 0.0;
    for (long j = 0; j < d; ++j) logdet += 2.0 * std::log(llt.matrixL()(j, j));
    const double tt = std::max<long>(t, 1);
    return scale *
           (std::sqrt(lambda_ridge) * S +
            std::sqrt(2.0 * std::log(tt * tt / delta) + logdet - d * std::log(lambda_ridge)));
}

int otcs_action(const ParameterSamples& samples, const RidgeState& state,
                const Eigen::MatrixXd& actions, const OtcsRadius& radius_cfg, long t) {
    const Eigen::VectorXd center = samples.mean;
    const double radius = radius_cfg.radius(state, t);
    const Eigen::LLT<Eigen::MatrixXd> llt(state.gram);
    int best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (long k = 0; k < actions.rows(); ++k) {
        const Eigen::VectorXd a = actions.row(k).transpose();
        const double score = a.dot(center) + radius * std::sqrt(a.dot(llt.solve(a)));
        if (score > best_score) {
            best_score = score;
            best = static_cast<int>(k);
        }
    }
    return best;
}

RegretTrace otcs_run(const Instance& inst, int T, const OtcsParams& params, Rng& rng) {
    RidgeState state = RidgeState::make(inst.d, params.radius.lambda_ridge);
    History history;
    std::vector<double> gaps;
    gaps.reserve(static_cast<std::size_t>(T));
    std::optional<Eigen::VectorXd> warm;
    SamplerConfig sampler = params.sampler;
    for (int t = 1; t <= T; ++t) {
        const McmcResult mcmc = mcmc_sample(params.prior, history, inst.actions, params.eta,
                                            /*lambda=*/0.0, sampler, rng, warm);
        warm = mcmc.last_state;
        sampler.step_size = mcmc.step_size;
        const int k = otcs_action(mcmc.samples, state, inst.actions, params.radius, t);
        const double y = pull(inst, k, rng);
        state.update(inst.actions.row(k).transpose(), y);
        history.push_back({t, k, y});
        gaps.push_back(gap(inst, k));
    }
    return cumulative_regret(gaps);
}

}  // namespace soids
