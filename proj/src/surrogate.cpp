#include "soids/surrogate.hpp"

#include <cmath>

#include "soids/policy.hpp"

namespace soids {

SurrogateStats surrogate_stats_weighted(const Eigen::MatrixXd& params,
                                        const Eigen::VectorXd& weights,
                                        const Eigen::MatrixXd& actions) {
    const long n = params.rows();
    const long K = actions.rows();
    if (n < 1) throw std::invalid_argument("surrogate_stats: empty parameter set");
    if (params.cols() != actions.cols())
        throw std::invalid_argument("surrogate_stats: dimension mismatch");
    if (weights.size() != n || std::abs(weights.sum() - 1.0) > 1e-8 || weights.minCoeff() < 0)
        throw std::invalid_argument("surrogate_stats: weights must be a probability vector");

    SurrogateStats stats;
    stats.mean_param = params.transpose() * weights;
    stats.per_action_gap = Eigen::VectorXd::Zero(K);
    stats.per_action_info = Eigen::VectorXd::Zero(K);
    stats.per_sample_best.resize(static_cast<std::size_t>(n));

    // values(i,k) = <theta_i, a_k>; the info term needs the centered version.
    const Eigen::MatrixXd values = params * actions.transpose();
    const Eigen::VectorXd mean_values = actions * stats.mean_param;
    for (long i = 0; i < n; ++i) {
        stats.per_sample_best[static_cast<std::size_t>(i)] =
            optimal_action_index(params.row(i).transpose(), actions, values.row(i));
        const double best = values.row(i).maxCoeff();
        stats.per_action_gap += weights[i] * (Eigen::VectorXd::Constant(K, best) -
                                              values.row(i).transpose());
        stats.per_action_info +=
            (0.5 * weights[i]) *
            (values.row(i).transpose() - mean_values).array().square().matrix();
    }
    return stats;
}

SurrogateStats surrogate_stats(const ParameterSamples& samples, const Eigen::MatrixXd& actions) {
    if (samples.count() < 2) throw std::invalid_argument("surrogate_stats: need M >= 2");
    const long M = samples.samples.rows();
    return surrogate_stats_weighted(
        samples.samples, Eigen::VectorXd::Constant(M, 1.0 / static_cast<double>(M)), actions);
}

double surrogate_regret(const SurrogateStats& stats, const Policy& policy) {
    if (policy.probs.size() != stats.per_action_gap.size())
        throw std::invalid_argument("surrogate_regret: policy size mismatch");
    return policy.probs.dot(stats.per_action_gap);
}

double surrogate_info_gain(const SurrogateStats& stats, const Policy& policy) {
    if (policy.probs.size() != stats.per_action_info.size())
        throw std::invalid_argument("surrogate_info_gain: policy size mismatch");
    return policy.probs.dot(stats.per_action_info);
}

double info_ratio(const SurrogateStats& stats, const Policy& policy, double gamma) {
    if (gamma < 2.0) throw std::invalid_argument("info_ratio: gamma must be >= 2");
    const double ig = surrogate_info_gain(stats, policy);
    if (!(ig > 0)) throw degenerate_ratio_error("info_ratio: zero information gain");
    return std::pow(surrogate_regret(stats, policy), gamma) / ig;
}

double true_info_gain(const ParameterSamples& samples, const Policy& policy,
                      const Eigen::MatrixXd& actions, const Eigen::VectorXd& theta0) {
    if (samples.count() < 1) throw std::invalid_argument("true_info_gain: empty sample set");
    if (theta0.size() != actions.cols())
        throw std::invalid_argument("true_info_gain: dimension mismatch");
    const Eigen::MatrixXd centered = samples.samples.rowwise() - theta0.transpose();
    const Eigen::MatrixXd proj = centered * actions.transpose();  // M x K
    const Eigen::VectorXd per_action =
        proj.array().square().colwise().mean().transpose() * 0.5;
    return policy.probs.dot(per_action);
}

}  // namespace soids
