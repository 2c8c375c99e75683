#include "soids/policy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace soids {

Policy Policy::dirac(long K, long index) {
    Policy p;
    p.probs = Eigen::VectorXd::Zero(K);
    p.probs[index] = 1.0;
    return p;
}

Policy Policy::uniform(long K) {
    Policy p;
    p.probs = Eigen::VectorXd::Constant(K, 1.0 / static_cast<double>(K));
    return p;
}

void validate_policy(const Policy& policy) {
    if (policy.probs.size() < 1)
        throw std::invalid_argument("policy: empty probability vector");
    if (policy.probs.minCoeff() < -1e-12)
        throw std::invalid_argument("policy: negative probability");
    if (std::abs(policy.probs.sum() - 1.0) > 1e-10)
        throw std::invalid_argument("policy: probabilities do not sum to one");
}

int optimal_action_index(const Eigen::VectorXd& theta, const Eigen::MatrixXd& actions) {
    const Eigen::RowVectorXd values = (actions * theta).transpose();
    return optimal_action_index(theta, actions, values);
}

int optimal_action_index(const Eigen::VectorXd& theta, const Eigen::MatrixXd& actions,
                         const Eigen::RowVectorXd& values) {
    (void)theta;
    const long K = actions.rows();
    const double best = values.maxCoeff();
    int chosen = -1;
    long chosen_nnz = std::numeric_limits<long>::max();
    for (long k = 0; k < K; ++k) {
        if (values[k] != best) continue;
        long nnz = 0;
        for (long j = 0; j < actions.cols(); ++j)
            if (actions(k, j) != 0.0) ++nnz;
        if (nnz < chosen_nnz) {
            chosen_nnz = nnz;
            chosen = static_cast<int>(k);
        }
    }
    return chosen;
}

namespace {

// Value of N^2 / D with the limit conventions of the pair scan: a zero-gap
// direction with zero information counts as ratio 0.
double ratio_value(double n, double d) {
    if (d > 0) return n * n / d;
    return n == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

SoidsPolicyResult soids_policy(const SurrogateStats& stats) {
    const long K = stats.per_action_gap.size();
    if (K < 1) throw std::invalid_argument("soids_policy: empty stats");
    const Eigen::VectorXd& a = stats.per_action_gap;
    const Eigen::VectorXd& g = stats.per_action_info;

    SoidsPolicyResult result;
    if (g.maxCoeff() <= 0.0) {
        long best;
        a.minCoeff(&best);
        result.policy = Policy::dirac(K, best);
        result.value = 0.0;
        result.degenerate = true;
        return result;
    }

    // Single-action candidates, lowest index wins ties.
    double best_value = std::numeric_limits<double>::infinity();
    long best_j = -1, best_k = -1;
    double best_q = 0.0;
    for (long j = 0; j < K; ++j) {
        const double v = ratio_value(a[j], g[j]);
        if (v < best_value) {
            best_value = v;
            best_j = j;
            best_k = -1;
        }
    }

    // Two-action candidates: interior critical point of the one-dimensional
    // ratio ((1-q)a_j + q a_k)^2 / ((1-q)g_j + q g_k), a linear equation in q.
    for (long j = 0; j < K; ++j) {
        for (long k = j + 1; k < K; ++k) {
            if (g[j] == 0.0 && g[k] == 0.0) continue;
            const double da = a[k] - a[j];
            const double dg = g[k] - g[j];
            const double denom = da * dg;
            if (denom == 0.0) continue;  // monotone on [0,1]; endpoints covered
            const double q = (a[j] * dg - 2.0 * da * g[j]) / denom;
            if (!(q > 0.0 && q < 1.0)) continue;
            const double n = a[j] + q * da;
            const double d = g[j] + q * dg;
            const double v = ratio_value(n, d);
            if (v < best_value) {
                best_value = v;
                best_j = j;
                best_k = k;
                best_q = q;
            }
        }
    }

    if (best_k < 0) {
        result.policy = Policy::dirac(K, best_j);
    } else {
        result.policy.probs = Eigen::VectorXd::Zero(K);
        result.policy.probs[best_j] = 1.0 - best_q;
        result.policy.probs[best_k] = best_q;
    }
    result.value = best_value;
    return result;
}

Policy fgts_policy_weighted(const Eigen::MatrixXd& params, const Eigen::VectorXd& weights,
                            const Eigen::MatrixXd& actions) {
    const long n = params.rows();
    if (n < 1) throw std::invalid_argument("fgts_policy: empty parameter set");
    Policy p;
    p.probs = Eigen::VectorXd::Zero(actions.rows());
    const Eigen::MatrixXd values = params * actions.transpose();
    for (long i = 0; i < n; ++i)
        p.probs[optimal_action_index(params.row(i).transpose(), actions, values.row(i))] +=
            weights[i];
    return p;
}

Policy fgts_policy(const ParameterSamples& samples, const Eigen::MatrixXd& actions) {
    const long M = samples.samples.rows();
    return fgts_policy_weighted(
        samples.samples, Eigen::VectorXd::Constant(M, 1.0 / static_cast<double>(M)), actions);
}

ExploratoryDesign exploratory_design(const Eigen::MatrixXd& actions) {
    const long K = actions.rows();
    const long d = actions.cols();
    if (K < 1) throw std::invalid_argument("exploratory_design: empty action set");

    auto smallest_eig = [&](const Eigen::VectorXd& probs, Eigen::VectorXd* vec) {
        const Eigen::MatrixXd design =
            actions.transpose() * probs.asDiagonal() * actions;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(design);
        if (vec) *vec = eig.eigenvectors().col(0);
        return eig.eigenvalues()[0];
    };

    Eigen::VectorXd probs = Eigen::VectorXd::Constant(K, 1.0 / static_cast<double>(K));
    Eigen::VectorXd best_probs = probs;
    Eigen::VectorXd v(d);
    double best_value = smallest_eig(probs, &v);

    const int budget = 500;
    for (int iter = 1; iter <= budget; ++iter) {
        // Supergradient of the smallest eigenvalue: coordinate k is (v . a_k)^2.
        const Eigen::VectorXd grad = (actions * v).array().square();
        const double scale = std::max(1.0, grad.maxCoeff());
        probs = project_to_simplex(probs + grad / (scale * std::sqrt(iter)));
        const double value = smallest_eig(probs, &v);
        if (value > best_value) {
            best_value = value;
            best_probs = probs;
        }
    }

    ExploratoryDesign design;
    design.mu.probs = best_probs;
    design.c_min = std::max(0.0, smallest_eig(best_probs, nullptr));
    return design;
}

Policy mixture_policy(const Policy& base, const Policy& mu, double gamma_mix) {
    if (!(gamma_mix >= 0.0 && gamma_mix <= 1.0))
        throw std::invalid_argument("mixture_policy: gamma must be in [0,1]");
    if (base.probs.size() != mu.probs.size())
        throw std::invalid_argument("mixture_policy: size mismatch");
    Policy p;
    p.probs = (1.0 - gamma_mix) * base.probs + gamma_mix * mu.probs;
    return p;
}

int sample_action(const Policy& policy, Rng& rng) {
    validate_policy(policy);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double u = unif(rng);
    double acc = 0.0;
    const long K = policy.probs.size();
    for (long k = 0; k < K; ++k) {
        acc += policy.probs[k];
        if (u <= acc) return static_cast<int>(k);
    }
    return static_cast<int>(K - 1);  // guards against the sum falling short of u by rounding
}

Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v) {
    const long n = v.size();
    std::vector<double> sorted(v.data(), v.data() + n);
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double cumsum = 0.0, tau = 0.0;
    long rho = 0;
    for (long j = 0; j < n; ++j) {
        cumsum += sorted[static_cast<std::size_t>(j)];
        const double candidate = (cumsum - 1.0) / static_cast<double>(j + 1);
        if (sorted[static_cast<std::size_t>(j)] - candidate > 0) {
            rho = j + 1;
            tau = candidate;
        }
    }
    (void)rho;
    return (v.array() - tau).max(0.0);
}

}  // namespace soids
