#include <doctest.h>

#include <cmath>

#include "soids/baselines.hpp"

using namespace soids;

namespace {

Instance spanning_instance(double noise) {
    Instance inst;
    inst.d = 3;
    inst.s = 1;
    inst.theta0 = Eigen::Vector3d(0.9, 0.0, 0.0);
    inst.actions.resize(4, 3);
    inst.actions << 1, 0, 0, 0, 1, 0, 0, 0, 1, 0.5, 0.5, 0.5;
    inst.noise_std = noise;
    return inst;
}

}  // namespace

TEST_CASE("linucb with no data picks the longest action under the prior metric") {
    RidgeState state = RidgeState::make(2, 1.0);
    Eigen::MatrixXd actions(3, 2);
    actions << 0.1, 0.0, 0.9, 0.1, 0.3, 0.3;
    // theta_hat = 0, bonus = radius * ||a|| / sqrt(lambda): action 1 wins.
    CHECK(linucb_action(state, actions, 0.01, 1.0) == 1);
}

TEST_CASE("linucb is consistent on noiseless data") {
    const Instance inst = spanning_instance(0.0);
    RidgeState state = RidgeState::make(3, 1.0);
    Rng rng(3);
    for (int t = 0; t < 1000; ++t) {
        const int k = t % inst.num_actions();
        state.update(inst.actions.row(k).transpose(), pull(inst, k, rng));
    }
    CHECK((state.theta_hat() - inst.theta0).lpNorm<Eigen::Infinity>() <= 1e-2);
    CHECK(linucb_action(state, inst.actions, 0.01, 1.0) == 0);
}

TEST_CASE("gram update equals the rank-one oracle and stays positive definite") {
    RidgeState state = RidgeState::make(3, 2.0);
    const Eigen::Vector3d a(0.3, -0.7, 0.2);
    const Eigen::MatrixXd before = state.gram;
    state.update(a, 1.5);
    CHECK((state.gram - (before + a * a.transpose())).lpNorm<Eigen::Infinity>() <= 1e-15);
    CHECK((state.moment - 1.5 * a).lpNorm<Eigen::Infinity>() <= 1e-15);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(state.gram);
    CHECK(eig.eigenvalues()[0] >= 2.0 - 1e-8);
    CHECK((state.gram - state.gram.transpose()).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("lasso shrinks everything to zero under a huge penalty") {
    Rng rng(14);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd X(20, 5);
    Eigen::VectorXd y(20);
    for (long i = 0; i < 20; ++i) {
        for (long j = 0; j < 5; ++j) X(i, j) = gauss(rng);
        y[i] = gauss(rng);
    }
    const LassoModel model = lasso_fit(X, y, 1e6);
    CHECK(model.coef.lpNorm<Eigen::Infinity>() == 0.0);
    CHECK(model.converged);
}

TEST_CASE("lasso on an orthonormal design soft-thresholds least squares") {
    const int n = 4;
    Eigen::MatrixXd X = Eigen::MatrixXd::Identity(n, n) * std::sqrt(double(n));
    // Columns have ||x_j||^2 = n, so (1/n) X^T X = I and the coordinatewise
    // solution is soft(ls_j, reg).
    Eigen::VectorXd y(n);
    y << 2.0, -0.5, 0.05, 1.0;
    const double reg = 0.3;
    const LassoModel model = lasso_fit(X, y, reg);
    for (int j = 0; j < n; ++j) {
        const double ls = X.col(j).dot(y) / n;
        const double expected = (ls > 0 ? 1.0 : -1.0) * std::max(0.0, std::abs(ls) - reg);
        CHECK(model.coef[j] == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("lasso satisfies the KKT conditions") {
    Rng rng(15);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int n = 60, d = 8;
    Eigen::MatrixXd X(n, d);
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(d);
    theta[0] = 1.2;
    theta[3] = -0.8;
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < d; ++j) X(i, j) = gauss(rng);
    Eigen::VectorXd y = X * theta;
    for (long i = 0; i < n; ++i) y[i] += 0.1 * gauss(rng);

    const double reg = 0.1;
    const LassoModel model = lasso_fit(X, y, reg);
    const Eigen::VectorXd residual = y - X * model.coef;
    for (int j = 0; j < d; ++j) {
        const double corr = X.col(j).dot(residual) / n;
        CHECK(std::abs(corr) <= reg + 1e-6);
        if (model.coef[j] != 0.0)
            CHECK(std::abs(std::abs(corr) - reg) <= 1e-6);
    }
}

TEST_CASE("estc explores then commits") {
    CHECK_THROWS_AS(
        [] {
            Rng rng(1);
            const Instance inst = spanning_instance(0.0);
            return estc_run(inst, 10, 11, rng);
        }(),
        std::invalid_argument);

    // T1 = T: pure exploration, no committed phase.
    Rng rng(2);
    const Instance inst = spanning_instance(0.0);
    const RegretTrace pure = estc_run(inst, 30, 30, rng);
    CHECK(pure.gaps.size() == 30);

    // Noiseless spanning design: the committed action is optimal.
    Rng rng2(4);
    const RegretTrace trace = estc_run(inst, 200, 60, rng2);
    for (std::size_t t = 60; t < 200; ++t) CHECK(trace.gaps[t] == 0.0);
    // Trace constant after commitment.
    for (std::size_t t = 61; t < 200; ++t)
        CHECK(trace.cumulative[t] == trace.cumulative[t - 1]);
}

TEST_CASE("otcs action at radius extremes") {
    Eigen::MatrixXd actions(3, 2);
    actions << 1, 0, 0, 1, -1, 0;
    RidgeState state = RidgeState::make(2, 1.0);
    state.update(Eigen::Vector2d(1, 0), 0.5);  // shrinks the bonus along e1

    ParameterSamples samples;
    samples.samples.resize(2, 2);
    samples.samples << 0.5, 0.1, 0.7, 0.3;
    samples.mean = samples.samples.colwise().mean().transpose();

    OtcsRadius zero;
    zero.fixed = 0.0;
    // Greedy on the mean (0.6, 0.2): action 0.
    CHECK(otcs_action(samples, state, actions, zero, 1) == 0);

    OtcsRadius huge;
    huge.fixed = 1e6;
    // The bonus dominates; actions 1 keeps the largest gram-inverse norm.
    CHECK(otcs_action(samples, state, actions, huge, 1) == 1);
}
