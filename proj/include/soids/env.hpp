#pragma once

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>
#include <vector>

#include "soids/rng.hpp"

namespace soids {

// A sparse linear bandit problem. Actions are the rows of `actions` (K x d),
// each bounded by 1 in infinity norm. theta0 has at most s nonzero entries.
// The l1 norm of theta0 is deliberately not constrained: the theory works on
// the unit ball, the reference experiment does not.
struct Instance {
    int d = 0;
    int s = 0;
    Eigen::VectorXd theta0;
    Eigen::MatrixXd actions;  // K x d, one action per row
    double noise_std = 1.0;

    int num_actions() const { return static_cast<int>(actions.rows()); }
};

// Throws std::invalid_argument if any structural invariant is violated.
void validate_instance(const Instance& inst);

struct HistoryRecord {
    int round = 0;  // strictly increasing within a history
    int action_index = 0;
    double reward = 0.0;
};

using History = std::vector<HistoryRecord>;

// Per-round instantaneous gaps and their running sums.
struct RegretTrace {
    std::vector<double> gaps;
    std::vector<double> cumulative;
};

// Reward <theta0, a> + eps with eps ~ Normal(0, noise_std^2) drawn from rng.
double pull(const Instance& inst, int action_index, Rng& rng);

// max_a' <theta0, a'> - <theta0, a>; zero iff the action is optimal.
double gap(const Instance& inst, int action_index);

// Running-sum trace. Gaps must be nonnegative; a negative gap indicates a bug
// upstream and raises std::invalid_argument.
RegretTrace cumulative_regret(const std::vector<double>& gaps);

// The instance family of the reference experiment: s = max(1, d/10), the
// first s components of theta0 equal 10/s, K actions i.i.d. uniform on
// [-1,1]^d, unit noise.
Instance make_paper_instance(int d, int K, Rng& rng);

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

}  // namespace soids
