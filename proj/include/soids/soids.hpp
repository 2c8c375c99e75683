#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "soids/env.hpp"
#include "soids/policy.hpp"
#include "soids/posterior.hpp"
#include "soids/prior.hpp"
#include "soids/rng.hpp"
#include "soids/schedules.hpp"

namespace soids {

struct SoidsConfig {
    double eta = 0.25;  // 1/4 for the theorem schedules, 1/2 for experimental
    Schedule schedule = Schedule::experimental;
    SamplerConfig sampler;
    RelaxedPrior prior;

    // eta matching the schedule convention.
    static SoidsConfig defaults_for(Schedule schedule);
};

struct RoundLog {
    long t = 0;
    double lambda = 0.0;  // rate used by this round's posterior
    double delta_hat = 0.0;
    double info_gain = 0.0;
    double ir2 = 0.0;
    double ir3 = 0.0;
    double ir2_fgts = 0.0;
    double acceptance_rate = 0.0;
    double step_size = 0.0;
    bool degenerate = false;
    int action = -1;
};

// The agent sees the action set and rewards only; the true parameter stays
// behind the pull oracle. One agent per run.
class SoidsAgent {
public:
    SoidsAgent(const Eigen::MatrixXd& actions, int sparsity, const SoidsConfig& cfg,
               std::uint64_t seed);

    // Samples the optimistic posterior, plays the 2-information-ratio
    // minimizer and returns the chosen action index. Call observe() with the
    // reward before the next round.
    int begin_round();
    void observe(double reward);

    const std::vector<RoundLog>& logs() const { return logs_; }
    long round() const { return t_; }

private:
    double lambda_for_round() const;

    Eigen::MatrixXd actions_;
    int s_;
    SoidsConfig cfg_;
    Rng rng_;
    History history_;
    std::optional<Eigen::VectorXd> warm_;
    double current_step_ = 0.0;  // adapted step carried across rounds
    ScheduleState schedule_state_;
    bool awaiting_reward_ = false;
    int pending_action_ = -1;
    long t_ = 0;
    std::vector<RoundLog> logs_;
};

struct SoidsRunResult {
    RegretTrace trace;
    std::vector<RoundLog> logs;
};

using PullOracle = std::function<double(int action_index)>;

// Runs T rounds against an opaque reward oracle; returns the chosen actions
// and round logs. The regret-free variant used by tests of the information
// hygiene contract.
std::pair<std::vector<int>, std::vector<RoundLog>> run_soids_with_oracle(
    const Eigen::MatrixXd& actions, int sparsity, int T, const SoidsConfig& cfg,
    std::uint64_t seed, const PullOracle& oracle);

// Full run on an instance; the gap trace is computed outside the agent.
SoidsRunResult run_soids(const Instance& inst, int T, const SoidsConfig& cfg,
                         std::uint64_t seed);

}  // namespace soids
