#include "soids/soids.hpp"

#include <cmath>
#include <stdexcept>

namespace soids {

SoidsConfig SoidsConfig::defaults_for(Schedule schedule) {
    SoidsConfig cfg;
    cfg.schedule = schedule;
    cfg.eta = schedule == Schedule::experimental ? 0.5 : 0.25;
    return cfg;
}

SoidsAgent::SoidsAgent(const Eigen::MatrixXd& actions, int sparsity, const SoidsConfig& cfg,
                       std::uint64_t seed)
    : actions_(actions), s_(sparsity), cfg_(cfg), rng_(seed) {
    if (actions_.rows() < 1) throw std::invalid_argument("soids agent: empty action set");
    if (s_ < 1) throw std::invalid_argument("soids agent: sparsity must be >= 1");
    if (!(cfg_.eta > 0)) throw std::invalid_argument("soids agent: eta must be positive");
    current_step_ = cfg_.sampler.step_size;
    schedule_state_.d = static_cast<int>(actions_.cols());
    schedule_state_.s = s_;
    if (cfg_.schedule != Schedule::experimental) {
        // The lambda3 branches need the exploratory constant. c_min = 0 is a
        // legal outcome that downgrades both schedules to their lambda2 branch.
        schedule_state_.c_min = exploratory_design(actions_).c_min;
    }
}

double SoidsAgent::lambda_for_round() const {
    // Round t+1 uses lambda_t, the last rate computable from the history. The
    // experimental formula is undefined at t = 0; round one carries no data
    // term, so the conventional lambda_0 = 1/2 is inert there.
    const long t = t_;
    switch (cfg_.schedule) {
        case Schedule::theorem2:
            return lambda_theorem2(t, schedule_state_.d, s_, schedule_state_.c_min);
        case Schedule::theorem3:
            return std::min(0.5, lambda_theorem3(schedule_state_));
        case Schedule::experimental:
            return t == 0 ? 0.5 : lambda_experimental(t, schedule_state_.d, s_);
    }
    throw std::logic_error("unreachable");
}

int SoidsAgent::begin_round() {
    if (awaiting_reward_) throw std::logic_error("soids agent: reward not observed");
    const double lambda = lambda_for_round();
    SamplerConfig sampler = cfg_.sampler;
    sampler.step_size = current_step_;
    const McmcResult mcmc = mcmc_sample(cfg_.prior, history_, actions_, cfg_.eta, lambda,
                                        sampler, rng_, warm_);
    warm_ = mcmc.last_state;
    current_step_ = mcmc.step_size;

    const SurrogateStats stats = surrogate_stats(mcmc.samples, actions_);
    const SoidsPolicyResult chosen = soids_policy(stats);
    const int action = sample_action(chosen.policy, rng_);

    RoundLog log;
    log.t = t_ + 1;
    log.lambda = lambda;
    log.delta_hat = surrogate_regret(stats, chosen.policy);
    log.info_gain = surrogate_info_gain(stats, chosen.policy);
    log.degenerate = chosen.degenerate;
    log.acceptance_rate = mcmc.acceptance_rate;
    log.step_size = mcmc.step_size;
    log.action = action;
    if (!chosen.degenerate && log.info_gain > 0) {
        log.ir2 = info_ratio(stats, chosen.policy, 2.0);
        log.ir3 = info_ratio(stats, chosen.policy, 3.0);
        const Policy fgts = fgts_policy(mcmc.samples, actions_);
        const double fgts_ig = surrogate_info_gain(stats, fgts);
        log.ir2_fgts = fgts_ig > 0 ? info_ratio(stats, fgts, 2.0)
                                   : std::numeric_limits<double>::infinity();
        if (cfg_.schedule == Schedule::theorem3) {
            schedule_state_.sum_ir2 += log.ir2;
            schedule_state_.sum_sqrt_ir3 += std::sqrt(log.ir3);
        }
    }
    logs_.push_back(log);
    pending_action_ = action;
    awaiting_reward_ = true;
    return action;
}

void SoidsAgent::observe(double reward) {
    if (!awaiting_reward_) throw std::logic_error("soids agent: no action pending");
    ++t_;
    history_.push_back({static_cast<int>(t_), pending_action_, reward});
    schedule_state_.t = t_;
    awaiting_reward_ = false;
}

std::pair<std::vector<int>, std::vector<RoundLog>> run_soids_with_oracle(
    const Eigen::MatrixXd& actions, int sparsity, int T, const SoidsConfig& cfg,
    std::uint64_t seed, const PullOracle& oracle) {
    if (T < 1) throw std::invalid_argument("run_soids: T must be >= 1");
    SoidsAgent agent(actions, sparsity, cfg, seed);
    std::vector<int> chosen;
    chosen.reserve(static_cast<std::size_t>(T));
    for (int t = 1; t <= T; ++t) {
        const int k = agent.begin_round();
        agent.observe(oracle(k));
        chosen.push_back(k);
    }
    return {chosen, agent.logs()};
}

SoidsRunResult run_soids(const Instance& inst, int T, const SoidsConfig& cfg,
                         std::uint64_t seed) {
    Rng env_rng(mix64(seed) ^ 0x517cc1b727220a95ULL);
    auto [chosen, logs] = run_soids_with_oracle(
        inst.actions, inst.s, T, cfg, seed,
        [&](int k) { return pull(inst, k, env_rng); });
    std::vector<double> gaps;
    gaps.reserve(chosen.size());
    for (int k : chosen) gaps.push_back(gap(inst, k));
    SoidsRunResult result;
    result.trace = cumulative_regret(gaps);
    result.logs = std::move(logs);
    return result;
}

}  // namespace soids
