#include "soids/env.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace soids {

void validate_instance(const Instance& inst) {
    if (inst.d <= 0) throw std::invalid_argument("instance: d must be positive");
    if (inst.s <= 0 || inst.s > inst.d)
        throw std::invalid_argument("instance: require 1 <= s <= d");
    if (inst.theta0.size() != inst.d)
        throw std::invalid_argument("instance: theta0 has wrong length");
    if (inst.actions.rows() < 1 || inst.actions.cols() != inst.d)
        throw std::invalid_argument("instance: need K >= 1 actions of length d");
    if (inst.noise_std < 0)
        throw std::invalid_argument("instance: noise_std must be nonnegative");
    if (inst.actions.cwiseAbs().maxCoeff() > 1.0 + 1e-12)
        throw std::invalid_argument("instance: actions must satisfy max_j |a_j| <= 1");
    int nnz = 0;
    for (int j = 0; j < inst.d; ++j)
        if (inst.theta0[j] != 0.0) ++nnz;
    if (nnz > inst.s)
        throw std::invalid_argument("instance: theta0 has more than s nonzeros");
}

double pull(const Instance& inst, int action_index, Rng& rng) {
    if (action_index < 0 || action_index >= inst.num_actions())
        throw std::invalid_argument("pull: action index out of range");
    double mean = inst.actions.row(action_index).dot(inst.theta0);
    std::normal_distribution<double> noise(0.0, 1.0);
    return mean + inst.noise_std * noise(rng);
}

double gap(const Instance& inst, int action_index) {
    if (action_index < 0 || action_index >= inst.num_actions())
        throw std::invalid_argument("gap: action index out of range");
    Eigen::VectorXd values = inst.actions * inst.theta0;
    return values.maxCoeff() - values[action_index];
}

RegretTrace cumulative_regret(const std::vector<double>& gaps) {
    RegretTrace trace;
    trace.gaps = gaps;
    trace.cumulative.reserve(gaps.size());
    double sum = 0.0;
    for (double g : gaps) {
        if (!(g >= 0.0))
            throw std::invalid_argument("cumulative_regret: negative or NaN gap");
        sum += g;
        trace.cumulative.push_back(sum);
    }
    return trace;
}

Instance make_paper_instance(int d, int K, Rng& rng) {
    if (d < 1 || K < 1)
        throw std::invalid_argument("make_paper_instance: d and K must be positive");
    Instance inst;
    inst.d = d;
    inst.s = std::max(1, d / 10);
    inst.theta0 = Eigen::VectorXd::Zero(d);
    for (int j = 0; j < inst.s; ++j) inst.theta0[j] = 10.0 / inst.s;
    inst.actions.resize(K, d);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int k = 0; k < K; ++k)
        for (int j = 0; j < d; ++j) inst.actions(k, j) = unif(rng);
    inst.noise_std = 1.0;
    return inst;
}

nlohmann::json instance_to_json(const Instance& inst) {
    nlohmann::json j;
    j["d"] = inst.d;
    j["s"] = inst.s;
    j["theta0"] = std::vector<double>(inst.theta0.data(), inst.theta0.data() + inst.theta0.size());
    nlohmann::json acts = nlohmann::json::array();
    for (int k = 0; k < inst.num_actions(); ++k) {
        std::vector<double> row(inst.d);
        for (int c = 0; c < inst.d; ++c) row[c] = inst.actions(k, c);
        acts.push_back(row);
    }
    j["actions"] = acts;
    j["noise_std"] = inst.noise_std;
    return j;
}

Instance instance_from_json(const nlohmann::json& j) {
    Instance inst;
    inst.d = j.at("d").get<int>();
    inst.s = j.at("s").get<int>();
    auto t0 = j.at("theta0").get<std::vector<double>>();
    inst.theta0 = Eigen::Map<const Eigen::VectorXd>(t0.data(), static_cast<long>(t0.size()));
    const auto& acts = j.at("actions");
    inst.actions.resize(static_cast<long>(acts.size()), inst.d);
    for (long k = 0; k < inst.actions.rows(); ++k) {
        auto row = acts[static_cast<std::size_t>(k)].get<std::vector<double>>();
        if (static_cast<int>(row.size()) != inst.d)
            throw std::invalid_argument("instance_from_json: action length mismatch");
        for (int c = 0; c < inst.d; ++c) inst.actions(k, c) = row[static_cast<std::size_t>(c)];
    }
    inst.noise_std = j.at("noise_std").get<double>();
    validate_instance(inst);
    return inst;
}

}  // namespace soids
