#include "soids/schedules.hpp"

#include <cmath>
#include <stdexcept>

namespace soids {

Schedule schedule_from_string(const std::string& name) {
    if (name == "theorem2") return Schedule::theorem2;
    if (name == "theorem3") return Schedule::theorem3;
    if (name == "experimental") return Schedule::experimental;
    throw std::invalid_argument("unknown schedule: " + name);
}

std::string schedule_to_string(Schedule schedule) {
    switch (schedule) {
        case Schedule::theorem2: return "theorem2";
        case Schedule::theorem3: return "theorem3";
        case Schedule::experimental: return "experimental";
    }
    throw std::logic_error("unreachable");
}

double c_t(long t, int d, int s) {
    if (t < 1 || d < 1 || s < 1) throw std::invalid_argument("c_t: require t, d, s >= 1");
    return 5.0 + 2.0 * s * std::log(M_E * d * static_cast<double>(t) / s);
}

double lambda_theorem2(long t, int d, int s, double c_min) {
    if (t < 0) throw std::invalid_argument("lambda_theorem2: t must be >= 0");
    if (c_min < 0) throw std::invalid_argument("lambda_theorem2: c_min must be >= 0");
    const double c_next = c_t(t + 1, d, s);
    const double lambda2 = std::sqrt(3.0 * c_next / (128.0 * d * (t + 1.0)));
    double lambda3 = 0.0;
    if (c_min > 0) {
        lambda3 = std::pow(c_next * std::sqrt(c_min) / ((t + 1.0) * std::sqrt(double(s))),
                           2.0 / 3.0) /
                  (4.0 * std::cbrt(6.0));
    }
    return std::min(0.5, std::max(lambda2, lambda3));
}

double lambda_theorem3(const ScheduleState& state) {
    if (state.s < 1 || state.d < 1)
        throw std::invalid_argument("lambda_theorem3: require d, s >= 1");
    if (2 * state.s > state.d)
        throw std::invalid_argument("lambda_theorem3: requires s <= d/2");
    if (state.sum_ir2 < 0 || state.sum_sqrt_ir3 < 0)
        throw std::invalid_argument("lambda_theorem3: negative accumulator");
    const double s = state.s;
    const double lambda2 = std::sqrt(s / (2.0 * state.d + state.sum_ir2));
    double lambda3 = 0.0;
    if (state.c_min > 0) {
        lambda3 = std::pow(
            s / (3.0 * std::sqrt(6.0) * s / std::sqrt(state.c_min) + state.sum_sqrt_ir3),
            2.0 / 3.0);
    }
    return std::max(lambda2, lambda3);
}

double lambda_experimental(long t, int d, int s) {
    if (t < 1 || d < 1 || s < 1)
        throw std::invalid_argument("lambda_experimental: require t, d, s >= 1");
    const double logterm = std::log(M_E * d * static_cast<double>(t) / s);
    const double rich = std::sqrt(s * logterm / (d * static_cast<double>(t)));
    const double poor = std::pow(logterm / static_cast<double>(t), 2.0 / 3.0);
    return std::min(0.5, 0.1 * std::max(rich, poor));
}

double t_min_threshold(int d, int s) {
    if (s < 1 || d < 1) throw std::invalid_argument("t_min_threshold: require d, s >= 1");
    return 40.0 * std::sqrt(3.0 / s) +
           16.0 * std::sqrt(3.0 * s) * std::log(8.0 * M_E * std::sqrt(3.0) * d / std::sqrt(double(s)));
}

}  // namespace soids
