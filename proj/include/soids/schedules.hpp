#pragma once

#include <string>

namespace soids {

enum class Schedule { theorem2, theorem3, experimental };

Schedule schedule_from_string(const std::string& name);
std::string schedule_to_string(Schedule schedule);

// C_t = 5 + 2 s log(e d t / s), t >= 1.
double c_t(long t, int d, int s);

// Time-dependent rate: min(1/2, max(lambda2, lambda3)) with
//   lambda2_t = sqrt(3 C_{t+1} / (128 d (t+1)))
//   lambda3_t = (1 / (4 * 6^{1/3})) * (C_{t+1} sqrt(c_min) / ((t+1) sqrt(s)))^{2/3}.
// c_min = 0 disables the lambda3 branch (no exploratory policy exists).
double lambda_theorem2(long t, int d, int s, double c_min);

// Accumulators of the information ratios actually observed along a run.
struct ScheduleState {
    int d = 0;
    int s = 0;
    double c_min = 0.0;
    double sum_ir2 = 0.0;       // sum of 2-information ratios
    double sum_sqrt_ir3 = 0.0;  // sum of sqrt of 3-information ratios
    long t = 0;
};

// History-dependent rate: max of
//   lambda2 = sqrt(s / (2d + sum_ir2))
//   lambda3 = (s / (3 sqrt(6) s / sqrt(c_min) + sum_sqrt_ir3))^{2/3}.
// Requires s <= d/2; c_min = 0 disables the lambda3 branch.
double lambda_theorem3(const ScheduleState& state);

// Rate used by the reference experiment (companion eta = 1/2):
//   min(1/2, (1/10) max(sqrt(s log(edt/s) / (d t)), (log(edt/s) / t)^{2/3})).
double lambda_experimental(long t, int d, int s);

// Horizon beyond which both theorem-2 branch rates stay below 1/2:
//   40 sqrt(3/s) + 16 sqrt(3 s) log(8 e sqrt(3) d / sqrt(s)).
double t_min_threshold(int d, int s);

}  // namespace soids
