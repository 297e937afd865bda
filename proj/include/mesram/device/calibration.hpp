#pragma once

// The ME drive strength (sigma * beta_ME) has no reference value; only the
// behavioral target is (T = 0 switching below 20 ps). `calibrate_me_coupling`
// finds beta_me for a requested T = 0 switching time by bisection. The default
// LlgParams::beta_me is the output of this routine for target 15 ps from the
// default parameter set, rounded.

#include "mesram/device/mefet.hpp"

namespace mesram::device {

inline constexpr double kSwitchingTimeBudget = 20.0e-12;  // s
inline constexpr double kCalibrationTarget = 15.0e-12;    // s

/// T = 0 switching time from the +e rest state for a bit-1 write, excluding the
/// fixed precession delay.
double zero_temperature_switching_time(const MefetParams& p, LlgParams lp);

/// beta_me such that the T = 0 switching time equals `target` to within
/// `rel_tol`.
double calibrate_me_coupling(const MefetParams& p, LlgParams lp, double target,
                             double rel_tol = 1e-3);

}  // namespace mesram::device
