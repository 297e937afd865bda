#include "mesram/device/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mesram/common/error.hpp"

namespace mesram::device {

double zero_temperature_switching_time(const MefetParams& p, LlgParams lp) {
  lp.temperature = 0.0;
  return write_mefet(MefetState{}, p, lp, 1).switching_time;
}

double calibrate_me_coupling(const MefetParams& p, LlgParams lp, double target,
                             double rel_tol) {
  if (!(target > 0.0)) {
    throw InvalidInput("calibration target must be positive");
  }
  lp.temperature = 0.0;
  // Bracket in log space; switching time falls monotonically with drive.
  // Upper bracket keeps the drive rotation per step below 0.1 rad.
  double lo = 1.0e3;
  double hi = 0.1 / (lp.dt * (p.v_g_nominal / p.t_me) * lp.sigma_scale);
  lp.max_time = std::max(lp.max_time, 100.0 * target);
  auto time_at = [&](double beta) {
    LlgParams trial = lp;
    trial.beta_me = beta;
    try {
      return zero_temperature_switching_time(p, trial);
    } catch (const SwitchingFailure&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  if (!(time_at(hi) <= target)) {
    throw Error("calibration: target switching time unreachable");
  }
  for (int i = 0; i < 200 && hi / lo > 1.0 + 1e-9; ++i) {
    const double mid = std::sqrt(lo * hi);
    const double t = time_at(mid);
    if (std::abs(t - target) <= rel_tol * target) {
      return mid;
    }
    (t > target ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

}  // namespace mesram::device
