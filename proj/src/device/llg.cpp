#include "mesram/device/llg.hpp"

#include <cmath>

#include "mesram/common/error.hpp"
#include "mesram/common/rng.hpp"

namespace mesram::device {

void LlgParams::validate() const {
  if (!(gamma > 0.0) || !(alpha > 0.0) || !(dt > 0.0) || !(m_s > 0.0) || !(volume > 0.0)) {
    throw InvalidInput("LLG parameters gamma, alpha, dt, m_s, volume must be positive");
  }
  if (!(temperature >= 0.0)) {
    throw InvalidInput("temperature must be non-negative");
  }
  if (!(k_u >= 0.0) || !(max_time > 0.0) || !std::isfinite(beta_me) ||
      !std::isfinite(sigma_scale) || !h_ext.allFinite()) {
    throw InvalidInput("LLG parameters must be finite, k_u >= 0, max_time > 0");
  }
  if (std::abs(easy_axis.norm() - 1.0) > 1e-12) {
    throw InvalidInput("easy axis must be a unit vector");
  }
}

double easy_projection(const Vec3& m, const LlgParams& lp) { return m.dot(lp.easy_axis); }

Vec3 precession_rate(const Vec3& m, const LlgParams& lp, const Vec3& e_field,
                     const Vec3& thermal_b) {
  const Vec3 b_anis = kVacuumPermeability * lp.k_u * easy_projection(m, lp) * lp.easy_axis;
  const Vec3 b_eff = b_anis + kVacuumPermeability * lp.h_ext + thermal_b;
  return lp.gamma * b_eff - lp.sigma_scale * lp.beta_me * e_field;
}

Vec3 llg_rhs(const Vec3& m, const LlgParams& lp, const Vec3& e_field, const Vec3& thermal_b) {
  const Vec3 w = precession_rate(m, lp, e_field, thermal_b);
  const Vec3 mxw = m.cross(w);
  return -(mxw + lp.alpha * m.cross(mxw)) / (1.0 + lp.alpha * lp.alpha);
}

MagnetizationState llg_step(const MagnetizationState& state, const LlgParams& lp,
                            const Vec3& e_field, const Vec3& thermal_b) {
  if (!(lp.dt > 0.0)) {
    throw InvalidInput("llg_step: dt must be positive");
  }
  const double dt = lp.dt;
  // Only the anisotropy term depends on m; the rest of W is fixed for the step.
  const Vec3 w0 = lp.gamma * (kVacuumPermeability * lp.h_ext + thermal_b) -
                  lp.sigma_scale * lp.beta_me * e_field;
  const Vec3 axis = lp.easy_axis;
  const double c_anis = lp.gamma * kVacuumPermeability * lp.k_u;
  const double alpha = lp.alpha;
  const double scale = -1.0 / (1.0 + alpha * alpha);
  auto rhs = [&](const Vec3& m) -> Vec3 {
    const Vec3 w = w0 + (c_anis * m.dot(axis)) * axis;
    const Vec3 mxw = m.cross(w);
    return scale * (mxw + alpha * m.cross(mxw));
  };
  const Vec3 k1 = rhs(state.m);
  const Vec3 predictor = state.m + dt * k1;
  const Vec3 k2 = rhs(predictor);
  MagnetizationState next;
  next.m = (state.m + 0.5 * dt * (k1 + k2)).normalized();
  next.t = state.t + dt;
  return next;
}

MagnetizationState rk4_step(const MagnetizationState& state, const LlgParams& lp,
                            const Vec3& e_field, double dt) {
  if (!(dt > 0.0)) {
    throw InvalidInput("rk4_step: dt must be positive");
  }
  const Vec3 zero = Vec3::Zero();
  const Vec3& m = state.m;
  const Vec3 k1 = llg_rhs(m, lp, e_field, zero);
  const Vec3 k2 = llg_rhs(m + 0.5 * dt * k1, lp, e_field, zero);
  const Vec3 k3 = llg_rhs(m + 0.5 * dt * k2, lp, e_field, zero);
  const Vec3 k4 = llg_rhs(m + dt * k3, lp, e_field, zero);
  MagnetizationState next;
  next.m = (m + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)).normalized();
  next.t = state.t + dt;
  return next;
}

double thermal_field_std(const LlgParams& lp) {
  if (lp.temperature <= 0.0) {
    return 0.0;
  }
  return std::sqrt(2.0 * lp.alpha * kBoltzmann * lp.temperature /
                   (lp.gamma * lp.m_s * lp.volume * lp.dt));
}

Vec3 thermal_field(const LlgParams& lp, std::uint64_t seed, std::uint64_t call_index) {
  return thermal_sample(thermal_field_std(lp), seed, call_index);
}

Vec3 thermal_sample(double std_t, std::uint64_t seed, std::uint64_t call_index) {
  if (std_t == 0.0) {
    return Vec3::Zero();
  }
  const auto key = hash_keys({seed, call_index});
  const auto xy = standard_normal_pair(key);
  const double z = standard_normal(splitmix64(key ^ 0x5851F42D4C957F2Dull));
  return std_t * Vec3(xy.first, xy.second, z);
}

}  // namespace mesram::device
