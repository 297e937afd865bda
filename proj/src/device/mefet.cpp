#include "mesram/device/mefet.hpp"

#include <cmath>
#include <string>

#include "mesram/common/error.hpp"

namespace mesram::device {

void MefetParams::validate() const {
  const double positive[] = {eps_me, eps_al2o3, t_me, area_me, t_ox, v_th,
                             v_g_nominal, r_on, r_off, precession_delay, r_in};
  for (const double v : positive) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidInput("MEFET parameters must be finite and strictly positive");
    }
  }
  if (!(r_off > r_on)) {
    throw InvalidInput("r_off must exceed r_on");
  }
  if (!(v_g_nominal > v_th)) {
    throw InvalidInput("v_g_nominal must exceed v_th");
  }
  if (!(on_off_ratio() > 1.0e4)) {
    throw InvalidInput("ON/OFF ratio must exceed 1e4");
  }
}

std::string_view to_string(Resistance r) { return r == Resistance::On ? "ON" : "OFF"; }

double me_capacitance(const MefetParams& p) {
  return kVacuumPermittivity * p.eps_me * p.area_me / p.t_me;
}

double gate_time_constant(const MefetParams& p) { return p.r_in * me_capacitance(p); }

MefetState charge_gate(MefetState state, const MefetParams& p, double v_applied,
                       double duration) {
  if (!std::isfinite(v_applied) || !std::isfinite(duration)) {
    throw InvalidInput("charge_gate: non-finite input");
  }
  if (duration < 0.0) {
    throw InvalidInput("charge_gate: negative duration");
  }
  const double decay = std::exp(-duration / gate_time_constant(p));
  state.gate_charge_v = v_applied + (state.gate_charge_v - v_applied) * decay;
  state.drive_enabled = std::abs(state.gate_charge_v) >= p.v_th;
  return state;
}

Vec3 me_field(const MefetState& state, const MefetParams& p, const LlgParams& lp) {
  if (!state.drive_enabled) {
    return Vec3::Zero();
  }
  return (state.gate_charge_v / p.t_me) * lp.easy_axis;
}

int settled_sign(const MagnetizationState& mag, const LlgParams& lp) {
  const double proj = easy_projection(mag.m, lp);
  if (proj > kSettleThreshold) {
    return 1;
  }
  if (proj < -kSettleThreshold) {
    return -1;
  }
  return 0;
}

Resistance resistance_for_bit(int bit) { return bit ? Resistance::Off : Resistance::On; }

int easy_sign_for_bit(int bit) { return bit ? -1 : 1; }

namespace {

std::string_view trace_label(int sign) {
  return sign > 0 ? "ON" : (sign < 0 ? "OFF" : "TRANSIT");
}

}  // namespace

WriteResult write_mefet_voltage(MefetState state, const MefetParams& p, const LlgParams& lp,
                                double v_applied, const WriteOptions& opts) {
  if (!std::isfinite(v_applied)) {
    throw InvalidInput("write: non-finite gate voltage");
  }
  lp.validate();
  // Positive gate field drives m toward -e (see llg.hpp sign convention).
  const int target = v_applied >= 0.0 ? -1 : 1;

  WriteResult result;
  auto record = [&](const MefetState& s) {
    if (opts.trace) {
      opts.trace->push_back({s.magnetization.t, s.magnetization.m, s.gate_charge_v,
                             trace_label(settled_sign(s.magnetization, lp))});
    }
  };
  record(state);

  if (settled_sign(state.magnetization, lp) == target) {
    state.resistance = target > 0 ? Resistance::On : Resistance::Off;
    result.state = state;
    result.delay = p.precession_delay;
    return result;
  }

  const double charge_step = 1.0 - std::exp(-lp.dt / gate_time_constant(p));
  const bool thermal = lp.temperature > 0.0;
  const double thermal_std = thermal_field_std(lp);
  const auto max_steps = static_cast<std::uint64_t>(std::ceil(lp.max_time / lp.dt));
  const std::size_t stride = opts.trace_stride == 0 ? 1 : opts.trace_stride;

  std::uint64_t step = 0;
  bool settled = false;
  while (step < max_steps) {
    state.gate_charge_v += (v_applied - state.gate_charge_v) * charge_step;
    state.drive_enabled = std::abs(state.gate_charge_v) >= p.v_th;
    const Vec3 e = me_field(state, p, lp);
    const Vec3 b_th = thermal ? thermal_sample(thermal_std, state.noise.seed, state.noise.counter++)
                              : Vec3::Zero();
    state.magnetization = llg_step(state.magnetization, lp, e, b_th);
    ++step;
    settled = settled_sign(state.magnetization, lp) == target;
    if (opts.trace && (settled || step % stride == 0)) {
      record(state);
    }
    if (settled) {
      break;
    }
  }
  if (!settled) {
    throw SwitchingFailure("MEFET did not settle within " + std::to_string(lp.max_time) +
                           " s at " + std::to_string(v_applied) + " V");
  }

  state.resistance = target > 0 ? Resistance::On : Resistance::Off;
  state.gate_charge_v = 0.0;
  state.drive_enabled = false;
  result.state = state;
  result.steps = step;
  result.switching_time = static_cast<double>(step) * lp.dt;
  result.delay = result.switching_time + p.precession_delay;
  return result;
}

WriteResult write_mefet(MefetState state, const MefetParams& p, const LlgParams& lp, int bit,
                        const WriteOptions& opts) {
  if (bit != 0 && bit != 1) {
    throw InvalidInput("write_mefet: bit must be 0 or 1");
  }
  p.validate();
  return write_mefet_voltage(std::move(state), p, lp, bit ? p.v_g_nominal : -p.v_g_nominal,
                             opts);
}

double read_resistance(const MefetState& state, const MefetParams& p, const LlgParams& lp) {
  if (settled_sign(state.magnetization, lp) == 0) {
    throw IndeterminateState("MEFET magnetization is not settled");
  }
  return state.resistance == Resistance::On ? p.r_on : p.r_off;
}

}  // namespace mesram::device
