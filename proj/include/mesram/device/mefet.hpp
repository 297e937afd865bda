#pragma once

// Behavioral compact model of the magneto-electric FET: ME capacitor charging,
// threshold-gated ME drive, magnetization reversal, and two-state channel
// resistance readout.

#include <cstdint>
#include <string_view>
#include <vector>

#include "mesram/device/llg.hpp"

namespace mesram::device {

struct MefetParams {
  double eps_me = 12.0;       // relative permittivity of chromia
  double eps_al2o3 = 10.0;    // relative permittivity of alumina
  double t_me = 10.0e-9;      // m
  double area_me = 900.0e-18;  // m^2
  double t_ox = 2.0e-9;       // m
  double v_th = 0.05;         // V, chromia inversion threshold
  double v_g_nominal = 0.1;   // V
  double r_on = 1.05e3;       // ohm
  double r_off = 63.4e6;      // ohm
  double precession_delay = 200.0e-12;  // s, FM coupling delay added to writes
  double r_in = 1.0e3;        // ohm, input driving load

  void validate() const;
  double on_off_ratio() const { return r_off / r_on; }
};

enum class Resistance : std::uint8_t { On, Off };

std::string_view to_string(Resistance r);

/// Owned, explicitly seeded noise stream of one device instance.
struct NoiseStream {
  std::uint64_t seed = 0;
  std::uint64_t counter = 0;
};

struct MefetState {
  Resistance resistance = Resistance::On;
  double gate_charge_v = 0.0;
  bool drive_enabled = false;
  MagnetizationState magnetization;
  NoiseStream noise;
};

/// |m . e| above this defines a settled logical state.
inline constexpr double kSettleThreshold = 0.9;

/// eps0 * eps_ME * A / t_ME, in farad.
double me_capacitance(const MefetParams& p);

/// R_in * C_ME, in seconds.
double gate_time_constant(const MefetParams& p);

/// First-order RC charge of the ME capacitor toward `v_applied` for
/// `duration`. The ME drive is enabled exactly when |gate voltage| >= v_th.
MefetState charge_gate(MefetState state, const MefetParams& p, double v_applied, double duration);

/// ME field across the chromia layer along the easy axis (zero when the drive
/// is disabled).
Vec3 me_field(const MefetState& state, const MefetParams& p, const LlgParams& lp);

/// Settled easy-axis sign: +1, -1, or 0 if unsettled.
int settled_sign(const MagnetizationState& mag, const LlgParams& lp);

/// Bit encoding: 0 -> ON (m along +e), 1 -> OFF (m along -e).
Resistance resistance_for_bit(int bit);
int easy_sign_for_bit(int bit);

struct TraceSample {
  double t;
  Vec3 m;
  double gate_v;
  std::string_view state;  // "ON", "OFF", or "TRANSIT"
};

struct WriteOptions {
  std::vector<TraceSample>* trace = nullptr;
  std::size_t trace_stride = 10;
};

struct WriteResult {
  MefetState state;
  double switching_time = 0.0;  // s, LLG time until settled
  double delay = 0.0;           // s, switching_time + precession_delay
  std::uint64_t steps = 0;
};

/// Drives the gate at `v_applied` and integrates the magnetization until it
/// settles with the sign the drive polarity selects (positive voltage -> -e,
/// i.e. OFF). Leaves the gate discharged afterwards. Throws SwitchingFailure
/// if not settled within lp.max_time.
WriteResult write_mefet_voltage(MefetState state, const MefetParams& p, const LlgParams& lp,
                                double v_applied, const WriteOptions& opts = {});

/// Writes a bit with +v_g_nominal (bit 1) or -v_g_nominal (bit 0).
WriteResult write_mefet(MefetState state, const MefetParams& p, const LlgParams& lp, int bit,
                        const WriteOptions& opts = {});

/// Channel resistance in ohm. Non-destructive. Throws IndeterminateState if the
/// magnetization is not settled.
double read_resistance(const MefetState& state, const MefetParams& p, const LlgParams& lp);

}  // namespace mesram::device
