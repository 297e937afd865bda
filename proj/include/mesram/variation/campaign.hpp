#pragma once

// Monte-Carlo failure counting on the behavioral margin model.
//
// Each of the 256 columns owns its own device instances (slots below); a slot's
// parameters are drawn with instance id = column * kSlotCount + slot. Parameter
// deviations move the sensed levels through a linear sensitivity table:
//
//   transistor drive  g = 1 + s_w dW - s_l dL - s_vth dVth       (dX = m_X - 1)
//   vref_i            = nominal_i * (1 + s_vref (m_vref_i - 1))
//   divider gain      = 1 + s_gain (m_gain - 1)
//   SA offset         = s_offset * vdd * dVth(SA)
//   floating RBL      = vref3 + s_precharge * vdd * dVth(precharge)
//   MEFET / R_ref     = nominal * (1 + s_res (m - 1))
//
// RSNM and CWLM are model proxies derived from the latch and write-branch
// drives, not extracted noise margins.

#include <cstdint>
#include <string_view>
#include <vector>

#include "mesram/cell/cell.hpp"
#include "mesram/variation/perturb.hpp"

namespace mesram::variation {

enum class Slot : std::uint8_t {
  MrA,        // read transistor of the RWL = VDD operand row
  MrB,        // read transistor of the RWL = GND operand row
  Sa1,
  Sa2,
  Precharge,
  Ladder,     // vref1..3 and divider gain of the column's sense amplifier
  Mefet,
  Ref,
  BranchL,
  BranchR,
  InvL,
  InvR,
};
inline constexpr std::uint64_t kSlotCount = 12;

inline std::uint64_t instance_id(std::uint32_t column, Slot slot) {
  return static_cast<std::uint64_t>(column) * kSlotCount + static_cast<std::uint64_t>(slot);
}

struct MarginModel {
  double vdd = 0.8;
  double s_width = 0.15;
  double s_length = 0.15;
  double s_vth = 0.15;
  double s_vref = 0.10;
  double s_gain = 1.0;
  double s_offset = 0.02;
  double s_precharge = 0.02;
  double s_res = 1.0;
  double rail_leak = 1e-3;    // off-transistor conductance relative to on
  double read_window = 2.0;   // allowed discharge time / nominal
  double sneak_limit = 0.10;  // RBL droop of an unselected path that misreads
  double s_snm = 1.0;
  double s_cwlm = 1.0;
  double hsnm_mv = 288.0;
  double cwlm_mv = 374.8;
  std::uint32_t columns = 256;
  // Nominal levels before variation; the sanity case overrides vref3.
  ParamSet nominal = nominal_params();

  /// Reads the `s_*`, `rail_leak`, `read_window`, `sneak_limit`, `columns` keys
  /// and optional nominal `vref1`..`vref3` overrides.
  static MarginModel load(SectionReader& reader, double vdd);
  /// Sensitivities large enough that failures appear well below 70 %.
  static MarginModel stressed();
};

enum class Workload : std::uint8_t { Read, Write, StoreRestore, XorAllInputs };

std::string_view to_string(Workload w);
/// "read", "write", "store_restore", "xor". Throws LookupError.
Workload parse_workload(std::string_view name);

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::uint64_t> counts;  // uniform bins; out-of-range values clamp
  void add(double v);
};

struct CurvePoint {
  double sigma_pct = 0.0;
  std::uint64_t failures = 0;
  std::uint64_t trials = 0;
  double rate = 0.0;
};

struct McResult {
  Workload op = Workload::XorAllInputs;
  std::uint64_t failures = 0;
  std::uint64_t trials = 0;
  double failure_rate = 0.0;
  std::vector<CurvePoint> per_sigma_curve;
  // RSNM proxy for read, CWLM proxy for write, in mV; empty otherwise.
  Histogram margin;
};

/// Perturbed drive of a transistor slot.
double drive(const MarginModel& m, const VariationSpec& spec, std::uint64_t trial,
             std::uint32_t column, Slot slot);

/// XOR decision of one column for operand QBs (a_qb, b_qb) under variation.
int xor_decision(const MarginModel& m, const VariationSpec& spec, std::uint64_t trial,
                 std::uint32_t column, int a_qb, int b_qb);

/// Cell context with this column's perturbed MEFET, reference and branch
/// resistances.
cell::CellContext perturbed_context(const cell::CellContext& nominal, const MarginModel& m,
                                    const VariationSpec& spec, std::uint64_t trial,
                                    std::uint32_t column);

/// One trial per iteration; decisions per trial: columns x input cases
/// (2 bits for read/write/store_restore, 4 operand pairs for xor).
McResult run_campaign(const VariationSpec& spec, Workload workload, const MarginModel& model = {},
                      const cell::CellContext& ctx = {});

/// Campaigns at each 3-sigma value; totals are summed over the sweep.
McResult run_sweep(const VariationSpec& spec, Workload workload,
                   const std::vector<double>& three_sigma_pcts, const MarginModel& model = {},
                   const cell::CellContext& ctx = {});

/// Full write -> store -> power gate -> restore -> read sequence through the
/// cell model with per-sample perturbed resistances. Sample i of bit b uses
/// trial i and column 0; for bit 0 the MEFET starts in the OFF state so both
/// polarities are switched. Failures are wrong restored bits or thrown model
/// errors.
McResult round_trip_campaign(const VariationSpec& spec, const MarginModel& model,
                             const cell::CellContext& ctx, std::uint64_t samples_per_bit);

/// Sigma values a..b inclusive in steps of `step`.
std::vector<double> sigma_range(double from, double to, double step);

}  // namespace mesram::variation
