#pragma once

// Per-operation delay / power / energy of the bit-cell and its sense path.
// Defaults are transistor-level reference figures; the XNOR energy is a
// calibration constant (see kXnorEnergy).

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mesram/arch/ledger.hpp"
#include "mesram/common/config.hpp"

namespace mesram::cell {

using arch::OpKind;

struct OpCost {
  OpKind op = OpKind::Read;
  double delay = 0.0;  // s
  double power = 0.0;  // W
  double pdp = 0.0;    // J, the energy charged per operation

  /// |delay * power - pdp| / pdp.
  double pdp_mismatch() const;
};

// Energy of one in-array XNOR (one bit-line, one cycle). Chosen so that the
// five-layer binarized AlexNet convolution stack shipped in
// fixtures/alexnet5.net totals 0.28 uJ: 0.28e-6 J / 985,408,032 in-bounds
// XNOR evaluations = 2.8415e-16 J. Popcount energy is folded in (per-bit adder
// cost defaults to zero).
inline constexpr double kXnorDelay = 16.7e-12;
inline constexpr double kXnorEnergy = 2.8415e-16;
inline constexpr double kCalibrationXnorCount = 985408032.0;
inline constexpr double kCalibrationEnergy = 0.28e-6;

class CostTable {
 public:
  /// Reference defaults: read, write, store, restore, xnor.
  static CostTable defaults();

  /// Reads `[costs]`: `<op>_delay`, `<op>_power`, `<op>_pdp` for each op, plus
  /// `popcount_energy_per_bit` and `hold_power`.
  static CostTable load(const ConfigSection& section);

  /// Throws LookupError if `op` has no cost row.
  const OpCost& at(OpKind op) const;
  bool has(OpKind op) const { return rows_.count(op) != 0; }
  void set(const OpCost& cost) { rows_[cost.op] = cost; }
  std::vector<OpCost> rows() const;

  double popcount_energy_per_bit = 0.0;  // J
  double hold_power = 0.0;               // W per cell, no reference value

 private:
  std::map<OpKind, OpCost> rows_;
};

/// Default cost row by name ("read", "write", ...). Throws LookupError.
OpCost op_cost(const CostTable& table, std::string_view op);

struct MarginReport {
  double hsnm_mv;
  double rsnm_mv;
  double cwlm_mv;
};

/// Reference noise margins, reported as constants.
MarginReport me_sram_margins();
MarginReport six_t_sram_margins();

/// 6T SRAM read/write rows for comparison.
OpCost six_t_sram_cost(OpKind op);

/// MRAM-based non-volatile SRAM designs used for the check-pointing comparison.
struct CheckpointBaseline {
  std::string name;
  OpCost store;
  OpCost restore;
};
std::vector<CheckpointBaseline> checkpoint_baselines();

}  // namespace mesram::cell
