#pragma once

// Behavioral model of the non-volatile bit-cell: an 8T SRAM latch with a
// decoupled read port plus a MEFET back-up branch for store / restore.
// Analog races are resolved as deterministic comparisons.

#include <array>
#include <cstdint>

#include "mesram/arch/ledger.hpp"
#include "mesram/cell/costs.hpp"
#include "mesram/cell/signals.hpp"
#include "mesram/device/mefet.hpp"

namespace mesram::cell {

enum class Node : std::uint8_t { Low, High, Half, Erased };

struct CellState {
  Node q = Node::Low;
  Node qb = Node::High;
  device::MefetState mefet;
  Mode mode = Mode::Hold;

  /// True when q and qb are valid complements.
  bool valid() const;
  /// Stored bit; throws IndeterminateState unless valid().
  int bit() const;
  bool erased() const { return q == Node::Erased && qb == Node::Erased; }
};

CellState make_cell(int bit, std::uint64_t noise_seed = 0);

struct CellContext {
  device::MefetParams mefet;
  device::LlgParams llg;
  CostTable costs = CostTable::defaults();
  double r_ref = 0.0;             // ohm; 0 selects (r_on + r_off) / 2
  double r_branch_left = 10.0e3;  // restore-path transistor resistances
  double r_branch_right = 10.0e3;
  // A restore race resolves only if the path resistances differ by more than
  // this fraction of the reference-side resistance.
  double restore_margin = 0.0;
  double read_sense_fraction = 0.10;
  double read_conductance = 1.0;  // relative MR drive, scales the read delay

  double reference_resistance() const;
};

/// (r_on + r_off) / 2.
double reference_resistance(const device::MefetParams& p);

/// Applies a control vector; the cell's mode follows the matched pattern.
CellState apply_signals(CellState cell, const SignalVector& sig);

struct ReadResult {
  int bit = 0;
  bool rbl_discharged = false;
  double sense_time = 0.0;  // s
  arch::Event event;
};

/// Non-destructive read through the decoupled port: RBL precharged to VDD
/// discharges through MR iff QB = 1 and is sensed once it drops by
/// read_sense_fraction. Throws BusyError during a write transient.
ReadResult read(const CellState& cell, const CellContext& ctx);

struct WriteResult {
  CellState state;
  std::array<CellState, 3> phases;  // equalize, discharge, latch
  arch::Event event;
};

/// Phase 1: SPL = SPR = PSE = 0, Q and QB equalized at VDD/2.
CellState begin_write(CellState cell);
/// Three-phase single-ended write.
WriteResult write(CellState cell, int bit, const CellContext& ctx);

struct StoreResult {
  CellState state;
  double device_delay = 0.0;  // s, from the MEFET switching model
  arch::Event event;
};

/// Backs Q up into the MEFET (Q = 1 -> positive gate pulse -> R_off). The
/// latch stays in hold.
StoreResult store(CellState cell, const CellContext& ctx,
                  const device::WriteOptions& opts = {});

/// Power gating erases the volatile nodes.
CellState power_gate(CellState cell);

struct RestoreResult {
  CellState state;
  double r_mefet = 0.0;
  double r_reference = 0.0;
  arch::Event event;
};

/// Race between the MEFET path and the reference path. The lower-resistance
/// side discharges its node first, so an ON MEFET restores Q = 0 and an OFF
/// MEFET restores Q = 1. Requires erased volatile nodes.
RestoreResult restore(CellState cell, const CellContext& ctx);

/// Hold-leakage event for `duration`; zero energy while power gated.
arch::Event hold(const CellState& cell, const CellContext& ctx, double duration);

/// Ledger event charging one unit of `op` at its table cost.
arch::Event cost_event(const CostTable& table, OpKind op);

}  // namespace mesram::cell
