#include "mesram/cell/cell.hpp"

#include <cmath>

#include "mesram/common/error.hpp"

namespace mesram::cell {

bool CellState::valid() const {
  return (q == Node::Low && qb == Node::High) || (q == Node::High && qb == Node::Low);
}

int CellState::bit() const {
  if (!valid()) {
    throw IndeterminateState("cell nodes do not hold a valid complement");
  }
  return q == Node::High ? 1 : 0;
}

CellState make_cell(int bit, std::uint64_t noise_seed) {
  CellState c;
  c.q = bit ? Node::High : Node::Low;
  c.qb = bit ? Node::Low : Node::High;
  c.mefet.noise.seed = noise_seed;
  return c;
}

double reference_resistance(const device::MefetParams& p) { return 0.5 * (p.r_on + p.r_off); }

double CellContext::reference_resistance() const {
  return r_ref > 0.0 ? r_ref : cell::reference_resistance(mefet);
}

CellState apply_signals(CellState cell, const SignalVector& sig) {
  cell.mode = classify(sig);
  return cell;
}

arch::Event cost_event(const CostTable& table, OpKind op) {
  const auto& c = table.at(op);
  arch::Event e;
  e.op = op;
  e.count = 1;
  e.unit_delay = c.delay;
  e.unit_energy = c.pdp;
  return e;
}

ReadResult read(const CellState& cell, const CellContext& ctx) {
  if (cell.mode == Mode::Write || cell.q == Node::Half || cell.qb == Node::Half) {
    throw BusyError("read during write transient");
  }
  if (!cell.valid()) {
    throw IndeterminateState("read of a cell without valid data");
  }
  ReadResult r;
  r.bit = cell.bit();
  r.rbl_discharged = cell.qb == Node::High;
  r.event = cost_event(ctx.costs, OpKind::Read);
  // Linear discharge: time to the sense point scales with the sensed drop and
  // inversely with the MR drive.
  r.sense_time = r.event.unit_delay * (ctx.read_sense_fraction / 0.10) / ctx.read_conductance;
  return r;
}

CellState begin_write(CellState cell) {
  cell = apply_signals(cell, SignalVector::write());
  cell.q = Node::Half;
  cell.qb = Node::Half;
  return cell;
}

WriteResult write(CellState cell, int bit, const CellContext& ctx) {
  if (bit != 0 && bit != 1) {
    throw InvalidInput("write: bit must be 0 or 1");
  }
  WriteResult w;
  auto s = begin_write(std::move(cell));
  w.phases[0] = s;
  // SPL (bit 0) or SPR (bit 1) discharges the node that must end low.
  (bit ? s.qb : s.q) = Node::Low;
  w.phases[1] = s;
  // Cross-coupled feedback restores the opposite node to VDD.
  (bit ? s.q : s.qb) = Node::High;
  s = apply_signals(s, SignalVector::hold());
  w.phases[2] = s;
  w.state = s;
  w.event = cost_event(ctx.costs, OpKind::Write);
  return w;
}

StoreResult store(CellState cell, const CellContext& ctx, const device::WriteOptions& opts) {
  if (cell.mode != Mode::Hold) {
    throw PreconditionError("store requires the cell to be in hold");
  }
  const int bit = cell.bit();
  cell = apply_signals(cell, SignalVector::store());
  const auto dev = device::write_mefet(cell.mefet, ctx.mefet, ctx.llg, bit, opts);
  cell.mefet = dev.state;
  StoreResult r;
  r.state = apply_signals(cell, SignalVector::hold());
  r.device_delay = dev.delay;
  r.event = cost_event(ctx.costs, OpKind::Store);
  return r;
}

CellState power_gate(CellState cell) {
  cell.q = Node::Erased;
  cell.qb = Node::Erased;
  cell.mode = Mode::Hold;
  return cell;
}

RestoreResult restore(CellState cell, const CellContext& ctx) {
  if (!cell.erased()) {
    throw PreconditionError("restore requires power-gated (erased) volatile nodes");
  }
  RestoreResult r;
  try {
    r.r_mefet = device::read_resistance(cell.mefet, ctx.mefet, ctx.llg);
  } catch (const IndeterminateState& e) {
    throw RestoreFailure(std::string("restore: ") + e.what());
  }
  r.r_reference = ctx.reference_resistance();
  cell = apply_signals(cell, SignalVector::restore());
  const double left = r.r_mefet + ctx.r_branch_left;
  const double right = r.r_reference + ctx.r_branch_right;
  if (std::abs(left - right) <= ctx.restore_margin * right) {
    throw RestoreFailure("restore race unresolved: path resistances within margin");
  }
  // The faster-discharging node (lower-resistance side) ends low.
  const bool q_high = left > right;
  cell.q = q_high ? Node::High : Node::Low;
  cell.qb = q_high ? Node::Low : Node::High;
  r.state = apply_signals(cell, SignalVector::hold());
  r.event = cost_event(ctx.costs, OpKind::Restore);
  return r;
}

arch::Event hold(const CellState& cell, const CellContext& ctx, double duration) {
  if (!(duration >= 0.0)) {
    throw InvalidInput("hold duration must be non-negative");
  }
  arch::Event e;
  e.op = OpKind::Hold;
  e.count = 1;
  e.unit_delay = duration;
  e.unit_energy = cell.erased() ? 0.0 : ctx.costs.hold_power * duration;
  return e;
}

}  // namespace mesram::cell
