#include <cmath>

#include <gtest/gtest.h>

#include "mesram/cell/cell.hpp"
#include "mesram/common/config.hpp"
#include "mesram/common/error.hpp"

using namespace mesram;
using namespace mesram::cell;

namespace {

CellContext cold_context() {
  CellContext ctx;
  ctx.llg.temperature = 0.0;
  return ctx;
}

bool same_cell(const CellState& a, const CellState& b) {
  return a.q == b.q && a.qb == b.qb && a.mode == b.mode &&
         a.mefet.resistance == b.mefet.resistance &&
         a.mefet.magnetization.m == b.mefet.magnetization.m;
}

}  // namespace

TEST(Signals, TableColumnsSelectModes) {
  SignalVector hold;
  hold.rbl = RblLevel::Vdd;
  hold.rwl = Rail::Vdd;
  hold.pse = PseLevel::Vdd;
  hold.spl = SplLevel::Vdd;
  hold.spr = SprLevel::Vdd;
  hold.str = Rail::Gnd;
  hold.rstr = Rail::Gnd;
  EXPECT_EQ(classify(hold), Mode::Hold);

  SignalVector restore = hold;
  restore.spl = SplLevel::Gnd;
  restore.spr = SprLevel::Gnd;
  restore.pse = PseLevel::Pulse;
  restore.rstr = Rail::Vdd;
  EXPECT_EQ(classify(restore), Mode::Restore);

  EXPECT_EQ(classify(SignalVector::read()), Mode::Read);
  EXPECT_EQ(classify(SignalVector::write()), Mode::Write);
  EXPECT_EQ(classify(SignalVector::store()), Mode::Store);
  EXPECT_EQ(classify(SignalVector::compute(Rail::Vdd)), Mode::Compute);
  EXPECT_EQ(classify(SignalVector::compute(Rail::Gnd)), Mode::Compute);
}

TEST(Signals, StoreAndRestoreTogetherIsIllegal) {
  SignalVector s = SignalVector::hold();
  s.str = Rail::Vdd;
  s.rstr = Rail::Vdd;
  EXPECT_THROW(classify(s), IllegalSignaling);
  EXPECT_THROW(apply_signals(make_cell(1), s), IllegalSignaling);
}

TEST(Signals, EveryCombinationIsClassifiedOrRejected) {
  // Exhaustive sweep: exactly the six legal vectors (plus the second compute
  // polarity) are accepted; everything else raises.
  int accepted = 0;
  for (int rbl = 0; rbl < 5; ++rbl)
    for (int rwl = 0; rwl < 2; ++rwl)
      for (int pse = 0; pse < 3; ++pse)
        for (int spl = 0; spl < 3; ++spl)
          for (int spr = 0; spr < 3; ++spr)
            for (int str = 0; str < 2; ++str)
              for (int rstr = 0; rstr < 2; ++rstr) {
                SignalVector s{static_cast<RblLevel>(rbl), static_cast<Rail>(rwl),
                               static_cast<PseLevel>(pse), static_cast<SplLevel>(spl),
                               static_cast<SprLevel>(spr), static_cast<Rail>(str),
                               static_cast<Rail>(rstr)};
                try {
                  classify(s);
                  ++accepted;
                  EXPECT_FALSE(s.str == Rail::Vdd && s.rstr == Rail::Vdd);
                } catch (const IllegalSignaling&) {
                }
              }
  EXPECT_EQ(accepted, 7);
}

TEST(Read, ReturnsStoredBitAndModelsDischarge) {
  const CellContext ctx;
  const auto one = read(make_cell(1), ctx);
  EXPECT_EQ(one.bit, 1);
  EXPECT_FALSE(one.rbl_discharged);
  const auto zero = read(make_cell(0), ctx);
  EXPECT_EQ(zero.bit, 0);
  EXPECT_TRUE(zero.rbl_discharged);
  EXPECT_EQ(one.event.op, OpKind::Read);
  EXPECT_DOUBLE_EQ(one.event.unit_delay, 14.8e-12);
  EXPECT_DOUBLE_EQ(one.event.unit_energy, 176.12e-18);
  EXPECT_DOUBLE_EQ(one.sense_time, 14.8e-12);
}

TEST(Read, IsNonDestructiveAndRepeatable) {
  const CellContext ctx;
  for (const int b : {0, 1}) {
    const auto c = make_cell(b, 3);
    const auto before = c;
    const auto r1 = read(c, ctx);
    const auto r2 = read(c, ctx);
    EXPECT_EQ(r1.bit, r2.bit);
    EXPECT_EQ(r1.event.unit_energy, r2.event.unit_energy);
    EXPECT_EQ(r1.event.unit_delay, r2.event.unit_delay);
    EXPECT_TRUE(same_cell(c, before));
  }
}

TEST(Read, DuringWriteTransientIsBusy) {
  const CellContext ctx;
  EXPECT_THROW(read(begin_write(make_cell(1)), ctx), BusyError);
  EXPECT_THROW(read(power_gate(make_cell(1)), ctx), IndeterminateState);
}

TEST(Read, SenseTimeScalesWithFractionAndDrive) {
  CellContext ctx;
  ctx.read_sense_fraction = 0.2;
  ctx.read_conductance = 0.5;
  EXPECT_NEAR(read(make_cell(0), ctx).sense_time, 14.8e-12 * 2.0 / 0.5, 1e-24);
}

TEST(Write, ThreePhaseSequence) {
  const CellContext ctx;
  const auto w = write(make_cell(1), 0, ctx);
  EXPECT_EQ(w.phases[0].q, Node::Half);
  EXPECT_EQ(w.phases[0].qb, Node::Half);
  EXPECT_EQ(w.phases[0].mode, Mode::Write);
  EXPECT_EQ(w.phases[1].q, Node::Low);  // Q discharged for a 0
  EXPECT_EQ(w.phases[1].qb, Node::Half);
  EXPECT_EQ(w.state.q, Node::Low);
  EXPECT_EQ(w.state.qb, Node::High);
  EXPECT_EQ(w.state.mode, Mode::Hold);
  EXPECT_DOUBLE_EQ(w.event.unit_delay, 22e-12);
  EXPECT_DOUBLE_EQ(w.event.unit_energy, 26.6e-18);
}

TEST(Write, IdempotentAndCoherentWithRead) {
  const CellContext ctx;
  for (const int start : {0, 1}) {
    for (const int b : {0, 1}) {
      const auto w = write(make_cell(start), b, ctx);
      EXPECT_EQ(w.state.bit(), b);
      EXPECT_EQ(read(w.state, ctx).bit, b);
      const auto again = write(w.state, b, ctx);
      EXPECT_TRUE(same_cell(again.state, w.state));
    }
  }
  EXPECT_THROW(write(make_cell(0), 2, ctx), InvalidInput);
}

TEST(Store, EncodesQIntoMefet) {
  const auto ctx = cold_context();
  const auto s1 = store(make_cell(1), ctx);
  EXPECT_EQ(s1.state.mefet.resistance, device::Resistance::Off);
  EXPECT_DOUBLE_EQ(device::read_resistance(s1.state.mefet, ctx.mefet, ctx.llg), 63.4e6);
  EXPECT_EQ(s1.state.bit(), 1);
  EXPECT_EQ(s1.state.mode, Mode::Hold);
  EXPECT_DOUBLE_EQ(s1.event.unit_delay, 0.11e-9);
  EXPECT_DOUBLE_EQ(s1.event.unit_energy, 0.89e-15);

  const auto s0 = store(s1.state.q == Node::High ? write(s1.state, 0, ctx).state : s1.state, ctx);
  EXPECT_EQ(s0.state.mefet.resistance, device::Resistance::On);
  EXPECT_EQ(s0.state.bit(), 0);
}

TEST(Store, SecondStoreIsIdempotentButCharged) {
  const auto ctx = cold_context();
  arch::Ledger ledger;
  const auto first = store(make_cell(1), ctx);
  ledger.record(first.event);
  const auto second = store(first.state, ctx);
  ledger.record(second.event);
  EXPECT_TRUE(same_cell(first.state, second.state));
  EXPECT_NEAR(second.device_delay, ctx.mefet.precession_delay, 1e-24);
  EXPECT_EQ(ledger.count(OpKind::Store), 2u);
  EXPECT_NEAR(ledger.energy(OpKind::Store), 2 * 0.89e-15, 1e-30);
}

TEST(Store, RequiresHold) {
  const auto ctx = cold_context();
  EXPECT_THROW(store(begin_write(make_cell(1)), ctx), PreconditionError);
}

TEST(Store, PropagatesSwitchingFailure) {
  auto ctx = cold_context();
  ctx.llg.max_time = 1e-13;
  EXPECT_THROW(store(make_cell(1), ctx), SwitchingFailure);
}

TEST(Restore, ReferenceIsMidpoint) {
  const device::MefetParams p;
  EXPECT_NEAR(reference_resistance(p), (1.05e3 + 63.4e6) / 2.0, 1e-6);
  EXPECT_NEAR(reference_resistance(p), 31.7e6, 0.01e6);
  CellContext ctx;
  ctx.r_ref = 5e6;
  EXPECT_DOUBLE_EQ(ctx.reference_resistance(), 5e6);
}

TEST(Restore, RoundTripForBothBits) {
  const auto ctx = cold_context();
  for (const int b : {0, 1}) {
    for (const int start : {0, 1}) {
      auto c = write(make_cell(start), b, ctx).state;
      c = store(c, ctx).state;
      const auto mefet_before = c.mefet;
      c = power_gate(c);
      EXPECT_TRUE(c.erased());
      const auto r = restore(c, ctx);
      EXPECT_EQ(r.state.bit(), b);
      EXPECT_EQ(r.state.mode, Mode::Hold);
      EXPECT_EQ(r.state.mefet.resistance, mefet_before.resistance);
      EXPECT_EQ(r.state.mefet.magnetization.m, mefet_before.magnetization.m);
      EXPECT_DOUBLE_EQ(r.event.unit_delay, 0.05e-9);
      EXPECT_DOUBLE_EQ(r.event.unit_energy, 0.16e-15);
    }
  }
}

TEST(Restore, OnMefetWinsTheRace) {
  const auto ctx = cold_context();
  auto c = store(make_cell(0), ctx).state;
  const auto r = restore(power_gate(c), ctx);
  EXPECT_DOUBLE_EQ(r.r_mefet, 1.05e3);
  EXPECT_LT(r.r_mefet, r.r_reference);
  // Left node discharges faster: Q ends low.
  EXPECT_EQ(r.state.q, Node::Low);
}

TEST(Restore, Preconditions) {
  auto ctx = cold_context();
  EXPECT_THROW(restore(make_cell(1), ctx), PreconditionError);
  auto c = power_gate(make_cell(1));
  c.mefet.magnetization.m = device::Vec3(1.0, 0.0, 0.0);
  EXPECT_THROW(restore(c, ctx), RestoreFailure);

  // Margin wider than the path difference leaves the race unresolved.
  auto settled = power_gate(store(make_cell(0), ctx).state);
  ctx.restore_margin = 2.0;
  EXPECT_THROW(restore(settled, ctx), RestoreFailure);
}

TEST(Hold, LeakageStopsWhenGated) {
  CellContext ctx;
  ctx.costs.hold_power = 1e-9;
  EXPECT_NEAR(hold(make_cell(1), ctx, 1e-6).energy(), 1e-15, 1e-27);
  EXPECT_EQ(hold(power_gate(make_cell(1)), ctx, 1e-6).energy(), 0.0);
  EXPECT_THROW(hold(make_cell(1), ctx, -1.0), InvalidInput);
}

TEST(Costs, DefaultRows) {
  const auto t = CostTable::defaults();
  const auto r = op_cost(t, "read");
  EXPECT_DOUBLE_EQ(r.delay, 14.8e-12);
  EXPECT_DOUBLE_EQ(r.power, 11.9e-6);
  EXPECT_DOUBLE_EQ(r.pdp, 176.12e-18);
  const auto s = op_cost(t, "store");
  EXPECT_DOUBLE_EQ(s.delay, 0.11e-9);
  EXPECT_DOUBLE_EQ(s.power, 8.1e-6);
  EXPECT_DOUBLE_EQ(s.pdp, 0.89e-15);
  EXPECT_DOUBLE_EQ(op_cost(t, "xnor").delay, 16.7e-12);
  EXPECT_THROW(op_cost(t, "erase"), LookupError);
}

TEST(Costs, PdpSelfConsistencyWithinTwoPercent) {
  const auto t = CostTable::defaults();
  for (const auto& row : t.rows()) {
    EXPECT_LE(std::abs(row.delay * row.power - row.pdp) / row.pdp, 0.02)
        << arch::to_string(row.op);
  }
  // Restore cross-check: 0.05 ns x 3.25 uW.
  EXPECT_NEAR(0.05e-9 * 3.25e-6, 0.1625e-15, 1e-22);
  EXPECT_NEAR(t.at(OpKind::Restore).pdp, 0.1625e-15, 0.01e-15);
  // Write row: stored table value, product differs by under 1 %.
  EXPECT_DOUBLE_EQ(t.at(OpKind::Write).pdp, 26.6e-18);
  EXPECT_NEAR(22e-12 * 1.2e-6, 26.4e-18, 1e-24);
}

TEST(Costs, StoreSpeedupOverMramBaselines) {
  const auto b = checkpoint_baselines();
  ASSERT_EQ(b.size(), 2u);
  const double me = CostTable::defaults().at(OpKind::Store).delay;
  EXPECT_NEAR(b[0].store.delay / me, 16.9, 0.05);
  EXPECT_NEAR(b[1].store.delay / me, 16.4, 0.1);
}

TEST(Costs, LedgerEnergyMatchesDelayTimesPower) {
  const CellContext ctx;
  arch::Ledger ledger;
  auto c = make_cell(0);
  for (int i = 0; i < 10; ++i) {
    const auto w = write(c, i % 2, ctx);
    c = w.state;
    ledger.record(w.event);
    ledger.record(read(c, ctx).event);
  }
  for (const auto op : {OpKind::Read, OpKind::Write}) {
    const auto& row = ctx.costs.at(op);
    const double expect = 10 * row.delay * row.power;
    EXPECT_LE(std::abs(ledger.energy(op) - expect) / expect, 0.02);
  }
}

TEST(Costs, LoadOverridesAndValidates) {
  const auto doc = ConfigDocument::parse("[costs]\nread_delay = 1e-12\nhold_power = 2e-9\n");
  const auto t = CostTable::load(doc.section("costs"));
  EXPECT_DOUBLE_EQ(t.at(OpKind::Read).delay, 1e-12);
  EXPECT_DOUBLE_EQ(t.hold_power, 2e-9);
  EXPECT_THROW(CostTable::load(ConfigDocument::parse("[costs]\nread_delay = 0\n").section("costs")),
               ConfigError);
  EXPECT_THROW(CostTable::load(ConfigDocument::parse("[costs]\nfoo = 1\n").section("costs")),
               ConfigError);
}

TEST(Margins, ReportedConstants) {
  const auto m = me_sram_margins();
  EXPECT_DOUBLE_EQ(m.rsnm_mv, 288.0);
  EXPECT_GT(m.hsnm_mv, 0.0);
  EXPECT_GT(m.cwlm_mv, 0.0);
}
