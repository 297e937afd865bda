#include "mesram/variation/campaign.hpp"

#include <algorithm>
#include <cmath>

#include "mesram/common/error.hpp"
#include "mesram/common/rng.hpp"

namespace mesram::variation {

namespace {

double dev(const VariationSpec& spec, std::uint64_t trial, std::uint32_t column, Slot slot,
           ParamId p) {
  return multiplier(spec, trial, instance_id(column, slot), p) - 1.0;
}

double scaled(double nominal, double s, double m_minus_1) {
  return nominal * std::max(kMinMultiplier, 1.0 + s * m_minus_1);
}

struct ColumnLevels {
  double vref1, vref2, gain, v_float, off1, off2, g_a, g_b;
};

ColumnLevels column_levels(const MarginModel& m, const VariationSpec& spec, std::uint64_t trial,
                           std::uint32_t column) {
  ColumnLevels c{};
  const auto& n = m.nominal;
  c.vref1 = scaled(n[ParamId::Vref1], m.s_vref, dev(spec, trial, column, Slot::Ladder, ParamId::Vref1));
  c.vref2 = scaled(n[ParamId::Vref2], m.s_vref, dev(spec, trial, column, Slot::Ladder, ParamId::Vref2));
  const double vref3 =
      scaled(n[ParamId::Vref3], m.s_vref, dev(spec, trial, column, Slot::Ladder, ParamId::Vref3));
  c.gain = scaled(n[ParamId::RblDividerGain], m.s_gain,
                  dev(spec, trial, column, Slot::Ladder, ParamId::RblDividerGain));
  c.v_float = vref3 + m.s_precharge * m.vdd * dev(spec, trial, column, Slot::Precharge, ParamId::Vth);
  c.off1 = m.s_offset * m.vdd * dev(spec, trial, column, Slot::Sa1, ParamId::Vth);
  c.off2 = m.s_offset * m.vdd * dev(spec, trial, column, Slot::Sa2, ParamId::Vth);
  c.g_a = drive(m, spec, trial, column, Slot::MrA);
  c.g_b = drive(m, spec, trial, column, Slot::MrB);
  return c;
}

double rbl_level(const MarginModel& m, const ColumnLevels& c, int a_qb, int b_qb) {
  const double leak = m.rail_leak;
  if (a_qb && b_qb) {
    const double divided = m.vdd * c.g_a / (c.g_a + c.g_b);
    return 0.5 * m.vdd + c.gain * (divided - 0.5 * m.vdd);
  }
  if (!a_qb && !b_qb) {
    return c.v_float;
  }
  if (a_qb) {
    return m.vdd * c.g_a / (c.g_a + leak * c.g_b);
  }
  return m.vdd * leak * c.g_a / (leak * c.g_a + c.g_b);
}

int xor_out(const ColumnLevels& c, double v) {
  const bool sa1 = v + c.off1 > c.vref2;
  const bool sa2 = v + c.off2 < c.vref1;
  return (sa1 || sa2) ? 1 : 0;
}

bool restore_ok(const cell::CellContext& ctx, int bit) {
  const double r_me = bit ? ctx.mefet.r_off : ctx.mefet.r_on;
  const double left = r_me + ctx.r_branch_left;
  const double right = ctx.reference_resistance() + ctx.r_branch_right;
  if (std::abs(left - right) <= ctx.restore_margin * right) {
    return false;
  }
  return (left > right ? 1 : 0) == bit;
}

void finish(McResult& r) {
  r.failure_rate = r.trials ? static_cast<double>(r.failures) / static_cast<double>(r.trials) : 0.0;
}

}  // namespace

void Histogram::add(double v) {
  if (counts.empty()) {
    return;
  }
  const double f = (v - lo) / (hi - lo);
  const auto n = static_cast<double>(counts.size());
  const auto idx = static_cast<std::size_t>(std::clamp(std::floor(f * n), 0.0, n - 1.0));
  ++counts[idx];
}

MarginModel MarginModel::load(SectionReader& r, double vdd) {
  MarginModel m;
  m.vdd = vdd;
  m.nominal = nominal_params(vdd);
  m.s_width = r.real("s_width", m.s_width);
  m.s_length = r.real("s_length", m.s_length);
  m.s_vth = r.real("s_vth", m.s_vth);
  m.s_vref = r.real("s_vref", m.s_vref);
  m.s_gain = r.real("s_gain", m.s_gain);
  m.s_offset = r.real("s_offset", m.s_offset);
  m.s_precharge = r.real("s_precharge", m.s_precharge);
  m.s_res = r.real("s_res", m.s_res);
  m.rail_leak = r.real("rail_leak", m.rail_leak);
  m.read_window = r.real("read_window", m.read_window);
  m.sneak_limit = r.real("sneak_limit", m.sneak_limit);
  m.s_snm = r.real("s_snm", m.s_snm);
  m.s_cwlm = r.real("s_cwlm", m.s_cwlm);
  m.columns = static_cast<std::uint32_t>(r.u64("columns", m.columns));
  m.nominal[ParamId::Vref1] = r.real("vref1", m.nominal[ParamId::Vref1]);
  m.nominal[ParamId::Vref2] = r.real("vref2", m.nominal[ParamId::Vref2]);
  m.nominal[ParamId::Vref3] = r.real("vref3", m.nominal[ParamId::Vref3]);
  if (m.columns == 0 || !(m.read_window > 0.0) || !(m.rail_leak >= 0.0)) {
    throw ConfigError("[montecarlo] columns, read_window and rail_leak must be positive");
  }
  return m;
}

MarginModel MarginModel::stressed() {
  MarginModel m;
  m.s_width = 1.0;
  m.s_length = 1.0;
  m.s_vth = 1.0;
  m.s_vref = 1.0;
  m.s_offset = 0.5;
  m.s_precharge = 0.5;
  m.read_window = 1.5;
  return m;
}

std::string_view to_string(Workload w) {
  switch (w) {
    case Workload::Read: return "read";
    case Workload::Write: return "write";
    case Workload::StoreRestore: return "store_restore";
    case Workload::XorAllInputs: return "xor";
  }
  return "?";
}

Workload parse_workload(std::string_view name) {
  for (auto w : {Workload::Read, Workload::Write, Workload::StoreRestore, Workload::XorAllInputs}) {
    if (to_string(w) == name) {
      return w;
    }
  }
  throw LookupError("unknown Monte-Carlo workload '" + std::string(name) + "'");
}

double drive(const MarginModel& m, const VariationSpec& spec, std::uint64_t trial,
             std::uint32_t column, Slot slot) {
  const double g = 1.0 + m.s_width * dev(spec, trial, column, slot, ParamId::Width) -
                   m.s_length * dev(spec, trial, column, slot, ParamId::Length) -
                   m.s_vth * dev(spec, trial, column, slot, ParamId::Vth);
  return std::max(kMinMultiplier, g);
}

int xor_decision(const MarginModel& m, const VariationSpec& spec, std::uint64_t trial,
                 std::uint32_t column, int a_qb, int b_qb) {
  const auto c = column_levels(m, spec, trial, column);
  return xor_out(c, rbl_level(m, c, a_qb, b_qb));
}

cell::CellContext perturbed_context(const cell::CellContext& nominal, const MarginModel& m,
                                    const VariationSpec& spec, std::uint64_t trial,
                                    std::uint32_t column) {
  auto ctx = nominal;
  const double r_ref = nominal.reference_resistance();
  ctx.mefet.r_on = scaled(nominal.mefet.r_on, m.s_res, dev(spec, trial, column, Slot::Mefet, ParamId::ROn));
  ctx.mefet.r_off =
      scaled(nominal.mefet.r_off, m.s_res, dev(spec, trial, column, Slot::Mefet, ParamId::ROff));
  ctx.r_ref = scaled(r_ref, m.s_res, dev(spec, trial, column, Slot::Ref, ParamId::RRef));
  ctx.r_branch_left = nominal.r_branch_left / drive(m, spec, trial, column, Slot::BranchL);
  ctx.r_branch_right = nominal.r_branch_right / drive(m, spec, trial, column, Slot::BranchR);
  ctx.read_conductance = nominal.read_conductance * drive(m, spec, trial, column, Slot::MrA);
  return ctx;
}

McResult run_campaign(const VariationSpec& spec, Workload workload, const MarginModel& model,
                      const cell::CellContext& ctx) {
  spec.validate();
  McResult r;
  r.op = workload;
  const bool margin_hist = workload == Workload::Read || workload == Workload::Write;
  if (margin_hist) {
    const double nominal = workload == Workload::Read ? model.hsnm_mv : model.cwlm_mv;
    r.margin.lo = 0.0;
    r.margin.hi = 2.0 * nominal;
    r.margin.counts.assign(40, 0);
  }
  for (std::uint64_t t = 0; t < spec.iterations; ++t) {
    for (std::uint32_t col = 0; col < model.columns; ++col) {
      switch (workload) {
        case Workload::XorAllInputs: {
          const auto c = column_levels(model, spec, t, col);
          for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
              r.failures += xor_out(c, rbl_level(model, c, a, b)) != (a ^ b);
              ++r.trials;
            }
          }
          break;
        }
        case Workload::Read: {
          const double g = drive(model, spec, t, col, Slot::MrA);
          const double snm = model.hsnm_mv *
                             (1.0 - model.s_snm * std::abs(drive(model, spec, t, col, Slot::InvL) -
                                                           drive(model, spec, t, col, Slot::InvR)));
          r.margin.add(snm);
          // bit 0: QB = 1, the RBL must discharge within the window.
          r.failures += (1.0 / g > model.read_window || snm <= 0.0);
          // bit 1: QB = 0, only leakage through the off MR.
          r.failures += (model.rail_leak * g * model.read_window >= model.sneak_limit || snm <= 0.0);
          r.trials += 2;
          break;
        }
        case Workload::Write: {
          for (int bit = 0; bit < 2; ++bit) {
            const Slot branch = bit ? Slot::BranchR : Slot::BranchL;
            const Slot inv = bit ? Slot::InvL : Slot::InvR;
            const double cwlm =
                model.cwlm_mv * (1.0 + model.s_cwlm * (drive(model, spec, t, col, branch) - 1.0) -
                                 model.s_cwlm * (drive(model, spec, t, col, inv) - 1.0));
            r.margin.add(cwlm);
            r.failures += cwlm <= 0.0;
            ++r.trials;
          }
          break;
        }
        case Workload::StoreRestore: {
          const auto pctx = perturbed_context(ctx, model, spec, t, col);
          for (int bit = 0; bit < 2; ++bit) {
            r.failures += !restore_ok(pctx, bit);
            ++r.trials;
          }
          break;
        }
      }
    }
  }
  finish(r);
  r.per_sigma_curve.push_back({spec.three_sigma_pct, r.failures, r.trials, r.failure_rate});
  return r;
}

McResult run_sweep(const VariationSpec& spec, Workload workload,
                   const std::vector<double>& three_sigma_pcts, const MarginModel& model,
                   const cell::CellContext& ctx) {
  McResult total;
  total.op = workload;
  for (const double s : three_sigma_pcts) {
    auto local = spec;
    local.three_sigma_pct = s;
    const auto r = run_campaign(local, workload, model, ctx);
    total.failures += r.failures;
    total.trials += r.trials;
    total.per_sigma_curve.push_back(r.per_sigma_curve.front());
    if (total.margin.counts.empty()) {
      total.margin = r.margin;
    } else {
      for (std::size_t i = 0; i < r.margin.counts.size(); ++i) {
        total.margin.counts[i] += r.margin.counts[i];
      }
    }
  }
  finish(total);
  return total;
}

McResult round_trip_campaign(const VariationSpec& spec, const MarginModel& model,
                             const cell::CellContext& ctx, std::uint64_t samples_per_bit) {
  spec.validate();
  McResult r;
  r.op = Workload::StoreRestore;
  for (int bit = 0; bit < 2; ++bit) {
    for (std::uint64_t i = 0; i < samples_per_bit; ++i) {
      const auto pctx = perturbed_context(ctx, model, spec, i, 0);
      ++r.trials;
      try {
        auto c = cell::make_cell(1 - bit, hash_keys({spec.seed, i, static_cast<std::uint64_t>(bit)}));
        if (bit == 0) {
          c.mefet.resistance = device::Resistance::Off;
          c.mefet.magnetization.m = -pctx.llg.easy_axis;
        }
        c = cell::write(c, bit, pctx).state;
        c = cell::store(c, pctx).state;
        c = cell::power_gate(c);
        c = cell::restore(c, pctx).state;
        const auto rd = cell::read(c, pctx);
        r.failures += rd.bit != bit;
      } catch (const Error&) {
        ++r.failures;
      }
    }
  }
  finish(r);
  r.per_sigma_curve.push_back({spec.three_sigma_pct, r.failures, r.trials, r.failure_rate});
  return r;
}

std::vector<double> sigma_range(double from, double to, double step) {
  if (!(step > 0.0) || to < from) {
    throw InvalidInput("sigma range needs from <= to and a positive step");
  }
  std::vector<double> out;
  const auto n = static_cast<std::int64_t>(std::floor((to - from) / step + 1e-9));
  for (std::int64_t i = 0; i <= n; ++i) {
    out.push_back(from + static_cast<double>(i) * step);
  }
  return out;
}

}  // namespace mesram::variation
