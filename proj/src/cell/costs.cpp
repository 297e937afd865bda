#include "mesram/cell/costs.hpp"

#include <cmath>
#include <string>

#include "mesram/common/error.hpp"

namespace mesram::cell {

double OpCost::pdp_mismatch() const { return std::abs(delay * power - pdp) / pdp; }

CostTable CostTable::defaults() {
  CostTable t;
  t.set({OpKind::Read, 14.8e-12, 11.9e-6, 176.12e-18});
  t.set({OpKind::Write, 22.0e-12, 1.2e-6, 26.6e-18});
  t.set({OpKind::Store, 0.11e-9, 8.1e-6, 0.89e-15});
  t.set({OpKind::Restore, 0.05e-9, 3.25e-6, 0.16e-15});
  t.set({OpKind::Xnor, kXnorDelay, kXnorEnergy / kXnorDelay, kXnorEnergy});
  return t;
}

CostTable CostTable::load(const ConfigSection& section) {
  SectionReader r(section);
  CostTable t = defaults();
  for (const auto op : {OpKind::Read, OpKind::Write, OpKind::Store, OpKind::Restore,
                        OpKind::Xnor}) {
    auto row = t.at(op);
    const std::string name(arch::to_string(op));
    row.delay = r.real(name + "_delay", row.delay);
    row.power = r.real(name + "_power", row.power);
    row.pdp = r.real(name + "_pdp", row.pdp);
    if (!(row.delay > 0.0) || !(row.power > 0.0) || !(row.pdp > 0.0)) {
      throw ConfigError("[costs] " + name + " delay, power and pdp must be positive");
    }
    t.set(row);
  }
  t.popcount_energy_per_bit = r.real("popcount_energy_per_bit", t.popcount_energy_per_bit);
  t.hold_power = r.real("hold_power", t.hold_power);
  if (t.popcount_energy_per_bit < 0.0 || t.hold_power < 0.0) {
    throw ConfigError("[costs] popcount_energy_per_bit and hold_power must be non-negative");
  }
  r.finish();
  return t;
}

const OpCost& CostTable::at(OpKind op) const {
  const auto it = rows_.find(op);
  if (it == rows_.end()) {
    throw LookupError("no cost row for operation '" + std::string(arch::to_string(op)) + "'");
  }
  return it->second;
}

std::vector<OpCost> CostTable::rows() const {
  std::vector<OpCost> out;
  for (const auto& [_, row] : rows_) {
    out.push_back(row);
  }
  return out;
}

OpCost op_cost(const CostTable& table, std::string_view op) {
  return table.at(arch::parse_op_kind(op));
}

MarginReport me_sram_margins() { return {288.0, 288.0, 374.8}; }
MarginReport six_t_sram_margins() { return {288.0, 126.5, 261.7}; }

OpCost six_t_sram_cost(OpKind op) {
  switch (op) {
    case OpKind::Read:
      return {OpKind::Read, 24.0e-12, 10.34e-6, 284.16e-18};
    case OpKind::Write:
      return {OpKind::Write, 7.0e-12, 4.0e-6, 28.0e-18};
    default:
      throw LookupError("6T SRAM baseline has only read and write rows");
  }
}

std::vector<CheckpointBaseline> checkpoint_baselines() {
  return {
      {"mram-nvsram-a",
       {OpKind::Store, 1.86e-9, 2.39e-6, 4.44e-15},
       {OpKind::Restore, 0.373e-9, 0.64e-6, 0.23e-15}},
      {"mram-nvsram-b",
       {OpKind::Store, 1.81e-9, 4.69e-6, 8.48e-15},
       {OpKind::Restore, 0.085e-9, 9.32e-6, 0.79e-15}},
  };
}

}  // namespace mesram::cell
