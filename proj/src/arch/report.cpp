#include "mesram/arch/report.hpp"

#include <map>
#include <sstream>

#include "mesram/common/io.hpp"

namespace mesram::arch {

std::string_view to_string(Schedule s) {
  return s == Schedule::Serial ? "serial" : "parallel-across-subarrays";
}

Report account(const Ledger& ledger, Schedule schedule, const Hierarchy* hierarchy,
               const Overheads& overheads, const HookCounts& hooks) {
  Report r;
  r.schedule = schedule;
  r.energy = ledger.total_energy();
  r.latency = ledger.latency(schedule);

  std::map<OpKind, OpLine> ops;
  std::map<std::uint32_t, LevelLine> per_group;
  std::uint64_t invocations = 0;
  for (const auto& [key, tally] : ledger.buckets()) {
    auto& line = ops[key.op];
    line.op = key.op;
    line.units += tally.units;
    line.invocations += tally.invocations;
    const double e = static_cast<double>(tally.units) * key.unit_energy;
    line.energy += e;
    auto& g = per_group[key.group];
    g.level = "subarray";
    g.id = key.group;
    g.energy += e;
    g.latency += key.concurrent ? static_cast<double>(tally.invocations) * key.unit_delay
                                : static_cast<double>(tally.units) * key.unit_delay;
    invocations += tally.invocations;
  }
  for (const auto& [_, line] : ops) {
    r.ops.push_back(line);
  }

  if (hierarchy) {
    std::map<std::uint32_t, LevelLine> matrices, banks;
    LevelLine slice{"slice", 0, 0.0, 0.0};
    for (const auto& [group, line] : per_group) {
      r.levels.push_back(line);
      const auto origin = hierarchy->subarray_origin(group);
      const auto matrix = origin.bank * hierarchy->spec().matrices_per_bank + origin.matrix;
      auto& m = matrices[matrix];
      m.level = "matrix";
      m.id = matrix;
      m.energy += line.energy;
      m.latency += line.latency;
      auto& b = banks[origin.bank];
      b.level = "bank";
      b.id = origin.bank;
      b.energy += line.energy;
      b.latency += line.latency;
      slice.energy += line.energy;
      slice.latency += line.latency;
    }
    for (const auto& [_, m] : matrices) {
      r.levels.push_back(m);
    }
    for (const auto& [_, b] : banks) {
      r.levels.push_back(b);
    }
    r.levels.push_back(slice);
  }

  const double per_access =
      overheads.subarray_access + overheads.matrix_access + overheads.bank_access;
  r.overhead_energy = static_cast<double>(invocations) * per_access +
                      static_cast<double>(hooks.controller) * overheads.controller_invocation +
                      static_cast<double>(hooks.quantization) * overheads.quantization_invocation +
                      static_cast<double>(hooks.activation) * overheads.activation_invocation;
  return r;
}

nlohmann::ordered_json to_json(const Report& report) {
  nlohmann::ordered_json j;
  j["schedule"] = to_string(report.schedule);
  j["energy_j"] = report.energy;
  j["latency_s"] = report.latency;
  j["overhead_energy_j"] = report.overhead_energy;
  auto& ops = j["ops"] = nlohmann::ordered_json::array();
  for (const auto& op : report.ops) {
    ops.push_back({{"op", to_string(op.op)},
                   {"units", op.units},
                   {"invocations", op.invocations},
                   {"energy_j", op.energy}});
  }
  auto& levels = j["levels"] = nlohmann::ordered_json::array();
  for (const auto& l : report.levels) {
    levels.push_back(
        {{"level", l.level}, {"id", l.id}, {"energy_j", l.energy}, {"latency_s", l.latency}});
  }
  return j;
}

std::string to_csv(const Report& report) {
  std::ostringstream out;
  out << "level,id,energy_j,latency_s\n";
  out << "total,0," << format_double(report.energy) << ',' << format_double(report.latency)
      << '\n';
  for (const auto& l : report.levels) {
    out << l.level << ',' << l.id << ',' << format_double(l.energy) << ','
        << format_double(l.latency) << '\n';
  }
  return out.str();
}

}  // namespace mesram::arch
