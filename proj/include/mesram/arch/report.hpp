#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mesram/arch/hierarchy.hpp"
#include "mesram/arch/ledger.hpp"

namespace mesram::arch {

/// Costs outside the per-operation cost table. All default to zero and are
/// reported separately from the operation energy.
struct Overheads {
  double subarray_access = 0.0;  // J per event, per level of the H-tree
  double matrix_access = 0.0;
  double bank_access = 0.0;
  double controller_invocation = 0.0;  // J per invocation
  double quantization_invocation = 0.0;
  double activation_invocation = 0.0;
};

struct HookCounts {
  std::uint64_t controller = 0;
  std::uint64_t quantization = 0;
  std::uint64_t activation = 0;
};

struct OpLine {
  OpKind op;
  std::uint64_t units = 0;
  std::uint64_t invocations = 0;
  double energy = 0.0;
};

struct LevelLine {
  std::string level;  // "subarray", "matrix", "bank", "slice"
  std::uint32_t id = 0;
  double energy = 0.0;
  double latency = 0.0;  // serial time spent in this unit
};

struct Report {
  Schedule schedule = Schedule::Serial;
  double energy = 0.0;   // operation energy
  double latency = 0.0;
  double overhead_energy = 0.0;
  std::vector<OpLine> ops;
  std::vector<LevelLine> levels;
};

/// Totals a ledger under a schedule. With a hierarchy, event groups are taken as
/// flat sub-array indices and rolled up to matrix, bank and slice.
Report account(const Ledger& ledger, Schedule schedule, const Hierarchy* hierarchy = nullptr,
               const Overheads& overheads = {}, const HookCounts& hooks = {});

nlohmann::ordered_json to_json(const Report& report);
std::string to_csv(const Report& report);

std::string_view to_string(Schedule s);

}  // namespace mesram::arch
