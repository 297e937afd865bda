#pragma once

// Run configuration: global `seed` and `output_dir` keys plus the [device],
// [costs], [hierarchy], [montecarlo] and [workload] sections. Every key has a
// default; unknown sections and keys are rejected.

#include <cstdint>
#include <string>
#include <string_view>

#include "mesram/arch/hierarchy.hpp"
#include "mesram/cell/cell.hpp"
#include "mesram/device/device_config.hpp"
#include "mesram/variation/campaign.hpp"

namespace mesram::cli {

struct WorkloadConfig {
  std::string network = "alexnet5.net";      // relative names resolve in the fixture dir
  std::string baselines = "baselines.csv";
  double scale = 0.125;
  bool tiling = false;
};

struct RunConfig {
  std::uint64_t seed = 1;
  std::string output_dir = "out";
  device::DeviceConfig device;
  cell::CostTable costs = cell::CostTable::defaults();
  arch::HierarchySpec hierarchy;
  variation::VariationSpec montecarlo;
  variation::MarginModel margins;
  WorkloadConfig workload;

  /// Throws ConfigError (or FormatError for malformed syntax).
  static RunConfig parse(std::string_view text);
  static RunConfig load(const std::string& path);

  /// Replaces the master seed; the Monte-Carlo seed follows it.
  void set_seed(std::uint64_t s);

  cell::CellContext cell_context() const;
};

/// Path of a fixture file shipped with the sources.
std::string fixture_path(std::string_view name);

/// `name` unchanged if it exists as given, else the fixture of that name.
std::string resolve_input(const std::string& name);

}  // namespace mesram::cli
