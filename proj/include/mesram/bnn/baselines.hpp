#pragma once

// Reported energy / time of other in-SRAM accelerators for the same
// workload, expressed as ratios to this design. The ratios are fixture data.
//
// CSV: header `name,relative_energy,relative_time`; an empty field means the
// ratio is unknown.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mesram::bnn {

struct CostBaseline {
  std::string name;
  std::optional<double> relative_time;
  std::optional<double> relative_energy;
};

/// Name of the implicit self entry (ratios 1).
inline constexpr std::string_view kSelfBaseline = "me-sram";

/// Throws FormatError on malformed rows or non-positive ratios.
std::vector<CostBaseline> parse_baselines(std::string_view csv);

struct RatioLine {
  std::string name;
  std::optional<double> energy_ratio;
  std::optional<double> time_ratio;
  std::optional<double> baseline_energy;  // J implied by the ratio
  std::optional<double> baseline_time;    // s
};

/// Ratio report for `ids` (all baselines plus the self entry when empty).
/// Throws LookupError for unknown ids.
std::vector<RatioLine> compare_baselines(double energy, double time,
                                         const std::vector<CostBaseline>& baselines,
                                         const std::vector<std::string>& ids = {});

}  // namespace mesram::bnn
