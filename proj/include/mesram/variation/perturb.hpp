#pragma once

// Gaussian process variation on the behavioral margin model. Every draw is
// keyed by (seed, trial, instance, parameter), so a campaign is independent of
// evaluation order and the same draws are reused across sigma values.

#include <array>
#include <cstdint>
#include <set>
#include <string_view>

#include "mesram/common/config.hpp"

namespace mesram::variation {

enum class ParamId : std::uint8_t {
  Width,
  Length,
  Vth,
  ROn,
  ROff,
  Vref1,
  Vref2,
  Vref3,
  RblDividerGain,
  RRef,
};
inline constexpr std::size_t kParamCount = 10;

std::string_view to_string(ParamId p);
/// Accepts the names printed by to_string ("width", "r_on", "vref1", ...).
ParamId parse_param_id(std::string_view name);

/// Every parameter id.
std::set<ParamId> all_params();

struct VariationSpec {
  double three_sigma_pct = 30.0;
  std::set<ParamId> perturbed = all_params();
  std::uint64_t iterations = 1000;
  std::uint64_t seed = 1;

  /// Throws InvalidInput outside 0 <= three_sigma_pct <= 70 or with zero
  /// iterations.
  void validate() const;
  double sigma() const { return three_sigma_pct / 3.0 / 100.0; }
};

/// Parameter values of one device instance. Width, length and vth are
/// relative proxies (nominal 1); the rest are absolute.
struct ParamSet {
  std::array<double, kParamCount> value{};

  double& operator[](ParamId p) { return value[static_cast<std::size_t>(p)]; }
  double operator[](ParamId p) const { return value[static_cast<std::size_t>(p)]; }
  bool operator==(const ParamSet&) const = default;
};

/// Nominal set of the default cell: proxies at 1, MEFET resistances, reference
/// (r_on + r_off) / 2, vrefs at 0.25, 0.75, 0.5 of vdd.
ParamSet nominal_params(double vdd = 0.8, double r_on = 1.05e3, double r_off = 63.4e6);

/// Standard normal draw behind parameter `p` of (trial, instance).
double unit_draw(std::uint64_t seed, std::uint64_t trial, std::uint64_t instance, ParamId p);

/// delta = sigma * unit_draw, or 0 if `p` is not perturbed.
double delta(const VariationSpec& spec, std::uint64_t trial, std::uint64_t instance, ParamId p);

/// Multiplier 1 + delta, clamped so that no parameter turns non-positive.
double multiplier(const VariationSpec& spec, std::uint64_t trial, std::uint64_t instance,
                  ParamId p);

/// Each selected parameter multiplied by its (1 + delta).
ParamSet perturb(const ParamSet& nominal, const VariationSpec& spec, std::uint64_t trial,
                 std::uint64_t instance = 0);

inline constexpr double kMinMultiplier = 1e-3;

/// Reads `three_sigma_pct`, `iterations`, `seed`, `perturbed` (comma list).
/// Remaining keys are left to the caller.
VariationSpec read_variation_spec(SectionReader& reader);

}  // namespace mesram::variation
