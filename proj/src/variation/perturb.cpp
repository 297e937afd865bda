#include "mesram/variation/perturb.hpp"

#include <algorithm>

#include "mesram/common/error.hpp"
#include "mesram/common/rng.hpp"

namespace mesram::variation {

namespace {

constexpr std::array<std::string_view, kParamCount> kNames = {
    "width", "length", "vth", "r_on", "r_off",
    "vref1", "vref2", "vref3", "rbl_divider_gain", "r_ref",
};

constexpr std::uint64_t kVariationStream = 0x7661726961746e21ull;

}  // namespace

std::string_view to_string(ParamId p) { return kNames[static_cast<std::size_t>(p)]; }

ParamId parse_param_id(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) {
      return static_cast<ParamId>(i);
    }
  }
  throw LookupError("unknown variation parameter '" + std::string(name) + "'");
}

std::set<ParamId> all_params() {
  std::set<ParamId> s;
  for (std::size_t i = 0; i < kParamCount; ++i) {
    s.insert(static_cast<ParamId>(i));
  }
  return s;
}

void VariationSpec::validate() const {
  if (!(three_sigma_pct >= 0.0 && three_sigma_pct <= 70.0)) {
    throw InvalidInput("three_sigma_pct must lie in [0, 70]");
  }
  if (iterations == 0) {
    throw InvalidInput("iterations must be at least 1");
  }
}

ParamSet nominal_params(double vdd, double r_on, double r_off) {
  ParamSet s;
  s[ParamId::Width] = 1.0;
  s[ParamId::Length] = 1.0;
  s[ParamId::Vth] = 1.0;
  s[ParamId::ROn] = r_on;
  s[ParamId::ROff] = r_off;
  s[ParamId::Vref1] = 0.25 * vdd;
  s[ParamId::Vref2] = 0.75 * vdd;
  s[ParamId::Vref3] = 0.5 * vdd;
  s[ParamId::RblDividerGain] = 1.0;
  s[ParamId::RRef] = 0.5 * (r_on + r_off);
  return s;
}

double unit_draw(std::uint64_t seed, std::uint64_t trial, std::uint64_t instance, ParamId p) {
  return standard_normal(
      hash_keys({kVariationStream, seed, trial, instance, static_cast<std::uint64_t>(p)}));
}

double delta(const VariationSpec& spec, std::uint64_t trial, std::uint64_t instance, ParamId p) {
  if (spec.three_sigma_pct == 0.0 || spec.perturbed.count(p) == 0) {
    return 0.0;
  }
  return spec.sigma() * unit_draw(spec.seed, trial, instance, p);
}

double multiplier(const VariationSpec& spec, std::uint64_t trial, std::uint64_t instance,
                  ParamId p) {
  return std::max(kMinMultiplier, 1.0 + delta(spec, trial, instance, p));
}

ParamSet perturb(const ParamSet& nominal, const VariationSpec& spec, std::uint64_t trial,
                 std::uint64_t instance) {
  ParamSet out = nominal;
  for (std::size_t i = 0; i < kParamCount; ++i) {
    out.value[i] *= multiplier(spec, trial, instance, static_cast<ParamId>(i));
  }
  return out;
}

VariationSpec read_variation_spec(SectionReader& reader) {
  VariationSpec spec;
  spec.three_sigma_pct = reader.real("three_sigma_pct", spec.three_sigma_pct);
  spec.iterations = reader.u64("iterations", spec.iterations);
  spec.seed = reader.u64("seed", spec.seed);
  std::vector<std::string> names;
  for (const auto p : spec.perturbed) {
    names.emplace_back(to_string(p));
  }
  names = reader.list("perturbed", names);
  spec.perturbed.clear();
  for (const auto& n : names) {
    try {
      spec.perturbed.insert(parse_param_id(n));
    } catch (const LookupError& e) {
      throw ConfigError(e.what());
    }
  }
  try {
    spec.validate();
  } catch (const InvalidInput& e) {
    throw ConfigError(std::string("[montecarlo] ") + e.what());
  }
  return spec;
}

}  // namespace mesram::variation
