#include "mesram/bnn/baselines.hpp"

#include <sstream>

#include "mesram/common/config.hpp"
#include "mesram/common/error.hpp"

namespace mesram::bnn {

namespace {

std::optional<double> ratio_field(std::string_view text, int lineno) {
  const auto t = trim(text);
  if (t.empty()) {
    return std::nullopt;
  }
  double v = 0.0;
  try {
    v = parse_real(t, "ratio");
  } catch (const Error& e) {
    throw FormatError("baselines line " + std::to_string(lineno) + ": " + e.what());
  }
  if (!(v > 0.0)) {
    throw FormatError("baselines line " + std::to_string(lineno) + ": ratios must be positive");
  }
  return v;
}

RatioLine line_for(const CostBaseline& b, double energy, double time) {
  RatioLine l;
  l.name = b.name;
  l.energy_ratio = b.relative_energy;
  l.time_ratio = b.relative_time;
  if (b.relative_energy) {
    l.baseline_energy = *b.relative_energy * energy;
  }
  if (b.relative_time) {
    l.baseline_time = *b.relative_time * time;
  }
  return l;
}

}  // namespace

std::vector<CostBaseline> parse_baselines(std::string_view csv) {
  std::istringstream in{std::string(csv)};
  std::string line;
  std::vector<CostBaseline> out;
  bool header = false;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (trim(line).empty() || trim(line).front() == '#') {
      continue;
    }
    const auto f = split(line, ',');
    if (!header) {
      if (f.size() != 3 || trim(f[0]) != "name" || trim(f[1]) != "relative_energy" ||
          trim(f[2]) != "relative_time") {
        throw FormatError("baselines: expected header name,relative_energy,relative_time");
      }
      header = true;
      continue;
    }
    if (f.size() != 3 || trim(f[0]).empty()) {
      throw FormatError("baselines line " + std::to_string(lineno) + ": expected 3 fields");
    }
    CostBaseline b;
    b.name = std::string(trim(f[0]));
    b.relative_energy = ratio_field(f[1], lineno);
    b.relative_time = ratio_field(f[2], lineno);
    out.push_back(b);
  }
  if (!header) {
    throw FormatError("baselines: missing header");
  }
  return out;
}

std::vector<RatioLine> compare_baselines(double energy, double time,
                                         const std::vector<CostBaseline>& baselines,
                                         const std::vector<std::string>& ids) {
  const CostBaseline self{std::string(kSelfBaseline), 1.0, 1.0};
  std::vector<RatioLine> out;
  if (ids.empty()) {
    out.push_back(line_for(self, energy, time));
    for (const auto& b : baselines) {
      out.push_back(line_for(b, energy, time));
    }
    return out;
  }
  for (const auto& id : ids) {
    if (id == kSelfBaseline) {
      out.push_back(line_for(self, energy, time));
      continue;
    }
    bool found = false;
    for (const auto& b : baselines) {
      if (b.name == id) {
        out.push_back(line_for(b, energy, time));
        found = true;
        break;
      }
    }
    if (!found) {
      throw LookupError("unknown baseline '" + id + "'");
    }
  }
  return out;
}

}  // namespace mesram::bnn
