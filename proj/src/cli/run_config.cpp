#include "mesram/cli/run_config.hpp"

#include <filesystem>

#include "mesram/common/error.hpp"
#include "mesram/common/io.hpp"

#ifndef MESRAM_FIXTURE_DIR
#define MESRAM_FIXTURE_DIR "fixtures"
#endif

namespace mesram::cli {

namespace {

constexpr std::string_view kSections[] = {"", "device", "costs", "hierarchy", "montecarlo",
                                          "workload"};

}  // namespace

RunConfig RunConfig::parse(std::string_view text) {
  const auto doc = ConfigDocument::parse(text);
  for (const auto& name : doc.section_names()) {
    bool known = false;
    for (const auto k : kSections) {
      known = known || name == k;
    }
    if (!known) {
      throw ConfigError("unknown config section [" + name + "]");
    }
  }

  RunConfig cfg;
  {
    SectionReader g(doc.section(""));
    cfg.seed = g.u64("seed", cfg.seed);
    cfg.output_dir = g.text("output_dir", cfg.output_dir);
    g.finish();
  }
  cfg.device = device::load_device_config(doc.section("device"));
  cfg.costs = cell::CostTable::load(doc.section("costs"));
  cfg.hierarchy = arch::load_hierarchy_spec(doc.section("hierarchy"));
  {
    // The Monte-Carlo seed defaults to the master seed.
    auto section = doc.section("montecarlo");
    if (!section.has("seed")) {
      section.set("seed", std::to_string(cfg.seed));
    }
    SectionReader mc(section);
    cfg.montecarlo = variation::read_variation_spec(mc);
    cfg.margins = variation::MarginModel::load(mc, 0.8);
    mc.finish();
  }
  {
    SectionReader w(doc.section("workload"));
    cfg.workload.network = w.text("network", cfg.workload.network);
    cfg.workload.baselines = w.text("baselines", cfg.workload.baselines);
    cfg.workload.scale = w.real("scale", cfg.workload.scale);
    cfg.workload.tiling = w.flag("tiling", cfg.workload.tiling);
    w.finish();
    if (!(cfg.workload.scale > 0.0 && cfg.workload.scale <= 1.0)) {
      throw ConfigError("[workload] scale must lie in (0, 1]");
    }
  }
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return parse(text);
}

void RunConfig::set_seed(std::uint64_t s) {
  seed = s;
  montecarlo.seed = s;
}

cell::CellContext RunConfig::cell_context() const {
  cell::CellContext ctx;
  ctx.mefet = device.mefet;
  ctx.llg = device.llg;
  ctx.costs = costs;
  return ctx;
}

std::string fixture_path(std::string_view name) {
  return (std::filesystem::path(MESRAM_FIXTURE_DIR) / std::string(name)).string();
}

std::string resolve_input(const std::string& name) {
  if (std::filesystem::exists(name)) {
    return name;
  }
  const auto f = fixture_path(name);
  if (std::filesystem::exists(f)) {
    return f;
  }
  throw ConfigError("input file '" + name + "' not found");
}

}  // namespace mesram::cli
