#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "mesram/cli/commands.hpp"
#include "mesram/common/config.hpp"
#include "mesram/common/error.hpp"
#include "mesram/common/io.hpp"

using namespace mesram;

namespace {

// "A..B" -> (A, B); a single number gives A = B.
std::pair<double, double> parse_sigma_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const double v = parse_real(text, "--sigma");
    return {v, v};
  }
  return {parse_real(text.substr(0, dots), "--sigma"), parse_real(text.substr(dots + 2), "--sigma")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ME-SRAM device, cell, array and workload simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string format = "csv";
  app.add_option("--config", config_path, "INI run configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "master seed");
  app.add_option("--out", out_dir, "output directory (default: output_dir from the config)");
  app.add_option("--format", format, "table format")->check(CLI::IsMember({"csv", "json"}));

  cli::DeviceOptions dev;
  std::vector<std::string> sweep_args;
  auto* device = app.add_subcommand("device", "MEFET switching studies");
  device->add_option("--sweep", sweep_args, "vg|temp followed by optional values")->expected(1, -1);
  device->add_flag("--trace", dev.trace, "write a trajectory of one +Vg write");

  std::string script_path;
  auto* cellcmd = app.add_subcommand("cell", "bit-cell operation script");
  cellcmd->add_option("--script", script_path, "script file (default: the store/restore scenario)");

  cli::ComputeOptions comp;
  auto* compute = app.add_subcommand("compute", "bit-line X(N)OR");
  compute->add_flag("--truth-table", comp.truth_table, "emit the 4-row truth table");
  compute->add_option("--images", comp.images, "random operand image pairs to check");

  cli::McOptions mc;
  std::string sigma = "0..70";
  std::vector<std::string> workloads;
  auto* mccmd = app.add_subcommand("mc", "Monte-Carlo variation campaign");
  mccmd->add_option("--sigma", sigma, "3-sigma range in percent, A..B");
  mccmd->add_option("--step", mc.step, "3-sigma step in percent");
  mccmd->add_option("--workload", workloads, "read, write, store_restore, xor (default: all)");

  cli::BnnOptions bn;
  auto* bnncmd = app.add_subcommand("bnn", "binarized network workload");
  bnncmd->add_option("--net", bn.network, "network file");
  bnncmd->add_option("--scale", bn.scale, "simulated input resolution fraction");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? cli::kExitOk : cli::kExitConfig;
  }

  try {
    auto cfg = config_path.empty() ? cli::RunConfig{} : cli::RunConfig::load(config_path);
    if (seed) {
      cfg.set_seed(*seed);
    }
    const auto fmt = format == "json" ? cli::Format::Json : cli::Format::Csv;
    cli::CommandResult result;
    if (device->parsed()) {
      if (!sweep_args.empty()) {
        dev.sweep = sweep_args.front();
        for (std::size_t i = 1; i < sweep_args.size(); ++i) {
          dev.values.push_back(parse_real(sweep_args[i], "--sweep value"));
        }
      }
      result = cli::cmd_device(cfg, dev, fmt);
    } else if (cellcmd->parsed()) {
      std::string script;
      if (!script_path.empty()) {
        try {
          script = read_file(script_path);
        } catch (const Error& e) {
          throw ConfigError(e.what());
        }
      }
      result = cli::cmd_cell(cfg, script, fmt);
    } else if (compute->parsed()) {
      result = cli::cmd_compute(cfg, comp, fmt);
    } else if (mccmd->parsed()) {
      std::tie(mc.from, mc.to) = parse_sigma_range(sigma);
      mc.workloads = workloads;
      result = cli::cmd_mc(cfg, mc, fmt);
    } else {
      result = cli::cmd_bnn(cfg, bn, fmt);
    }
    cli::write_outputs(result, out_dir.empty() ? cfg.output_dir : out_dir);
    std::cout << result.message << "\n";
    return result.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cli::kExitConfig;
  } catch (const FormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return cli::kExitConfig;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return cli::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitCheckFailed;
  }
}
