#pragma once

// Subcommand implementations. Each returns its result files in memory so that
// callers can compare payloads; write_outputs() stores them atomically.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mesram/cli/run_config.hpp"

namespace mesram::cli {

enum class Format { Csv, Json };

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::ordered_json>> rows;

  std::string csv() const;
  nlohmann::ordered_json json() const;
};

struct CommandResult {
  int exit_code = kExitOk;
  std::vector<std::pair<std::string, std::string>> files;  // name, content
  std::string message;                                     // human summary

  void add_table(const std::string& stem, const Table& t, Format f);
  void add_json(const std::string& name, const nlohmann::ordered_json& j);
  const std::string* file(const std::string& name) const;
};

void write_outputs(const CommandResult& r, const std::string& dir);

struct DeviceOptions {
  std::string sweep;            // "", "vg" or "temp"
  std::vector<double> values;   // sweep points; defaults per kind when empty
  bool trace = false;
};
CommandResult cmd_device(const RunConfig& cfg, const DeviceOptions& opts, Format f);

// Cell scripts, one operation per line (`#` comments):
//   cells N              number of cells (first line only, default 1)
//   write ADDR BIT
//   read ADDR
//   expect ADDR BIT      check only, no trace row
//   hold SECONDS
//   store [ADDR]         all cells when ADDR is omitted
//   gate                 power-gate every cell
//   restore [ADDR]
struct CellTraceRow {
  std::uint64_t cycle = 0;
  std::string op;
  std::string addr;  // "*" for whole-array operations
  double delay = 0.0;
  double energy = 0.0;
  std::string q;     // Q after the op: "0", "1", "E" (erased); read reports the sensed bit
};

struct CellRun {
  std::vector<CellTraceRow> rows;
  std::vector<std::string> failed_expectations;
};

/// Throws FormatError for syntax errors; model errors propagate.
CellRun run_cell_script(const std::string& script, const cell::CellContext& ctx,
                        std::uint64_t seed);

/// hold, write 0, read, store, gate, restore, read, expect 0.
std::string default_cell_script();

CommandResult cmd_cell(const RunConfig& cfg, const std::string& script, Format f);

struct ComputeOptions {
  bool truth_table = false;
  std::uint64_t images = 0;  // random 256-column image pairs to check
};
CommandResult cmd_compute(const RunConfig& cfg, const ComputeOptions& opts, Format f);

struct McOptions {
  double from = 0.0;
  double to = 70.0;
  double step = 10.0;
  std::vector<std::string> workloads;  // default: all
};
CommandResult cmd_mc(const RunConfig& cfg, const McOptions& opts, Format f);

struct BnnOptions {
  std::string network;  // default: [workload] network
  double scale = 0.0;   // default: [workload] scale
};
CommandResult cmd_bnn(const RunConfig& cfg, const BnnOptions& opts, Format f);

}  // namespace mesram::cli
