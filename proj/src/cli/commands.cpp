#include "mesram/cli/commands.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "mesram/arch/report.hpp"
#include "mesram/array/subarray.hpp"
#include "mesram/bnn/baselines.hpp"
#include "mesram/bnn/network.hpp"
#include "mesram/common/error.hpp"
#include "mesram/common/io.hpp"
#include "mesram/common/rng.hpp"
#include "mesram/device/calibration.hpp"

namespace mesram::cli {

using nlohmann::ordered_json;

namespace {

std::string cell_text(const ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::string q_text(const cell::CellState& c) {
  if (c.erased()) return "E";
  if (!c.valid()) return "X";
  return c.bit() ? "1" : "0";
}

}  // namespace

std::string Table::csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out += (i ? "," : "") + columns[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += (i ? "," : "") + cell_text(row[i]);
    }
    out += '\n';
  }
  return out;
}

ordered_json Table::json() const {
  auto arr = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < columns.size() && i < row.size(); ++i) {
      obj[columns[i]] = row[i];
    }
    arr.push_back(obj);
  }
  return arr;
}

void CommandResult::add_table(const std::string& stem, const Table& t, Format f) {
  if (f == Format::Csv) {
    files.emplace_back(stem + ".csv", t.csv());
  } else {
    files.emplace_back(stem + ".json", t.json().dump(2) + "\n");
  }
}

void CommandResult::add_json(const std::string& name, const ordered_json& j) {
  files.emplace_back(name, j.dump(2) + "\n");
}

const std::string* CommandResult::file(const std::string& name) const {
  for (const auto& [n, content] : files) {
    if (n == name) {
      return &content;
    }
  }
  return nullptr;
}

void write_outputs(const CommandResult& r, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, content] : r.files) {
    write_file_atomic((std::filesystem::path(dir) / name).string(), content);
  }
}

// ---- device ---------------------------------------------------------------

CommandResult cmd_device(const RunConfig& cfg, const DeviceOptions& opts, Format f) {
  const auto& p = cfg.device.mefet;
  const auto& lp = cfg.device.llg;
  CommandResult r;
  ordered_json summary;

  const double t0 = device::zero_temperature_switching_time(p, lp);
  summary["zero_temperature_switching_time_s"] = t0;
  summary["switching_budget_s"] = device::kSwitchingTimeBudget;
  summary["within_budget"] = t0 <= device::kSwitchingTimeBudget;
  summary["temperature_k"] = lp.temperature;
  summary["thermal_field_std_t"] = lp.temperature > 0.0 ? device::thermal_field_std(lp) : 0.0;

  if (opts.trace) {
    std::vector<device::TraceSample> samples;
    device::MefetState s;
    s.noise.seed = cfg.seed;
    device::WriteOptions wo;
    wo.trace = &samples;
    wo.trace_stride = 10;
    const auto w = device::write_mefet(s, p, lp, 1, wo);
    Table t{{"t_s", "mx", "my", "mz", "gate_v", "resistance_state"}, {}};
    for (const auto& sm : samples) {
      t.rows.push_back({sm.t, sm.m.x(), sm.m.y(), sm.m.z(), sm.gate_v, std::string(sm.state)});
    }
    r.add_table("device_trace", t, f);
    summary["trace"] = {{"write_voltage_v", p.v_g_nominal},
                        {"switching_time_s", w.switching_time},
                        {"delay_s", w.delay},
                        {"steps", w.steps},
                        {"final_state", std::string(device::to_string(w.state.resistance))}};
  }

  if (!opts.sweep.empty()) {
    if (opts.sweep != "vg" && opts.sweep != "temp") {
      throw ConfigError("--sweep expects 'vg' or 'temp'");
    }
    const bool vg = opts.sweep == "vg";
    auto values = opts.values;
    if (values.empty()) {
      values = vg ? std::vector<double>{0.02, 0.06, 0.08, 0.1, 0.15, 0.2}
                  : std::vector<double>{0.0, 77.0, 300.0, 400.0};
    }
    Table t{{"sweep", "value", "switched", "switching_time_s", "delay_s", "final_state",
             "noise_samples", "noise_rms_x_t", "noise_rms_y_t", "noise_rms_z_t"},
            {}};
    for (std::size_t i = 0; i < values.size(); ++i) {
      auto l = lp;
      double v = p.v_g_nominal;
      if (vg) {
        v = values[i];
      } else {
        if (!(values[i] >= 0.0)) {
          throw ConfigError("temperature sweep values must be non-negative");
        }
        l.temperature = values[i];
      }
      device::MefetState s;
      s.noise.seed = hash_keys({cfg.seed, i});
      std::vector<ordered_json> row{opts.sweep, values[i]};
      if (std::abs(v) < p.v_th) {
        // The gate never reaches the chromia threshold, so no ME torque acts.
        row.insert(row.end(), {0, nullptr, nullptr, "ON", 0, 0.0, 0.0, 0.0});
        t.rows.push_back(row);
        continue;
      }
      const auto w = device::write_mefet_voltage(s, p, l, v);
      double sx = 0.0, sy = 0.0, sz = 0.0;
      const auto n = w.state.noise.counter;
      if (l.temperature > 0.0) {
        for (std::uint64_t k = 0; k < n; ++k) {
          const auto b = device::thermal_field(l, s.noise.seed, k);
          sx += b.x() * b.x();
          sy += b.y() * b.y();
          sz += b.z() * b.z();
        }
      }
      const double dn = n ? static_cast<double>(n) : 1.0;
      row.insert(row.end(), {1, w.switching_time, w.delay,
                             std::string(device::to_string(w.state.resistance)), n,
                             std::sqrt(sx / dn), std::sqrt(sy / dn), std::sqrt(sz / dn)});
      t.rows.push_back(row);
    }
    r.add_table("device_sweep", t, f);
  }

  r.add_json("device_summary.json", summary);
  std::ostringstream msg;
  msg << "T=0 switching time " << t0 * 1e12 << " ps (budget 20 ps)";
  r.message = msg.str();
  if (t0 > device::kSwitchingTimeBudget) {
    r.exit_code = kExitCheckFailed;
  }
  return r;
}

// ---- cell -----------------------------------------------------------------

std::string default_cell_script() {
  return "# hold -> write -> read -> store -> gate -> restore -> read\n"
         "hold 1e-9\n"
         "write 0 0\n"
         "read 0\n"
         "store 0\n"
         "gate\n"
         "restore 0\n"
         "read 0\n"
         "expect 0 0\n";
}

CellRun run_cell_script(const std::string& script, const cell::CellContext& ctx,
                        std::uint64_t seed) {
  std::vector<cell::CellState> cells;
  auto ensure_cells = [&](std::size_t n) {
    cells.clear();
    for (std::size_t a = 0; a < n; ++a) {
      cells.push_back(cell::make_cell(0, hash_keys({seed, a})));
    }
  };
  ensure_cells(1);

  CellRun run;
  std::uint64_t cycle = 0;
  bool started = false;
  std::istringstream in(script);
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream tok(line);
    std::vector<std::string> w;
    for (std::string s; tok >> s;) {
      w.push_back(s);
    }
    if (w.empty()) {
      continue;
    }
    auto fail = [&](const std::string& what) -> FormatError {
      return FormatError("script line " + std::to_string(lineno) + ": " + what);
    };
    auto arity = [&](std::size_t lo, std::size_t hi) {
      if (w.size() - 1 < lo || w.size() - 1 > hi) {
        throw fail("wrong number of arguments for '" + w[0] + "'");
      }
    };
    auto addr_at = [&](std::size_t i) -> std::size_t {
      std::uint64_t a = 0;
      try {
        a = parse_u64(w[i], "address");
      } catch (const Error&) {
        throw fail("bad address '" + w[i] + "'");
      }
      if (a >= cells.size()) {
        throw fail("address " + w[i] + " out of range");
      }
      return static_cast<std::size_t>(a);
    };
    auto bit_at = [&](std::size_t i) -> int {
      if (w[i] != "0" && w[i] != "1") {
        throw fail("bit must be 0 or 1");
      }
      return w[i] == "1" ? 1 : 0;
    };
    auto targets = [&](std::size_t i) {
      std::vector<std::size_t> t;
      if (w.size() > i) {
        t.push_back(addr_at(i));
      } else {
        for (std::size_t a = 0; a < cells.size(); ++a) t.push_back(a);
      }
      return t;
    };
    const auto& op = w[0];
    CellTraceRow row;
    row.op = op;

    if (op == "cells") {
      arity(1, 1);
      if (started) {
        throw fail("'cells' must precede every operation");
      }
      std::uint64_t n = 0;
      try {
        n = parse_u64(w[1], "cells");
      } catch (const Error&) {
        throw fail("bad cell count");
      }
      if (n == 0 || n > 65536) {
        throw fail("cell count must lie in [1, 65536]");
      }
      ensure_cells(static_cast<std::size_t>(n));
      continue;
    }
    started = true;
    if (op == "write") {
      arity(2, 2);
      const auto a = addr_at(1);
      const auto res = cell::write(cells[a], bit_at(2), ctx);
      cells[a] = res.state;
      row.addr = std::to_string(a);
      row.delay = res.event.unit_delay;
      row.energy = res.event.energy();
      row.q = q_text(cells[a]);
    } else if (op == "read") {
      arity(1, 1);
      const auto a = addr_at(1);
      const auto res = cell::read(cells[a], ctx);
      row.addr = std::to_string(a);
      row.delay = res.event.unit_delay;
      row.energy = res.event.energy();
      row.q = std::to_string(res.bit);
    } else if (op == "expect") {
      arity(2, 2);
      const auto a = addr_at(1);
      const int want = bit_at(2);
      if (!cells[a].valid() || cells[a].bit() != want) {
        run.failed_expectations.push_back("line " + std::to_string(lineno) + ": cell " +
                                          std::to_string(a) + " holds " + q_text(cells[a]) +
                                          ", expected " + w[2]);
      }
      continue;
    } else if (op == "hold") {
      arity(1, 1);
      double d = 0.0;
      try {
        d = parse_real(w[1], "hold duration");
      } catch (const Error&) {
        throw fail("bad hold duration");
      }
      if (!(d >= 0.0)) {
        throw fail("hold duration must be non-negative");
      }
      row.addr = "*";
      row.delay = d;
      for (const auto& c : cells) {
        row.energy += cell::hold(c, ctx, d).energy();
      }
      row.q = cells.size() == 1 ? q_text(cells[0]) : "*";
    } else if (op == "store" || op == "restore") {
      arity(0, 1);
      const auto t = targets(1);
      for (const auto a : t) {
        arch::Event e;
        if (op == "store") {
          auto res = cell::store(cells[a], ctx);
          cells[a] = res.state;
          e = res.event;
        } else {
          auto res = cell::restore(cells[a], ctx);
          cells[a] = res.state;
          e = res.event;
        }
        row.delay = e.unit_delay;
        row.energy += e.energy();
      }
      row.addr = w.size() > 1 ? std::to_string(t.front()) : "*";
      row.q = t.size() == 1 ? q_text(cells[t.front()]) : "*";
    } else if (op == "gate") {
      arity(0, 0);
      for (auto& c : cells) {
        c = cell::power_gate(c);
      }
      row.addr = "*";
      row.q = "E";
    } else {
      throw fail("unknown operation '" + op + "'");
    }
    row.cycle = cycle++;
    run.rows.push_back(row);
  }
  return run;
}

CommandResult cmd_cell(const RunConfig& cfg, const std::string& script, Format f) {
  const auto run =
      run_cell_script(script.empty() ? default_cell_script() : script, cfg.cell_context(), cfg.seed);
  CommandResult r;
  Table t{{"cycle", "op", "addr", "delay_s", "energy_j", "q"}, {}};
  double energy = 0.0;
  double time = 0.0;
  for (const auto& row : run.rows) {
    t.rows.push_back({row.cycle, row.op, row.addr, row.delay, row.energy, row.q});
    energy += row.energy;
    time += row.delay;
  }
  r.add_table("cell_trace", t, f);
  ordered_json s;
  s["operations"] = run.rows.size();
  s["total_energy_j"] = energy;
  s["total_delay_s"] = time;
  s["failed_expectations"] = run.failed_expectations;
  r.add_json("cell_summary.json", s);
  r.message = std::to_string(run.rows.size()) + " operations, " +
              std::to_string(run.failed_expectations.size()) + " failed expectations";
  if (!run.failed_expectations.empty()) {
    r.exit_code = kExitCheckFailed;
  }
  return r;
}

// ---- compute --------------------------------------------------------------

CommandResult cmd_compute(const RunConfig& cfg, const ComputeOptions& opts, Format f) {
  const auto costs = cfg.costs;
  CommandResult r;
  ordered_json s;
  std::uint64_t mismatches = 0;
  const bool truth = opts.truth_table || opts.images == 0;

  if (truth) {
    array::SubArray arr(2, 4);
    const array::BitVector a{0, 0, 1, 1};
    const array::BitVector b{0, 1, 0, 1};
    arr.load_row(0, a);
    arr.load_row(1, b);
    const auto x = array::bulk_xor(arr, 0, 1, costs);
    const auto xn = array::bulk_xnor(arr, 0, 1, costs);
    Table t{{"a", "b", "rbl", "xor", "xnor"}, {}};
    const std::uint32_t rows[] = {0, 1};
    for (std::uint32_t c = 0; c < 4; ++c) {
      const auto rbl = array::evaluate_column(arr, c, rows);
      t.rows.push_back({a[c], b[c], std::string(array::to_string(rbl)), x.bits[c], xn.bits[c]});
      mismatches += x.bits[c] != (a[c] ^ b[c]);
      mismatches += xn.bits[c] != (1 - (a[c] ^ b[c]));
    }
    r.add_table("truth_table", t, f);
  }

  if (opts.images > 0) {
    const auto& hs = cfg.hierarchy;
    std::uint64_t columns = 0;
    bool unchanged = true;
    arch::Ledger ledger;
    array::SubArray arr(2, hs.subarray_cols);
    for (std::uint64_t i = 0; i < opts.images; ++i) {
      array::BitVector a(hs.subarray_cols), b(hs.subarray_cols);
      for (std::uint32_t c = 0; c < hs.subarray_cols; ++c) {
        a[c] = static_cast<std::uint8_t>(hash_keys({cfg.seed, i, c, 0}) >> 63);
        b[c] = static_cast<std::uint8_t>(hash_keys({cfg.seed, i, c, 1}) >> 63);
      }
      arr.load_row(0, a);
      arr.load_row(1, b);
      const auto before = arr;
      const auto x = array::bulk_xor(arr, 0, 1, costs);
      const auto xn = array::bulk_xnor(arr, 0, 1, costs);
      ledger.record(x.event);
      ledger.record(xn.event);
      for (std::uint32_t c = 0; c < hs.subarray_cols; ++c) {
        mismatches += x.bits[c] != (a[c] ^ b[c]);
        mismatches += xn.bits[c] != (1 - (a[c] ^ b[c]));
      }
      columns += hs.subarray_cols;
      unchanged = unchanged && arr == before;
    }
    s["images"] = opts.images;
    s["columns_checked"] = columns;
    s["memory_unchanged"] = unchanged;
    s["energy_j"] = ledger.total_energy();
    s["latency_serial_s"] = ledger.latency(arch::Schedule::Serial);
    if (!unchanged) {
      mismatches += 1;
    }
  }
  s["mismatches"] = mismatches;
  r.add_json("compute_summary.json", s);
  r.message = std::to_string(mismatches) + " mismatches";
  if (mismatches != 0) {
    r.exit_code = kExitCheckFailed;
  }
  return r;
}

// ---- mc -------------------------------------------------------------------

CommandResult cmd_mc(const RunConfig& cfg, const McOptions& opts, Format f) {
  const auto sigmas = variation::sigma_range(opts.from, opts.to, opts.step);
  for (const double s : sigmas) {
    if (s < 0.0 || s > 70.0 + 1e-9) {
      throw ConfigError("--sigma values must lie in [0, 70]");
    }
  }
  std::vector<variation::Workload> workloads;
  if (opts.workloads.empty()) {
    workloads = {variation::Workload::Read, variation::Workload::Write,
                 variation::Workload::StoreRestore, variation::Workload::XorAllInputs};
  } else {
    for (const auto& w : opts.workloads) {
      try {
        workloads.push_back(variation::parse_workload(w));
      } catch (const LookupError& e) {
        throw ConfigError(e.what());
      }
    }
  }
  const auto ctx = cfg.cell_context();
  CommandResult r;
  Table t{{"sigma_pct", "op", "trials", "failures", "rate"}, {}};
  ordered_json s;
  s["iterations"] = cfg.montecarlo.iterations;
  s["seed"] = cfg.montecarlo.seed;
  s["columns"] = cfg.margins.columns;
  std::vector<std::string> names;
  for (const auto p : cfg.montecarlo.perturbed) {
    names.emplace_back(variation::to_string(p));
  }
  s["perturbed"] = names;
  s["label"] = "behavioral margin model; RSNM/CWLM are model proxies";
  ordered_json results = ordered_json::object();
  bool xor_clean = true;
  for (const auto w : workloads) {
    const auto res = variation::run_sweep(cfg.montecarlo, w, sigmas, cfg.margins, ctx);
    for (const auto& pt : res.per_sigma_curve) {
      t.rows.push_back({pt.sigma_pct, std::string(variation::to_string(w)), pt.trials, pt.failures,
                        pt.rate});
      if (w == variation::Workload::XorAllInputs && pt.sigma_pct <= 30.0 && pt.failures != 0) {
        xor_clean = false;
      }
    }
    ordered_json entry;
    entry["trials"] = res.trials;
    entry["failures"] = res.failures;
    entry["rate"] = res.failure_rate;
    if (!res.margin.counts.empty()) {
      entry[w == variation::Workload::Read ? "rsnm_proxy_mv" : "cwlm_proxy_mv"] = {
          {"lo", res.margin.lo}, {"hi", res.margin.hi}, {"counts", res.margin.counts}};
    }
    results[std::string(variation::to_string(w))] = entry;
  }
  s["results"] = results;

  // Margin collapse: the precharge level forced onto the VDD rail.
  auto collapsed = cfg.margins;
  collapsed.nominal[variation::ParamId::Vref3] = collapsed.vdd;
  auto sanity_spec = cfg.montecarlo;
  sanity_spec.three_sigma_pct = sigmas.front();
  const auto sanity =
      variation::run_campaign(sanity_spec, variation::Workload::XorAllInputs, collapsed, ctx);
  s["sanity_vref3_at_vdd"] = {{"sigma_pct", sigmas.front()},
                              {"trials", sanity.trials},
                              {"failures", sanity.failures},
                              {"rate", sanity.failure_rate}};
  const bool ok = xor_clean && sanity.failures > 0;
  s["check_passed"] = ok;
  r.add_table("mc_curve", t, f);
  r.add_json("mc_summary.json", s);
  r.message = std::string("XOR at 3-sigma <= 30%: ") + (xor_clean ? "no failures" : "FAILURES") +
              "; margin-collapse rate " + format_double(sanity.failure_rate);
  if (!ok) {
    r.exit_code = kExitCheckFailed;
  }
  return r;
}

// ---- bnn ------------------------------------------------------------------

CommandResult cmd_bnn(const RunConfig& cfg, const BnnOptions& opts, Format f) {
  const auto net = resolve_input(opts.network.empty() ? cfg.workload.network : opts.network);
  const double scale = opts.scale > 0.0 ? opts.scale : cfg.workload.scale;
  if (!(scale > 0.0 && scale <= 1.0)) {
    throw ConfigError("--scale must lie in (0, 1]");
  }
  std::vector<bnn::BnnLayerSpec> layers;
  std::vector<bnn::CostBaseline> baselines;
  try {
    layers = bnn::load_network(net);
    baselines = bnn::parse_baselines(read_file(resolve_input(cfg.workload.baselines)));
  } catch (const FormatError& e) {
    throw ConfigError(e.what());
  }
  bnn::ConvEngine engine{arch::build_hierarchy(cfg.hierarchy), cfg.cell_context(),
                         cfg.workload.tiling};
  const auto rep = bnn::run_workload(layers, engine, cfg.seed, scale);

  CommandResult r;
  Table lt{{"layer", "sim_in_h", "sim_in_w", "xnor_count", "energy_j", "latency_s",
            "matches_reference", "ledger_consistent"},
           {}};
  for (const auto& l : rep.layers) {
    lt.rows.push_back({l.layer.name, l.simulated.in_h, l.simulated.in_w, l.xnor_count, l.energy,
                       l.latency, l.matches_reference, l.ledger_consistent});
  }
  r.add_table("bnn_layers", lt, f);

  const auto ratios = bnn::compare_baselines(rep.compute_energy, rep.time, baselines);
  Table bt{{"name", "energy_ratio", "time_ratio", "baseline_energy_j", "baseline_time_s"}, {}};
  for (const auto& l : ratios) {
    bt.rows.push_back({l.name, optional_number(l.energy_ratio), optional_number(l.time_ratio),
                       optional_number(l.baseline_energy), optional_number(l.baseline_time)});
  }
  r.add_table("bnn_baselines", bt, f);

  const auto hierarchy = arch::build_hierarchy(cfg.hierarchy);
  ordered_json s;
  s["network"] = std::filesystem::path(net).filename().string();
  s["scale"] = scale;
  s["layers"] = rep.layers.size();
  s["xnor_count"] = rep.ledger.count(arch::OpKind::Xnor);
  s["compute_energy_j"] = rep.compute_energy;
  s["xnor_energy_j"] = rep.ledger.energy(arch::OpKind::Xnor);
  s["popcount_energy_j"] = rep.ledger.energy(arch::OpKind::Popcount);
  s["stage_energy_j"] = rep.stage_energy;
  s["time_s"] = rep.time;
  s["compute_time_s"] = rep.compute_time;
  s["all_layers_match_reference"] = rep.all_match();
  s["report"] = arch::to_json(
      arch::account(rep.ledger, arch::Schedule::ParallelAcrossSubarrays, &hierarchy));
  r.add_json("bnn_report.json", s);
  r.message = "compute energy " + format_double(rep.compute_energy * 1e6) + " uJ over " +
              std::to_string(rep.layers.size()) + " layers";
  if (!rep.all_match()) {
    r.exit_code = kExitCheckFailed;
  }
  return r;
}

}  // namespace mesram::cli
