#include "mesram/bnn/network.hpp"

#include <string>

#include "mesram/common/error.hpp"

namespace mesram::bnn {

namespace {

double parallel_latency_of(const arch::Ledger& ledger, arch::OpKind op) {
  arch::Ledger only;
  for (const auto& [key, tally] : ledger.buckets()) {
    if (key.op == op) {
      arch::Event e;
      e.op = key.op;
      e.count = tally.units;
      e.unit_delay = key.unit_delay;
      e.unit_energy = key.unit_energy;
      e.concurrent = key.concurrent;
      e.group = key.group;
      e.phase = key.phase;
      only.record_aggregate(e, tally.invocations);
    }
  }
  return only.latency(arch::Schedule::ParallelAcrossSubarrays);
}

bool same_buckets(const arch::Ledger& a, const arch::Ledger& b) {
  if (a.buckets().size() != b.buckets().size()) {
    return false;
  }
  auto it = b.buckets().begin();
  for (const auto& [key, tally] : a.buckets()) {
    if (key.tie() != it->first.tie() || tally.units != it->second.units ||
        tally.invocations != it->second.invocations) {
      return false;
    }
    ++it;
  }
  return true;
}

}  // namespace

NetworkRun run_network(const std::vector<BnnLayerSpec>& layers, const std::vector<Filters>& filters,
                       const BitTensor& input, const ConvEngine& engine) {
  if (filters.size() != layers.size()) {
    throw ShapeError("one filter set per layer required");
  }
  NetworkRun run;
  BitTensor acts = input;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (!(acts.shape == layers[i].input_shape())) {
      throw ShapeError("layer '" + layers[i].name + "' input shape does not match the previous output");
    }
    auto out = xnor_conv(layers[i], filters[i], acts, engine, run.ledger, static_cast<std::uint32_t>(i));
    acts = binarize(out);
    run.outputs.push_back(std::move(out));
  }
  run.time = run.ledger.latency(arch::Schedule::ParallelAcrossSubarrays);
  run.energy = run.ledger.total_energy();
  return run;
}

bool WorkloadReport::all_match() const {
  for (const auto& l : layers) {
    if (!l.matches_reference || !l.ledger_consistent) {
      return false;
    }
  }
  return true;
}

WorkloadReport run_workload(const std::vector<BnnLayerSpec>& layers, const ConvEngine& engine,
                            std::uint64_t seed, double scale) {
  WorkloadReport rep;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto phase = static_cast<std::uint32_t>(i);
    LayerReport lr;
    lr.layer = layers[i];
    lr.simulated = layers[i].scaled(scale);
    lr.simulated.validate();

    const auto acts = random_bits(lr.simulated.input_shape(), seed, 2 * i);
    const auto filters = random_filters(lr.simulated, seed, 2 * i + 1);
    arch::Ledger simulated;
    arch::Ledger closed_form;
    const auto out = xnor_conv(lr.simulated, filters, acts, engine, simulated, phase);
    charge_layer(lr.simulated, engine, closed_form, phase);
    lr.matches_reference = out == reference_conv(lr.simulated, filters, acts);
    lr.ledger_consistent = same_buckets(simulated, closed_form);

    arch::Ledger full;
    charge_layer(lr.layer, engine, full, phase);
    lr.xnor_count = full.count(arch::OpKind::Xnor);
    lr.energy = full.energy(arch::OpKind::Xnor) + full.energy(arch::OpKind::Popcount);
    lr.latency = full.latency(arch::Schedule::ParallelAcrossSubarrays);
    rep.ledger.merge(full);
    rep.layers.push_back(lr);
  }
  rep.compute_energy =
      rep.ledger.energy(arch::OpKind::Xnor) + rep.ledger.energy(arch::OpKind::Popcount);
  rep.stage_energy = rep.ledger.energy(arch::OpKind::Stage);
  rep.time = rep.ledger.latency(arch::Schedule::ParallelAcrossSubarrays);
  rep.compute_time = parallel_latency_of(rep.ledger, arch::OpKind::Xnor);
  return rep;
}

}  // namespace mesram::bnn
