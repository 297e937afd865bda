#pragma once

#include <cstdint>
#include <vector>

#include "mesram/arch/ledger.hpp"
#include "mesram/bnn/xnor_conv.hpp"

namespace mesram::bnn {

struct NetworkRun {
  std::vector<IntTensor> outputs;
  arch::Ledger ledger;
  double time = 0.0;    // s, parallel across sub-arrays, layers back to back
  double energy = 0.0;  // J, every charged event
};

/// Chained execution: layer i + 1 consumes sign(output of layer i) and must
/// declare that shape as its input. Layer i runs in schedule phase i.
NetworkRun run_network(const std::vector<BnnLayerSpec>& layers, const std::vector<Filters>& filters,
                       const BitTensor& input, const ConvEngine& engine);

struct LayerReport {
  BnnLayerSpec layer;            // full-size geometry
  BnnLayerSpec simulated;        // geometry actually run through the arrays
  std::uint64_t xnor_count = 0;  // full size
  bool matches_reference = false;
  bool ledger_consistent = false;  // simulated events == closed-form events
  double energy = 0.0;             // full size, compute buckets
  double latency = 0.0;            // full size, parallel
};

struct WorkloadReport {
  std::vector<LayerReport> layers;
  arch::Ledger ledger;      // full-size, closed form
  double compute_energy = 0.0;  // xnor + popcount
  double stage_energy = 0.0;    // operand writes, reported separately
  double time = 0.0;            // parallel, all events
  double compute_time = 0.0;    // parallel, xnor events only

  bool all_match() const;
};

/// Runs each layer on its own (seeded random +-1 inputs and weights) at
/// `scale` of its input resolution, checks it against the reference
/// convolution, and charges the full-size op counts in closed form.
WorkloadReport run_workload(const std::vector<BnnLayerSpec>& layers, const ConvEngine& engine,
                            std::uint64_t seed, double scale);

}  // namespace mesram::bnn
