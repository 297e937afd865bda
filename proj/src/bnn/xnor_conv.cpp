#include "mesram/bnn/xnor_conv.hpp"

#include <algorithm>
#include <string>

#include "mesram/array/subarray.hpp"
#include "mesram/common/error.hpp"

namespace mesram::bnn {

namespace {

struct Tap {
  std::uint32_t ic, ky, kx;
};

Tap tap_of(const BnnLayerSpec& l, std::uint32_t n) {
  return {n / (l.kernel_h * l.kernel_w), (n / l.kernel_w) % l.kernel_h, n % l.kernel_w};
}

// Input coordinate of a tap, or -1 for padding.
std::int64_t input_coord(std::uint32_t o, std::uint32_t stride, std::uint32_t pad, std::uint32_t k,
                         std::uint32_t extent) {
  const auto i = static_cast<std::int64_t>(o) * stride - pad + k;
  return (i >= 0 && i < static_cast<std::int64_t>(extent)) ? i : -1;
}

std::uint64_t valid_positions(std::uint32_t in, std::uint32_t out, std::uint32_t stride,
                              std::uint32_t pad, std::uint32_t k) {
  std::uint64_t n = 0;
  for (std::uint32_t o = 0; o < out; ++o) {
    n += input_coord(o, stride, pad, k, in) >= 0;
  }
  return n;
}

void check_shapes(const BnnLayerSpec& layer, const Filters& filters, const BitTensor& acts) {
  layer.validate();
  if (!(acts.shape == layer.input_shape())) {
    throw ShapeError("layer '" + layer.name + "': activation shape does not match layer");
  }
  if (filters.size() != layer.out_channels) {
    throw ShapeError("layer '" + layer.name + "': expected " + std::to_string(layer.out_channels) +
                     " filters");
  }
  for (const auto& f : filters) {
    if (!(f.shape == layer.filter_shape())) {
      throw ShapeError("layer '" + layer.name + "': filter shape does not match layer");
    }
  }
}

arch::Event stage_event(const cell::CostTable& costs, std::uint32_t cols, std::uint32_t group,
                        std::uint32_t phase) {
  const auto& w = costs.at(arch::OpKind::Write);
  arch::Event e;
  e.op = arch::OpKind::Stage;
  e.count = cols;
  e.unit_delay = w.delay;
  e.unit_energy = w.pdp;
  e.concurrent = true;
  e.group = group;
  e.phase = phase;
  return e;
}

arch::Event xnor_event(const cell::CostTable& costs, std::uint64_t active, std::uint32_t group,
                       std::uint32_t phase) {
  const auto& x = costs.at(arch::OpKind::Xnor);
  arch::Event e;
  e.op = arch::OpKind::Xnor;
  e.count = active;
  e.unit_delay = x.delay;
  e.unit_energy = x.pdp;
  e.concurrent = true;
  e.group = group;
  e.phase = phase;
  return e;
}

arch::Event popcount_event(const cell::CostTable& costs, std::uint64_t bits, std::uint32_t group,
                           std::uint32_t phase) {
  arch::Event e;
  e.op = arch::OpKind::Popcount;
  e.count = bits;
  e.unit_energy = costs.popcount_energy_per_bit;
  e.concurrent = true;
  e.group = group;
  e.phase = phase;
  return e;
}

}  // namespace

Filters random_filters(const BnnLayerSpec& layer, std::uint64_t seed, std::uint64_t stream) {
  Filters f;
  f.reserve(layer.out_channels);
  for (std::uint32_t o = 0; o < layer.out_channels; ++o) {
    f.push_back(random_bits(layer.filter_shape(), seed, (stream << 20) + o));
  }
  return f;
}

std::uint32_t TilePlan::channels_in_group(std::uint32_t group, std::uint32_t out_channels) const {
  return std::min(weight_rows, out_channels - group * weight_rows);
}

std::uint32_t TilePlan::columns_in_chunk(std::uint32_t chunk, std::uint32_t window) const {
  return std::min(cols, window - chunk * cols);
}

TilePlan plan_layer(const BnnLayerSpec& layer, const arch::Hierarchy& hierarchy, bool tiling) {
  layer.validate();
  TilePlan p;
  p.rows = hierarchy.spec().subarray_rows;
  p.cols = hierarchy.spec().subarray_cols;
  if (p.rows < 2) {
    throw MappingError("sub-arrays need at least two rows for bit-line computing");
  }
  p.weight_rows = p.rows - 1;
  p.chunks = (layer.window() + p.cols - 1) / p.cols;
  p.groups = (layer.out_channels + p.weight_rows - 1) / p.weight_rows;
  p.subarrays = hierarchy.total_subarrays();
  if (p.tiles() > p.subarrays && !tiling) {
    throw MappingError("layer '" + layer.name + "' needs " + std::to_string(p.tiles()) +
                       " sub-array tiles, " + std::to_string(p.subarrays) +
                       " available (enable tiling)");
  }
  return p;
}

IntTensor xnor_conv(const BnnLayerSpec& layer, const Filters& filters, const BitTensor& acts,
                    const ConvEngine& engine, arch::Ledger& ledger, std::uint32_t phase) {
  check_shapes(layer, filters, acts);
  const auto plan = plan_layer(layer, engine.hierarchy, engine.tiling);
  const auto& costs = engine.ctx.costs;
  const std::uint32_t oh = layer.out_h();
  const std::uint32_t ow = layer.out_w();
  const std::uint32_t window = layer.window();
  const std::uint32_t act_row = plan.rows - 1;

  std::vector<std::int64_t> pop(static_cast<std::size_t>(layer.out_channels) * oh * ow, 0);
  std::vector<std::int64_t> valid(static_cast<std::size_t>(oh) * ow, 0);

  array::SubArray sa(plan.rows, plan.cols);
  array::BitVector row(plan.cols);
  array::BitVector mask(plan.cols);

  for (std::uint32_t g = 0; g < plan.groups; ++g) {
    const std::uint32_t nch = plan.channels_in_group(g, layer.out_channels);
    for (std::uint32_t k = 0; k < plan.chunks; ++k) {
      const std::uint32_t tile = g * plan.chunks + k;
      const std::uint32_t sub = plan.subarray_of(tile);
      const std::uint32_t ncols = plan.columns_in_chunk(k, window);

      for (std::uint32_t j = 0; j < nch; ++j) {
        const auto& f = filters[g * plan.weight_rows + j];
        std::fill(row.begin(), row.end(), 0);
        for (std::uint32_t c = 0; c < ncols; ++c) {
          row[c] = f.data[k * plan.cols + c];
        }
        auto e = sa.write_row(j, row, engine.ctx, arch::OpKind::Stage);
        e.group = sub;
        e.phase = phase;
        ledger.record(e);
      }

      for (std::uint32_t oy = 0; oy < oh; ++oy) {
        for (std::uint32_t ox = 0; ox < ow; ++ox) {
          std::fill(row.begin(), row.end(), 0);
          std::fill(mask.begin(), mask.end(), 0);
          std::int64_t active = 0;
          for (std::uint32_t c = 0; c < ncols; ++c) {
            const auto t = tap_of(layer, k * plan.cols + c);
            const auto iy = input_coord(oy, layer.stride, layer.padding, t.ky, layer.in_h);
            const auto ix = input_coord(ox, layer.stride, layer.padding, t.kx, layer.in_w);
            if (iy < 0 || ix < 0) {
              continue;
            }
            row[c] = acts.at(t.ic, static_cast<std::uint32_t>(iy), static_cast<std::uint32_t>(ix));
            mask[c] = 1;
            ++active;
          }
          if (g == 0) {
            valid[static_cast<std::size_t>(oy) * ow + ox] += active;
          }
          auto e = sa.write_row(act_row, row, engine.ctx, arch::OpKind::Stage);
          e.group = sub;
          e.phase = phase;
          ledger.record(e);

          for (std::uint32_t j = 0; j < nch; ++j) {
            auto r = array::bulk_xnor(sa, j, act_row, costs, mask);
            r.event.group = sub;
            r.event.phase = phase;
            ledger.record(r.event);
            std::int64_t ones = 0;
            for (std::uint32_t c = 0; c < ncols; ++c) {
              ones += r.bits[c];
            }
            ledger.record(popcount_event(costs, r.event.count, sub, phase));
            const std::uint32_t o = g * plan.weight_rows + j;
            pop[(static_cast<std::size_t>(o) * oh + oy) * ow + ox] += ones;
          }
        }
      }
    }
  }

  IntTensor out(layer.output_shape());
  for (std::uint32_t o = 0; o < layer.out_channels; ++o) {
    for (std::size_t p = 0; p < valid.size(); ++p) {
      const auto i = static_cast<std::size_t>(o) * valid.size() + p;
      out.data[i] = static_cast<std::int32_t>(2 * pop[i] - valid[p]);
    }
  }
  return out;
}

void charge_layer(const BnnLayerSpec& layer, const ConvEngine& engine, arch::Ledger& ledger,
                  std::uint32_t phase) {
  const auto plan = plan_layer(layer, engine.hierarchy, engine.tiling);
  const auto& costs = engine.ctx.costs;
  const std::uint64_t positions = static_cast<std::uint64_t>(layer.out_h()) * layer.out_w();
  const std::uint32_t window = layer.window();

  std::vector<std::uint64_t> ry(layer.kernel_h), rx(layer.kernel_w);
  for (std::uint32_t k = 0; k < layer.kernel_h; ++k) {
    ry[k] = valid_positions(layer.in_h, layer.out_h(), layer.stride, layer.padding, k);
  }
  for (std::uint32_t k = 0; k < layer.kernel_w; ++k) {
    rx[k] = valid_positions(layer.in_w, layer.out_w(), layer.stride, layer.padding, k);
  }

  for (std::uint32_t g = 0; g < plan.groups; ++g) {
    const std::uint32_t nch = plan.channels_in_group(g, layer.out_channels);
    for (std::uint32_t k = 0; k < plan.chunks; ++k) {
      const std::uint32_t tile = g * plan.chunks + k;
      const std::uint32_t sub = plan.subarray_of(tile);
      const std::uint32_t ncols = plan.columns_in_chunk(k, window);
      // In-bounds taps of this chunk summed over all output positions.
      std::uint64_t taps = 0;
      for (std::uint32_t c = 0; c < ncols; ++c) {
        const auto t = tap_of(layer, k * plan.cols + c);
        taps += ry[t.ky] * rx[t.kx];
      }
      const std::uint64_t stagings = nch + positions;
      auto stage = stage_event(costs, plan.cols, sub, phase);
      stage.count *= stagings;
      ledger.record_aggregate(stage, stagings);
      const std::uint64_t bulk_ops = positions * nch;
      const std::uint64_t bits = taps * nch;
      ledger.record_aggregate(xnor_event(costs, bits, sub, phase), bulk_ops);
      ledger.record_aggregate(popcount_event(costs, bits, sub, phase), bulk_ops);
    }
  }
}

IntTensor reference_conv(const BnnLayerSpec& layer, const Filters& filters, const BitTensor& acts) {
  check_shapes(layer, filters, acts);
  IntTensor out(layer.output_shape());
  for (std::uint32_t o = 0; o < layer.out_channels; ++o) {
    for (std::uint32_t oy = 0; oy < layer.out_h(); ++oy) {
      for (std::uint32_t ox = 0; ox < layer.out_w(); ++ox) {
        std::int32_t acc = 0;
        for (std::uint32_t ic = 0; ic < layer.in_channels; ++ic) {
          for (std::uint32_t ky = 0; ky < layer.kernel_h; ++ky) {
            const auto iy = input_coord(oy, layer.stride, layer.padding, ky, layer.in_h);
            if (iy < 0) continue;
            for (std::uint32_t kx = 0; kx < layer.kernel_w; ++kx) {
              const auto ix = input_coord(ox, layer.stride, layer.padding, kx, layer.in_w);
              if (ix < 0) continue;
              const int w = filters[o].at(ic, ky, kx) ? 1 : -1;
              const int a = acts.at(ic, static_cast<std::uint32_t>(iy), static_cast<std::uint32_t>(ix)) ? 1 : -1;
              acc += w * a;
            }
          }
        }
        out.at(o, oy, ox) = acc;
      }
    }
  }
  return out;
}

}  // namespace mesram::bnn
