#pragma once

// Binary convolution on mapped sub-arrays.
//
// The flattened weight window (index (ic * kh + ky) * kw + kx) is cut into
// chunks of `cols` bits. A tile holds one chunk of up to rows - 1 output
// channels, one channel per row; the last row receives the activation window
// of the current output position. Each (position, weight row) pair is one
// bulk XNOR with padding taps and columns past the window masked off.

#include <cstdint>
#include <vector>

#include "mesram/arch/hierarchy.hpp"
#include "mesram/arch/ledger.hpp"
#include "mesram/bnn/network_file.hpp"
#include "mesram/bnn/tensor.hpp"
#include "mesram/cell/cell.hpp"

namespace mesram::bnn {

/// One filter per output channel, each of the layer's filter_shape().
using Filters = std::vector<BitTensor>;

Filters random_filters(const BnnLayerSpec& layer, std::uint64_t seed, std::uint64_t stream = 0);

struct TilePlan {
  std::uint32_t rows = 0;         // sub-array rows
  std::uint32_t cols = 0;         // sub-array columns
  std::uint32_t weight_rows = 0;  // rows - 1
  std::uint32_t chunks = 0;
  std::uint32_t groups = 0;       // output-channel groups
  std::uint32_t subarrays = 0;    // available sub-arrays

  std::uint32_t tiles() const { return chunks * groups; }
  /// Tile t = group * chunks + chunk runs on sub-array t % subarrays.
  std::uint32_t subarray_of(std::uint32_t tile) const { return tile % subarrays; }
  std::uint32_t channels_in_group(std::uint32_t group, std::uint32_t out_channels) const;
  std::uint32_t columns_in_chunk(std::uint32_t chunk, std::uint32_t window) const;
};

/// Throws MappingError if the tiles exceed the sub-arrays and `tiling` is off.
TilePlan plan_layer(const BnnLayerSpec& layer, const arch::Hierarchy& hierarchy, bool tiling);

struct ConvEngine {
  arch::Hierarchy hierarchy{arch::HierarchySpec{}};
  cell::CellContext ctx;
  bool tiling = false;
};

/// Popcount-based convolution. Every XNOR bit comes from a bulk op and every
/// op is charged to `ledger` (group = sub-array, phase = `phase`). Returns the
/// +-1 dot products 2 * pop - N_valid. Throws ShapeError on shape mismatch.
IntTensor xnor_conv(const BnnLayerSpec& layer, const Filters& filters, const BitTensor& acts,
                    const ConvEngine& engine, arch::Ledger& ledger, std::uint32_t phase = 0);

/// Records the events xnor_conv would record for `layer`, computed in closed
/// form without simulating the arrays.
void charge_layer(const BnnLayerSpec& layer, const ConvEngine& engine, arch::Ledger& ledger,
                  std::uint32_t phase = 0);

/// Direct +-1 integer reference convolution.
IntTensor reference_conv(const BnnLayerSpec& layer, const Filters& filters, const BitTensor& acts);

}  // namespace mesram::bnn
