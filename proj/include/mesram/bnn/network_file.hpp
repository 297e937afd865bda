#pragma once

// Network description: one layer per line,
//   conv <name> <in_c> <out_c> <kh> <kw> <in_h> <in_w> <stride> <pad>
// `#` starts a comment; blank lines are ignored.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mesram/bnn/tensor.hpp"

namespace mesram::bnn {

struct BnnLayerSpec {
  std::string name;
  std::uint32_t in_channels = 1;
  std::uint32_t out_channels = 1;
  std::uint32_t kernel_h = 1;
  std::uint32_t kernel_w = 1;
  std::uint32_t in_h = 1;
  std::uint32_t in_w = 1;
  std::uint32_t stride = 1;
  std::uint32_t padding = 0;

  std::uint32_t out_h() const;
  std::uint32_t out_w() const;
  /// Weight-window length in_channels * kernel_h * kernel_w.
  std::uint32_t window() const { return in_channels * kernel_h * kernel_w; }
  Shape input_shape() const { return {in_channels, in_h, in_w}; }
  Shape output_shape() const { return {out_channels, out_h(), out_w()}; }
  Shape filter_shape() const { return {in_channels, kernel_h, kernel_w}; }

  /// Throws ShapeError unless every dimension and the output size are positive.
  void validate() const;

  /// XNOR evaluations with in-bounds taps only (padding taps are masked).
  std::uint64_t xnor_count() const;
  /// Same layer at a reduced input resolution (at least one kernel extent).
  BnnLayerSpec scaled(double factor) const;
};

/// Throws FormatError with the offending line number.
std::vector<BnnLayerSpec> parse_network(std::string_view text);
std::vector<BnnLayerSpec> load_network(const std::string& path);

}  // namespace mesram::bnn
