#include "mesram/bnn/network_file.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mesram/common/config.hpp"
#include "mesram/common/error.hpp"
#include "mesram/common/io.hpp"

namespace mesram::bnn {

namespace {

// Output positions along one axis whose tap at offset k lands inside the input.
std::uint64_t valid_positions(std::uint32_t in, std::uint32_t out, std::uint32_t stride,
                              std::uint32_t pad, std::uint32_t k) {
  std::uint64_t n = 0;
  for (std::uint32_t o = 0; o < out; ++o) {
    const auto i = static_cast<std::int64_t>(o) * stride - pad + k;
    n += (i >= 0 && i < static_cast<std::int64_t>(in));
  }
  return n;
}

}  // namespace

std::uint32_t BnnLayerSpec::out_h() const {
  const auto span = static_cast<std::int64_t>(in_h) + 2 * padding - kernel_h;
  return span < 0 || stride == 0 ? 0 : static_cast<std::uint32_t>(span / stride + 1);
}

std::uint32_t BnnLayerSpec::out_w() const {
  const auto span = static_cast<std::int64_t>(in_w) + 2 * padding - kernel_w;
  return span < 0 || stride == 0 ? 0 : static_cast<std::uint32_t>(span / stride + 1);
}

void BnnLayerSpec::validate() const {
  if (in_channels == 0 || out_channels == 0 || kernel_h == 0 || kernel_w == 0 || in_h == 0 ||
      in_w == 0 || stride == 0) {
    throw ShapeError("layer '" + name + "': dimensions and stride must be positive");
  }
  if (out_h() == 0 || out_w() == 0) {
    throw ShapeError("layer '" + name + "': kernel larger than padded input");
  }
}

std::uint64_t BnnLayerSpec::xnor_count() const {
  std::uint64_t taps = 0;
  for (std::uint32_t ky = 0; ky < kernel_h; ++ky) {
    const auto rows = valid_positions(in_h, out_h(), stride, padding, ky);
    for (std::uint32_t kx = 0; kx < kernel_w; ++kx) {
      taps += rows * valid_positions(in_w, out_w(), stride, padding, kx);
    }
  }
  return taps * in_channels * out_channels;
}

BnnLayerSpec BnnLayerSpec::scaled(double factor) const {
  if (!(factor > 0.0 && factor <= 1.0)) {
    throw InvalidInput("scale factor must lie in (0, 1]");
  }
  auto s = *this;
  s.in_h = std::max<std::uint32_t>(kernel_h,
                                   static_cast<std::uint32_t>(std::lround(in_h * factor)));
  s.in_w = std::max<std::uint32_t>(kernel_w,
                                   static_cast<std::uint32_t>(std::lround(in_w * factor)));
  return s;
}

std::vector<BnnLayerSpec> parse_network(std::string_view text) {
  std::vector<BnnLayerSpec> layers;
  std::istringstream in{std::string(text)};
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    if (trim(line).empty()) {
      continue;
    }
    std::istringstream fields(line);
    std::string type;
    BnnLayerSpec l;
    fields >> type >> l.name;
    std::int64_t v[8];
    for (auto& x : v) {
      if (!(fields >> x) || x < 0 || x > 0xFFFFFFFFll) {
        throw FormatError("network line " + std::to_string(lineno) +
                          ": expected 8 non-negative integer dimensions");
      }
    }
    std::string extra;
    if (fields >> extra) {
      throw FormatError("network line " + std::to_string(lineno) + ": trailing field '" + extra + "'");
    }
    if (type != "conv") {
      throw FormatError("network line " + std::to_string(lineno) + ": unsupported layer type '" +
                        type + "'");
    }
    l.in_channels = static_cast<std::uint32_t>(v[0]);
    l.out_channels = static_cast<std::uint32_t>(v[1]);
    l.kernel_h = static_cast<std::uint32_t>(v[2]);
    l.kernel_w = static_cast<std::uint32_t>(v[3]);
    l.in_h = static_cast<std::uint32_t>(v[4]);
    l.in_w = static_cast<std::uint32_t>(v[5]);
    l.stride = static_cast<std::uint32_t>(v[6]);
    l.padding = static_cast<std::uint32_t>(v[7]);
    try {
      l.validate();
    } catch (const ShapeError& e) {
      throw FormatError("network line " + std::to_string(lineno) + ": " + e.what());
    }
    layers.push_back(l);
  }
  return layers;
}

std::vector<BnnLayerSpec> load_network(const std::string& path) {
  return parse_network(read_file(path));
}

}  // namespace mesram::bnn
