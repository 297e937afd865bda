#pragma once

// Channel-major binary and integer tensors. Bit 1 encodes +1, bit 0 encodes -1.
//
// Binary file layout (little-endian):
//   offset 0  char[4]  "MEBT"
//   offset 4  u32      channels
//   offset 8  u32      height
//   offset 12 u32      width
//   offset 16 bits, index (c * height + y) * width + x, packed LSB-first

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mesram::bnn {

struct Shape {
  std::uint32_t c = 0;
  std::uint32_t h = 0;
  std::uint32_t w = 0;

  std::size_t size() const { return static_cast<std::size_t>(c) * h * w; }
  std::size_t index(std::uint32_t ch, std::uint32_t y, std::uint32_t x) const {
    return (static_cast<std::size_t>(ch) * h + y) * w + x;
  }
  bool operator==(const Shape&) const = default;
};

template <typename T>
struct Tensor {
  Shape shape;
  std::vector<T> data;

  Tensor() = default;
  explicit Tensor(Shape s, T fill = T{}) : shape(s), data(s.size(), fill) {}

  T& at(std::uint32_t c, std::uint32_t y, std::uint32_t x) { return data[shape.index(c, y, x)]; }
  const T& at(std::uint32_t c, std::uint32_t y, std::uint32_t x) const {
    return data[shape.index(c, y, x)];
  }
  bool operator==(const Tensor&) const = default;
};

using BitTensor = Tensor<std::uint8_t>;
using IntTensor = Tensor<std::int32_t>;
using RealTensor = Tensor<double>;

/// Sign binarization; x >= 0 maps to bit 1. Throws InvalidInput on NaN/inf.
BitTensor binarize(const RealTensor& x);
/// Same rule on integer pre-activations.
BitTensor binarize(const IntTensor& x);
/// Bits back to -1 / +1.
RealTensor decode(const BitTensor& bits);

/// Uniform random bits, a pure function of (seed, stream).
BitTensor random_bits(Shape shape, std::uint64_t seed, std::uint64_t stream = 0);

std::string save_tensor(const BitTensor& t);
/// Throws FormatError on a bad header or size.
BitTensor load_tensor(std::string_view bytes);

}  // namespace mesram::bnn
