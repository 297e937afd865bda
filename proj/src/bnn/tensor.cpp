#include "mesram/bnn/tensor.hpp"

#include <cmath>
#include <cstring>

#include "mesram/common/error.hpp"
#include "mesram/common/rng.hpp"

namespace mesram::bnn {

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
  }
}

std::uint32_t get_u32(std::string_view in, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[at + i])) << (8 * i);
  }
  return v;
}

}  // namespace

BitTensor binarize(const RealTensor& x) {
  BitTensor out(x.shape);
  for (std::size_t i = 0; i < x.data.size(); ++i) {
    if (!std::isfinite(x.data[i])) {
      throw InvalidInput("binarize: non-finite input at index " + std::to_string(i));
    }
    out.data[i] = x.data[i] >= 0.0 ? 1 : 0;
  }
  return out;
}

BitTensor binarize(const IntTensor& x) {
  BitTensor out(x.shape);
  for (std::size_t i = 0; i < x.data.size(); ++i) {
    out.data[i] = x.data[i] >= 0 ? 1 : 0;
  }
  return out;
}

RealTensor decode(const BitTensor& bits) {
  RealTensor out(bits.shape);
  for (std::size_t i = 0; i < bits.data.size(); ++i) {
    out.data[i] = bits.data[i] ? 1.0 : -1.0;
  }
  return out;
}

BitTensor random_bits(Shape shape, std::uint64_t seed, std::uint64_t stream) {
  BitTensor t(shape);
  for (std::size_t i = 0; i < t.data.size(); ++i) {
    t.data[i] = static_cast<std::uint8_t>(hash_keys({seed, stream, i}) >> 63);
  }
  return t;
}

std::string save_tensor(const BitTensor& t) {
  std::string out = "MEBT";
  put_u32(out, t.shape.c);
  put_u32(out, t.shape.h);
  put_u32(out, t.shape.w);
  std::string payload((t.data.size() + 7) / 8, '\0');
  for (std::size_t i = 0; i < t.data.size(); ++i) {
    if (t.data[i]) {
      payload[i / 8] = static_cast<char>(payload[i / 8] | (1u << (i % 8)));
    }
  }
  return out + payload;
}

BitTensor load_tensor(std::string_view bytes) {
  if (bytes.size() < 16 || std::memcmp(bytes.data(), "MEBT", 4) != 0) {
    throw FormatError("not a MEBT tensor");
  }
  const Shape s{get_u32(bytes, 4), get_u32(bytes, 8), get_u32(bytes, 12)};
  if (bytes.size() != 16 + (s.size() + 7) / 8) {
    throw FormatError("tensor payload size does not match header");
  }
  BitTensor t(s);
  for (std::size_t i = 0; i < t.data.size(); ++i) {
    t.data[i] = (static_cast<unsigned char>(bytes[16 + i / 8]) >> (i % 8)) & 1u;
  }
  return t;
}

}  // namespace mesram::bnn
