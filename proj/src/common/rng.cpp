#include "mesram/common/rng.hpp"

#include <cmath>

namespace mesram {

std::uint64_t hash_keys(std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = 0x6A09E667F3BCC909ull;
  for (const auto k : keys) {
    h = splitmix64(h ^ splitmix64(k + 0x632BE59BD9B4E019ull));
  }
  return h;
}

double uniform_open01(std::uint64_t key) {
  // 53 random mantissa bits, shifted so zero is excluded.
  const auto bits = splitmix64(key) >> 11;
  return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

NormalPair standard_normal_pair(std::uint64_t key) {
  // Marsaglia polar method; rejected attempts advance a per-key counter.
  for (std::uint64_t attempt = 0;; ++attempt) {
    const auto k = splitmix64(key + attempt * 0x9E3779B97F4A7C15ull);
    const double u = 2.0 * uniform_open01(k) - 1.0;
    const double v = 2.0 * uniform_open01(k ^ 0xD1B54A32D192ED03ull) - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      const double f = std::sqrt(-2.0 * std::log(s) / s);
      return {u * f, v * f};
    }
  }
}

double standard_normal(std::uint64_t key) { return standard_normal_pair(key).first; }

}  // namespace mesram
