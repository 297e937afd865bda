#include "mesram/array/image_io.hpp"

#include <cstring>
#include <sstream>

#include "mesram/common/config.hpp"
#include "mesram/common/error.hpp"

namespace mesram::array {

namespace {

constexpr char kMagic[8] = {'M', 'E', 'S', 'R', 'A', 'M', '1', '\0'};

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

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string save_image_binary(const SubArray& arr) {
  std::string out(kMagic, sizeof kMagic);
  put_u32(out, arr.rows());
  put_u32(out, arr.cols());
  const std::size_t nbits = static_cast<std::size_t>(arr.rows()) * arr.cols();
  std::string payload((nbits + 7) / 8, '\0');
  std::size_t i = 0;
  for (std::uint32_t r = 0; r < arr.rows(); ++r) {
    for (const auto bit : arr.row_bits(r)) {
      if (bit) {
        payload[i / 8] = static_cast<char>(payload[i / 8] | (1u << (i % 8)));
      }
      ++i;
    }
  }
  return out + payload;
}

SubArray load_image_binary(std::string_view bytes, double vdd) {
  if (bytes.size() < 16 || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
    throw FormatError("not a MESRAM1 memory image");
  }
  const auto rows = get_u32(bytes, 8);
  const auto cols = get_u32(bytes, 12);
  const std::size_t nbits = static_cast<std::size_t>(rows) * cols;
  if (rows == 0 || cols == 0 || bytes.size() != 16 + (nbits + 7) / 8) {
    throw FormatError("memory image payload size does not match header");
  }
  SubArray arr(rows, cols, vdd);
  BitVector row(cols);
  std::size_t i = 0;
  for (std::uint32_t r = 0; r < rows; ++r) {
    for (std::uint32_t c = 0; c < cols; ++c, ++i) {
      row[c] = (static_cast<unsigned char>(bytes[16 + i / 8]) >> (i % 8)) & 1u;
    }
    arr.load_row(r, row);
  }
  return arr;
}

std::string save_image_hex(const SubArray& arr) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::ostringstream out;
  out << "# MESRAM1 hex image\n" << arr.rows() << ' ' << arr.cols() << '\n';
  for (std::uint32_t r = 0; r < arr.rows(); ++r) {
    const auto bits = arr.row_bits(r);
    for (std::size_t b = 0; b < (bits.size() + 7) / 8; ++b) {
      unsigned byte = 0;
      for (std::size_t k = 0; k < 8 && b * 8 + k < bits.size(); ++k) {
        byte |= static_cast<unsigned>(bits[b * 8 + k]) << k;
      }
      out << kDigits[byte >> 4] << kDigits[byte & 0xF];
    }
    out << '\n';
  }
  return out.str();
}

SubArray load_image_hex(std::string_view text, double vdd) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::uint32_t rows = 0, cols = 0;
  bool have_dims = false;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    const auto t = std::string(trim(line));
    if (t.empty() || t.front() == '#') {
      continue;
    }
    if (!have_dims) {
      std::istringstream dims(t);
      if (!(dims >> rows >> cols) || rows == 0 || cols == 0) {
        throw FormatError("hex image: expected 'rows cols' header");
      }
      have_dims = true;
      continue;
    }
    lines.push_back(t);
  }
  if (!have_dims || lines.size() != rows) {
    throw FormatError("hex image: row count does not match header");
  }
  SubArray arr(rows, cols, vdd);
  const std::size_t nbytes = (cols + 7) / 8;
  BitVector row(cols);
  for (std::uint32_t r = 0; r < rows; ++r) {
    const auto& l = lines[r];
    if (l.size() != 2 * nbytes) {
      throw FormatError("hex image: row " + std::to_string(r) + " has wrong width");
    }
    for (std::size_t b = 0; b < nbytes; ++b) {
      const int hi = hex_value(l[2 * b]);
      const int lo = hex_value(l[2 * b + 1]);
      if (hi < 0 || lo < 0) {
        throw FormatError("hex image: invalid digit");
      }
      const unsigned byte = static_cast<unsigned>(hi * 16 + lo);
      for (std::size_t k = 0; k < 8 && b * 8 + k < cols; ++k) {
        row[b * 8 + k] = (byte >> k) & 1u;
      }
    }
    arr.load_row(r, row);
  }
  return arr;
}

}  // namespace mesram::array
