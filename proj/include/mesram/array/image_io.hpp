#pragma once

// Memory image formats.
//
// Binary: 16-byte header, then the row-major bit stream packed LSB-first
// (bit i = row * cols + col lives in byte i / 8 at position i % 8).
//   offset 0  char[8]  "MESRAM1\0"
//   offset 8  u32 LE   rows
//   offset 12 u32 LE   cols
//
// Hex text: one line per row, the row's bits packed LSB-first into bytes
// (column 0 is bit 0 of the first byte), each byte as two lowercase hex digits.
// Rows are padded to whole bytes with zero bits. Lines starting with `#` are
// comments; a `rows cols` line comes first.

#include <string>
#include <string_view>

#include "mesram/array/subarray.hpp"

namespace mesram::array {

std::string save_image_binary(const SubArray& arr);
/// Throws FormatError on a bad header or truncated payload.
SubArray load_image_binary(std::string_view bytes, double vdd = SubArray::kDefaultVdd);

std::string save_image_hex(const SubArray& arr);
SubArray load_image_hex(std::string_view text, double vdd = SubArray::kDefaultVdd);

}  // namespace mesram::array
