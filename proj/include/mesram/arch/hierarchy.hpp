#pragma once

// Cache-slice organization: slice -> banks -> matrices -> sub-arrays -> rows.
// Addresses are byte offsets into the slice.

#include <cstdint>

#include "mesram/common/config.hpp"

namespace mesram::arch {

struct HierarchySpec {
  std::uint64_t slice_capacity = 2560ull * 1024;  // 2.5 MB
  std::uint32_t banks = 80;
  std::uint64_t bank_capacity = 32ull * 1024;
  std::uint32_t ways = 20;  // capacity bookkeeping only
  std::uint32_t matrices_per_bank = 2;
  std::uint64_t matrix_capacity = 16ull * 1024;
  std::uint64_t compute_subarray = 8ull * 1024;
  std::uint32_t subarray_rows = 256;
  std::uint32_t subarray_cols = 256;  // bits per row

  /// Throws SpecError when the capacities do not compose.
  void validate() const;
};

/// Reads `[hierarchy]`; unknown keys rejected.
HierarchySpec load_hierarchy_spec(const ConfigSection& section);

struct Location {
  std::uint32_t bank = 0;
  std::uint32_t matrix = 0;
  std::uint32_t subarray = 0;  // within the matrix
  std::uint32_t row = 0;
  std::uint32_t byte = 0;      // within the row

  bool operator==(const Location&) const = default;
};

class Hierarchy {
 public:
  explicit Hierarchy(const HierarchySpec& spec);

  const HierarchySpec& spec() const { return spec_; }
  std::uint32_t banks() const { return spec_.banks; }
  std::uint32_t matrices() const { return spec_.banks * spec_.matrices_per_bank; }
  std::uint32_t subarrays_per_matrix() const { return subarrays_per_matrix_; }
  std::uint32_t total_subarrays() const { return matrices() * subarrays_per_matrix_; }
  std::uint32_t row_bytes() const { return spec_.subarray_cols / 8; }
  std::uint64_t capacity() const { return spec_.slice_capacity; }

  /// Throws AddressError for addresses beyond capacity.
  Location decode(std::uint64_t address) const;
  /// Throws AddressError for out-of-range fields.
  std::uint64_t encode(const Location& loc) const;

  /// Flat sub-array index in [0, total_subarrays()).
  std::uint32_t global_subarray(const Location& loc) const;
  /// Location of row 0, byte 0 of a flat sub-array index.
  Location subarray_origin(std::uint32_t global) const;

 private:
  HierarchySpec spec_;
  std::uint32_t subarrays_per_matrix_ = 0;
};

/// Validates the spec and builds the addressable tree.
Hierarchy build_hierarchy(const HierarchySpec& spec);

}  // namespace mesram::arch
