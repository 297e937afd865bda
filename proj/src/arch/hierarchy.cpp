#include "mesram/arch/hierarchy.hpp"

#include <string>

#include "mesram/common/error.hpp"

namespace mesram::arch {

void HierarchySpec::validate() const {
  if (banks == 0 || matrices_per_bank == 0 || subarray_rows == 0 || subarray_cols == 0 ||
      compute_subarray == 0 || ways == 0) {
    throw SpecError("hierarchy counts must be positive");
  }
  if (static_cast<std::uint64_t>(banks) * bank_capacity != slice_capacity) {
    throw SpecError("banks x bank_capacity must equal slice_capacity");
  }
  if (static_cast<std::uint64_t>(matrices_per_bank) * matrix_capacity != bank_capacity) {
    throw SpecError("matrices_per_bank x matrix_capacity must equal bank_capacity");
  }
  if (subarray_cols % 8 != 0) {
    throw SpecError("sub-array columns must be a multiple of 8");
  }
  if (static_cast<std::uint64_t>(subarray_rows) * subarray_cols / 8 != compute_subarray) {
    throw SpecError("sub-array rows x cols must equal compute_subarray bytes");
  }
  if (matrix_capacity % compute_subarray != 0) {
    throw SpecError("matrix_capacity must be a multiple of compute_subarray");
  }
}

HierarchySpec load_hierarchy_spec(const ConfigSection& section) {
  SectionReader r(section);
  HierarchySpec s;
  auto u32 = [&](std::string_view key, std::uint32_t fallback) {
    const auto v = r.u64(key, fallback);
    if (v > 0xFFFFFFFFull) {
      throw ConfigError("[hierarchy] " + std::string(key) + " out of range");
    }
    return static_cast<std::uint32_t>(v);
  };
  s.slice_capacity = r.u64("slice_capacity", s.slice_capacity);
  s.banks = u32("banks", s.banks);
  s.bank_capacity = r.u64("bank_capacity", s.bank_capacity);
  s.ways = u32("ways", s.ways);
  s.matrices_per_bank = u32("matrices_per_bank", s.matrices_per_bank);
  s.matrix_capacity = r.u64("matrix_capacity", s.matrix_capacity);
  s.compute_subarray = r.u64("compute_subarray", s.compute_subarray);
  s.subarray_rows = u32("subarray_rows", s.subarray_rows);
  s.subarray_cols = u32("subarray_cols", s.subarray_cols);
  r.finish();
  try {
    s.validate();
  } catch (const SpecError& e) {
    throw ConfigError(std::string("[hierarchy] ") + e.what());
  }
  return s;
}

Hierarchy::Hierarchy(const HierarchySpec& spec) : spec_(spec) {
  spec_.validate();
  subarrays_per_matrix_ = static_cast<std::uint32_t>(spec_.matrix_capacity / spec_.compute_subarray);
}

Location Hierarchy::decode(std::uint64_t address) const {
  if (address >= spec_.slice_capacity) {
    throw AddressError("address " + std::to_string(address) + " beyond slice capacity");
  }
  Location loc;
  loc.bank = static_cast<std::uint32_t>(address / spec_.bank_capacity);
  std::uint64_t rest = address % spec_.bank_capacity;
  loc.matrix = static_cast<std::uint32_t>(rest / spec_.matrix_capacity);
  rest %= spec_.matrix_capacity;
  loc.subarray = static_cast<std::uint32_t>(rest / spec_.compute_subarray);
  rest %= spec_.compute_subarray;
  loc.row = static_cast<std::uint32_t>(rest / row_bytes());
  loc.byte = static_cast<std::uint32_t>(rest % row_bytes());
  return loc;
}

std::uint64_t Hierarchy::encode(const Location& loc) const {
  if (loc.bank >= spec_.banks || loc.matrix >= spec_.matrices_per_bank ||
      loc.subarray >= subarrays_per_matrix_ || loc.row >= spec_.subarray_rows ||
      loc.byte >= row_bytes()) {
    throw AddressError("location field out of range");
  }
  return loc.bank * spec_.bank_capacity + loc.matrix * spec_.matrix_capacity +
         loc.subarray * spec_.compute_subarray + static_cast<std::uint64_t>(loc.row) * row_bytes() +
         loc.byte;
}

std::uint32_t Hierarchy::global_subarray(const Location& loc) const {
  return (loc.bank * spec_.matrices_per_bank + loc.matrix) * subarrays_per_matrix_ + loc.subarray;
}

Location Hierarchy::subarray_origin(std::uint32_t global) const {
  if (global >= total_subarrays()) {
    throw AddressError("sub-array index " + std::to_string(global) + " out of range");
  }
  Location loc;
  loc.subarray = global % subarrays_per_matrix_;
  const auto matrix_flat = global / subarrays_per_matrix_;
  loc.matrix = matrix_flat % spec_.matrices_per_bank;
  loc.bank = matrix_flat / spec_.matrices_per_bank;
  return loc;
}

Hierarchy build_hierarchy(const HierarchySpec& spec) { return Hierarchy(spec); }

}  // namespace mesram::arch
