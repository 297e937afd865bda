#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mesram/array/sense_amp.hpp"
#include "mesram/cell/cell.hpp"

namespace mesram::array {

using BitVector = std::vector<std::uint8_t>;  // one 0/1 entry per column

class SubArray {
 public:
  static constexpr double kDefaultVdd = 0.8;

  SubArray(std::uint32_t rows = 256, std::uint32_t cols = 256, double vdd = kDefaultVdd);

  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }
  double vdd() const { return vdd_; }

  const cell::CellState& cell(std::uint32_t row, std::uint32_t col) const;
  cell::CellState& cell(std::uint32_t row, std::uint32_t col);

  /// Stored bits (Q) of a row. Throws AddressError / IndeterminateState.
  BitVector row_bits(std::uint32_t row) const;
  /// Direct image load, bypassing the write path (no ledger charge).
  void load_row(std::uint32_t row, std::span<const std::uint8_t> bits);

  /// Writes every column of `row` through the three-phase cell write. The
  /// columns are written in one cycle: one concurrent event, count = cols.
  arch::Event write_row(std::uint32_t row, std::span<const std::uint8_t> bits,
                        const cell::CellContext& ctx, arch::OpKind charge_as = arch::OpKind::Write);

  /// Copies `src` onto `dst` through read-out and write-back, charged at write
  /// cost. Used to align operands in one column.
  arch::Event copy_row(std::uint32_t src, std::uint32_t dst, const cell::CellContext& ctx);

  bool operator==(const SubArray& other) const;

 private:
  void check_row(std::uint32_t row) const;

  std::uint32_t rows_;
  std::uint32_t cols_;
  double vdd_;
  std::vector<cell::CellState> cells_;
};

struct BulkResult {
  BitVector bits;
  arch::Event event;
};

/// Per-column XNOR of rows `row_a` and `row_b` in one cycle. `column_mask`,
/// if non-empty, selects the bit-lines that are precharged and sensed; masked
/// columns return 0 and are not charged. The array is not modified.
BulkResult bulk_xnor(const SubArray& arr, std::uint32_t row_a, std::uint32_t row_b,
                     const cell::CostTable& costs, std::span<const std::uint8_t> column_mask = {});
BulkResult bulk_xor(const SubArray& arr, std::uint32_t row_a, std::uint32_t row_b,
                    const cell::CostTable& costs, std::span<const std::uint8_t> column_mask = {});

/// Generic bulk op with an explicit sense-amplifier configuration.
BulkResult bulk_logic(const SubArray& arr, std::uint32_t row_a, std::uint32_t row_b,
                      const SenseAmpConfig& cfg, SenseMode mode, const cell::CostTable& costs,
                      std::span<const std::uint8_t> column_mask = {});

/// RBL class of one column with the given rows activated. Exactly two rows are
/// supported; throws MultiRowActivation for more, InvalidInput for fewer.
RblClass evaluate_column(const SubArray& arr, std::uint32_t col,
                         std::span<const std::uint32_t> active_rows);

}  // namespace mesram::array
