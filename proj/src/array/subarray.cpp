#include "mesram/array/subarray.hpp"

#include <string>

#include "mesram/common/error.hpp"

namespace mesram::array {

SubArray::SubArray(std::uint32_t rows, std::uint32_t cols, double vdd)
    : rows_(rows), cols_(cols), vdd_(vdd), cells_(static_cast<std::size_t>(rows) * cols) {
  if (rows == 0 || cols == 0) {
    throw InvalidInput("sub-array dimensions must be positive");
  }
  if (!(vdd > 0.0)) {
    throw InvalidInput("sub-array supply must be positive");
  }
}

void SubArray::check_row(std::uint32_t row) const {
  if (row >= rows_) {
    throw AddressError("row " + std::to_string(row) + " out of range (rows = " +
                       std::to_string(rows_) + ")");
  }
}

const cell::CellState& SubArray::cell(std::uint32_t row, std::uint32_t col) const {
  check_row(row);
  if (col >= cols_) {
    throw AddressError("column " + std::to_string(col) + " out of range");
  }
  return cells_[static_cast<std::size_t>(row) * cols_ + col];
}

cell::CellState& SubArray::cell(std::uint32_t row, std::uint32_t col) {
  return const_cast<cell::CellState&>(std::as_const(*this).cell(row, col));
}

BitVector SubArray::row_bits(std::uint32_t row) const {
  check_row(row);
  BitVector out(cols_);
  const auto* base = &cells_[static_cast<std::size_t>(row) * cols_];
  for (std::uint32_t c = 0; c < cols_; ++c) {
    out[c] = static_cast<std::uint8_t>(base[c].bit());
  }
  return out;
}

void SubArray::load_row(std::uint32_t row, std::span<const std::uint8_t> bits) {
  check_row(row);
  if (bits.size() != cols_) {
    throw InvalidInput("row image width does not match sub-array columns");
  }
  auto* base = &cells_[static_cast<std::size_t>(row) * cols_];
  for (std::uint32_t c = 0; c < cols_; ++c) {
    const bool one = bits[c] != 0;
    base[c].q = one ? cell::Node::High : cell::Node::Low;
    base[c].qb = one ? cell::Node::Low : cell::Node::High;
    base[c].mode = cell::Mode::Hold;
  }
}

arch::Event SubArray::write_row(std::uint32_t row, std::span<const std::uint8_t> bits,
                                const cell::CellContext& ctx, arch::OpKind charge_as) {
  check_row(row);
  if (bits.size() != cols_) {
    throw InvalidInput("row image width does not match sub-array columns");
  }
  auto* base = &cells_[static_cast<std::size_t>(row) * cols_];
  arch::Event ev;
  for (std::uint32_t c = 0; c < cols_; ++c) {
    auto w = cell::write(base[c], bits[c] ? 1 : 0, ctx);
    base[c] = w.state;
    ev = w.event;
  }
  ev.op = charge_as;
  ev.count = cols_;
  ev.concurrent = true;
  return ev;
}

arch::Event SubArray::copy_row(std::uint32_t src, std::uint32_t dst,
                               const cell::CellContext& ctx) {
  const auto bits = row_bits(src);
  return write_row(dst, bits, ctx);
}

bool SubArray::operator==(const SubArray& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    return false;
  }
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const auto& a = cells_[i];
    const auto& b = other.cells_[i];
    if (a.q != b.q || a.qb != b.qb || a.mode != b.mode ||
        a.mefet.resistance != b.mefet.resistance ||
        a.mefet.magnetization.m != b.mefet.magnetization.m) {
      return false;
    }
  }
  return true;
}

RblClass evaluate_column(const SubArray& arr, std::uint32_t col,
                         std::span<const std::uint32_t> active_rows) {
  if (active_rows.size() > 2) {
    throw MultiRowActivation("bit-line computing supports exactly two activated rows");
  }
  if (active_rows.size() < 2) {
    throw InvalidInput("bit-line computing needs two activated rows");
  }
  // Row 0 of the pair has RWL = VDD, row 1 has RWL = GND.
  const auto& a = arr.cell(active_rows[0], col);
  const auto& b = arr.cell(active_rows[1], col);
  return evaluate_rbl(1 - a.bit(), 1 - b.bit());
}

BulkResult bulk_logic(const SubArray& arr, std::uint32_t row_a, std::uint32_t row_b,
                      const SenseAmpConfig& cfg, SenseMode mode, const cell::CostTable& costs,
                      std::span<const std::uint8_t> column_mask) {
  if (row_a >= arr.rows() || row_b >= arr.rows()) {
    throw AddressError("operand row out of range");
  }
  if (row_a == row_b) {
    throw AddressError("operand rows must differ");
  }
  if (!column_mask.empty() && column_mask.size() != arr.cols()) {
    throw InvalidInput("column mask width does not match sub-array columns");
  }
  if (mode == SenseMode::Memory) {
    throw ConfigError("bulk logic needs an XOR or XNOR sense configuration");
  }
  cfg.validate(mode);

  BulkResult r;
  r.bits.assign(arr.cols(), 0);
  std::uint64_t active = 0;
  const double vdd = arr.vdd();
  for (std::uint32_t c = 0; c < arr.cols(); ++c) {
    if (!column_mask.empty() && !column_mask[c]) {
      continue;
    }
    const auto& a = arr.cell(row_a, c);
    const auto& b = arr.cell(row_b, c);
    if (!a.valid() || !b.valid()) {
      throw IndeterminateState("bulk op on cells without valid data");
    }
    const auto rbl = evaluate_rbl(a.qb == cell::Node::High ? 1 : 0,
                                  b.qb == cell::Node::High ? 1 : 0);
    r.bits[c] = static_cast<std::uint8_t>(sense_voltage(rbl_voltage(rbl, cfg, vdd), cfg, mode));
    ++active;
  }
  const auto& cost = costs.at(arch::OpKind::Xnor);
  r.event.op = arch::OpKind::Xnor;
  r.event.count = active;
  r.event.unit_delay = cost.delay;
  r.event.unit_energy = cost.pdp;
  r.event.concurrent = true;
  return r;
}

BulkResult bulk_xnor(const SubArray& arr, std::uint32_t row_a, std::uint32_t row_b,
                     const cell::CostTable& costs, std::span<const std::uint8_t> column_mask) {
  return bulk_logic(arr, row_a, row_b, SenseAmpConfig::for_mode(SenseMode::Xnor, arr.vdd()),
                    SenseMode::Xnor, costs, column_mask);
}

BulkResult bulk_xor(const SubArray& arr, std::uint32_t row_a, std::uint32_t row_b,
                    const cell::CostTable& costs, std::span<const std::uint8_t> column_mask) {
  return bulk_logic(arr, row_a, row_b, SenseAmpConfig::for_mode(SenseMode::Xor, arr.vdd()),
                    SenseMode::Xor, costs, column_mask);
}

}  // namespace mesram::array
