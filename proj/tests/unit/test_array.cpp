#include <gtest/gtest.h>

#include "mesram/array/image_io.hpp"
#include "mesram/array/subarray.hpp"
#include "mesram/common/error.hpp"
#include "mesram/common/rng.hpp"

using namespace mesram;
using namespace mesram::array;

namespace {

BitVector bits_lsb(std::uint32_t value, std::uint32_t width) {
  // Column 0 holds the most significant digit of the binary literal.
  BitVector v(width);
  for (std::uint32_t c = 0; c < width; ++c) {
    v[c] = (value >> (width - 1 - c)) & 1u;
  }
  return v;
}

SubArray random_array(std::uint32_t rows, std::uint32_t cols, std::uint64_t seed) {
  SubArray arr(rows, cols);
  for (std::uint32_t r = 0; r < rows; ++r) {
    BitVector row(cols);
    for (std::uint32_t c = 0; c < cols; ++c) {
      row[c] = hash_keys({seed, r, c}) >> 63;
    }
    arr.load_row(r, row);
  }
  return arr;
}

const cell::CostTable kCosts = cell::CostTable::defaults();

}  // namespace

TEST(EvaluateRbl, DividerTruthTable) {
  EXPECT_EQ(evaluate_rbl(1, 1), RblClass::Mid);
  EXPECT_EQ(evaluate_rbl(0, 0), RblClass::Mid);
  EXPECT_NE(evaluate_rbl(0, 1), RblClass::Mid);
  EXPECT_NE(evaluate_rbl(1, 0), RblClass::Mid);
  EXPECT_NE(evaluate_rbl(0, 1), evaluate_rbl(1, 0));
}

TEST(EvaluateRbl, DecodedOutputIsSymmetric) {
  const double vdd = 0.8;
  for (const auto mode : {SenseMode::Xor, SenseMode::Xnor}) {
    const auto cfg = SenseAmpConfig::for_mode(mode, vdd);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        EXPECT_EQ(sense(evaluate_rbl(a, b), cfg, mode, vdd), sense(evaluate_rbl(b, a), cfg, mode, vdd));
        const int x = a ^ b;
        EXPECT_EQ(sense(evaluate_rbl(a, b), cfg, mode, vdd), mode == SenseMode::Xor ? x : 1 - x);
      }
    }
  }
}

TEST(Sense, DecodesClasses) {
  const double vdd = 0.8;
  const auto x = SenseAmpConfig::for_mode(SenseMode::Xor, vdd);
  const auto xn = SenseAmpConfig::for_mode(SenseMode::Xnor, vdd);
  EXPECT_EQ(sense(RblClass::Mid, x, SenseMode::Xor, vdd), 0);
  EXPECT_EQ(sense(RblClass::Vdd, x, SenseMode::Xor, vdd), 1);
  EXPECT_EQ(sense(RblClass::Gnd, x, SenseMode::Xor, vdd), 1);
  EXPECT_EQ(sense(RblClass::Gnd, xn, SenseMode::Xnor, vdd), 0);
  EXPECT_EQ(sense(RblClass::Mid, xn, SenseMode::Xnor, vdd), 1);
  EXPECT_DOUBLE_EQ(x.vref1, 0.2);
  EXPECT_DOUBLE_EQ(x.vref3, 0.4);
  EXPECT_DOUBLE_EQ(x.vref2, 0.6);
}

TEST(Sense, ConfigBitsAndOrdering) {
  const double vdd = 0.8;
  EXPECT_EQ(SenseAmpConfig::for_mode(SenseMode::Xor, vdd).mode(), SenseMode::Xor);
  EXPECT_EQ(SenseAmpConfig::for_mode(SenseMode::Xnor, vdd).mode(), SenseMode::Xnor);
  EXPECT_EQ(SenseAmpConfig::for_mode(SenseMode::Memory, vdd).mode(), SenseMode::Memory);

  auto bad = SenseAmpConfig::for_mode(SenseMode::Xor, vdd);
  bad.vref1 = 0.5;  // vref1 > vref3
  EXPECT_THROW(bad.validate(SenseMode::Xor), ConfigError);
  auto wrong_bits = SenseAmpConfig::for_mode(SenseMode::Xor, vdd);
  EXPECT_THROW(wrong_bits.validate(SenseMode::Xnor), ConfigError);
  SenseAmpConfig unused;
  unused.en2 = false;
  unused.en1 = false;
  EXPECT_THROW(unused.mode(), ConfigError);
}

TEST(Sense, MemoryModeComparesAgainstMidReference) {
  const double vdd = 0.8;
  const auto m = SenseAmpConfig::for_mode(SenseMode::Memory, vdd);
  EXPECT_EQ(sense_voltage(0.7, m, SenseMode::Memory), 1);
  EXPECT_EQ(sense_voltage(0.1, m, SenseMode::Memory), 0);
}

TEST(Bulk, FourColumnExamples) {
  SubArray arr(2, 4);
  arr.load_row(0, bits_lsb(0b1010, 4));
  arr.load_row(1, bits_lsb(0b0110, 4));
  EXPECT_EQ(bulk_xnor(arr, 0, 1, kCosts).bits, bits_lsb(0b0011, 4));
  arr.load_row(0, bits_lsb(0b1100, 4));
  arr.load_row(1, bits_lsb(0b1010, 4));
  EXPECT_EQ(bulk_xor(arr, 0, 1, kCosts).bits, bits_lsb(0b0110, 4));
}

TEST(Bulk, AllOnesAndEqualRows) {
  SubArray arr(4, 256);
  arr.load_row(0, BitVector(256, 1));
  arr.load_row(1, BitVector(256, 1));
  EXPECT_EQ(bulk_xnor(arr, 0, 1, kCosts).bits, BitVector(256, 1));
  const auto r = random_array(2, 256, 1).row_bits(0);
  arr.load_row(2, r);
  arr.load_row(3, r);
  EXPECT_EQ(bulk_xor(arr, 2, 3, kCosts).bits, BitVector(256, 0));
}

TEST(Bulk, SingleColumn) {
  SubArray arr(2, 1);
  arr.load_row(0, BitVector{1});
  arr.load_row(1, BitVector{0});
  EXPECT_EQ(bulk_xor(arr, 0, 1, kCosts).bits, BitVector{1});
}

TEST(Bulk, MatchesBitwiseOracleOnRandomImages) {
  for (std::uint64_t img = 0; img < 200; ++img) {
    const auto arr = random_array(8, 256, 100 + img);
    const auto ra = static_cast<std::uint32_t>(img % 8);
    const auto rb = static_cast<std::uint32_t>((img * 3 + 1) % 8 == ra ? (ra + 1) % 8 : (img * 3 + 1) % 8);
    const auto a = arr.row_bits(ra);
    const auto b = arr.row_bits(rb);
    const auto x = bulk_xor(arr, ra, rb, kCosts).bits;
    const auto xn = bulk_xnor(arr, ra, rb, kCosts).bits;
    for (std::uint32_t c = 0; c < 256; ++c) {
      ASSERT_EQ(x[c], a[c] ^ b[c]);
      ASSERT_EQ(xn[c], 1 - x[c]);
    }
  }
}

TEST(Bulk, NeverModifiesArray) {
  const auto arr = random_array(16, 64, 5);
  const auto copy = arr;
  for (std::uint32_t r = 1; r < 16; ++r) {
    bulk_xnor(arr, 0, r, kCosts);
    bulk_xor(arr, r, 0, kCosts);
  }
  EXPECT_TRUE(arr == copy);
}

TEST(Bulk, SingleCycleOneEventPerColumn) {
  const auto arr = random_array(2, 256, 6);
  const auto r = bulk_xnor(arr, 0, 1, kCosts);
  EXPECT_EQ(r.event.count, 256u);
  EXPECT_TRUE(r.event.concurrent);
  EXPECT_DOUBLE_EQ(r.event.latency(), 16.7e-12);
  EXPECT_DOUBLE_EQ(r.event.energy(), 256 * kCosts.at(arch::OpKind::Xnor).pdp);
}

TEST(Bulk, ColumnMaskRestrictsChargeAndOutput) {
  const auto arr = random_array(2, 8, 7);
  const BitVector mask{1, 0, 1, 0, 0, 0, 1, 1};
  const auto r = bulk_xor(arr, 0, 1, kCosts, mask);
  const auto full = bulk_xor(arr, 0, 1, kCosts);
  EXPECT_EQ(r.event.count, 4u);
  for (std::size_t c = 0; c < 8; ++c) {
    EXPECT_EQ(r.bits[c], mask[c] ? full.bits[c] : 0);
  }
  EXPECT_THROW(bulk_xor(arr, 0, 1, kCosts, BitVector(3, 1)), InvalidInput);
}

TEST(Bulk, AddressErrors) {
  const auto arr = random_array(4, 8, 8);
  EXPECT_THROW(bulk_xnor(arr, 0, 4, kCosts), AddressError);
  EXPECT_THROW(bulk_xnor(arr, 2, 2, kCosts), AddressError);
  EXPECT_THROW(arr.row_bits(9), AddressError);
  EXPECT_THROW(arr.cell(0, 8), AddressError);
}

TEST(Bulk, MemorySenseModeRejected) {
  const auto arr = random_array(2, 8, 9);
  EXPECT_THROW(bulk_logic(arr, 0, 1, SenseAmpConfig::for_mode(SenseMode::Memory, 0.8),
                          SenseMode::Memory, kCosts),
               ConfigError);
}

TEST(EvaluateColumn, RowActivationCount) {
  const auto arr = random_array(4, 4, 10);
  const std::uint32_t three[] = {0, 1, 2};
  const std::uint32_t one[] = {0};
  const std::uint32_t two[] = {0, 1};
  EXPECT_THROW(evaluate_column(arr, 0, three), MultiRowActivation);
  EXPECT_THROW(evaluate_column(arr, 0, one), InvalidInput);
  const int qa = 1 - arr.cell(0, 0).bit();
  const int qbb = 1 - arr.cell(1, 0).bit();
  EXPECT_EQ(evaluate_column(arr, 0, two), evaluate_rbl(qa, qbb));
}

TEST(SubArray, WriteRowAndCopy) {
  SubArray arr(4, 16);
  const cell::CellContext ctx;
  const auto bits = random_array(1, 16, 11).row_bits(0);
  const auto ev = arr.write_row(1, bits, ctx);
  EXPECT_EQ(arr.row_bits(1), bits);
  EXPECT_EQ(ev.count, 16u);
  EXPECT_TRUE(ev.concurrent);
  EXPECT_DOUBLE_EQ(ev.latency(), 22e-12);
  const auto cp = arr.copy_row(1, 3, ctx);
  EXPECT_EQ(arr.row_bits(3), bits);
  EXPECT_EQ(cp.op, arch::OpKind::Write);
  EXPECT_THROW(arr.load_row(0, BitVector(3)), InvalidInput);
  EXPECT_THROW(SubArray(0, 4), InvalidInput);
}

TEST(ImageIo, BinaryRoundTripAndLayout) {
  const auto arr = random_array(3, 11, 12);
  const auto bytes = save_image_binary(arr);
  ASSERT_EQ(bytes.size(), 16u + (33 + 7) / 8);
  EXPECT_EQ(bytes.substr(0, 8), std::string("MESRAM1\0", 8));
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 3);
  EXPECT_EQ(static_cast<unsigned char>(bytes[12]), 11);
  // Bit i of the row-major stream sits at byte i / 8, position i % 8.
  for (std::uint32_t i = 0; i < 33; ++i) {
    const int bit = (static_cast<unsigned char>(bytes[16 + i / 8]) >> (i % 8)) & 1;
    EXPECT_EQ(bit, arr.cell(i / 11, i % 11).bit());
  }
  EXPECT_TRUE(load_image_binary(bytes) == arr);
}

TEST(ImageIo, BinaryRejectsCorruption) {
  const auto bytes = save_image_binary(random_array(2, 8, 13));
  EXPECT_THROW(load_image_binary(bytes.substr(0, bytes.size() - 1)), FormatError);
  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(load_image_binary(bad), FormatError);
  EXPECT_THROW(load_image_binary("MESRAM"), FormatError);
}

TEST(ImageIo, HexRoundTripAndLayout) {
  SubArray arr(2, 12);
  BitVector r0(12, 0);
  r0[0] = 1;
  r0[9] = 1;
  arr.load_row(0, r0);
  arr.load_row(1, BitVector(12, 1));
  const auto text = save_image_hex(arr);
  EXPECT_NE(text.find("0102\n"), std::string::npos);
  EXPECT_NE(text.find("ff0f"), std::string::npos);
  EXPECT_TRUE(load_image_hex(text) == arr);
  const auto big = random_array(5, 37, 14);
  EXPECT_TRUE(load_image_hex(save_image_hex(big)) == big);
  EXPECT_THROW(load_image_hex("2 8\nzz\n00\n"), FormatError);
  EXPECT_THROW(load_image_hex("2 8\n00\n"), FormatError);
}
