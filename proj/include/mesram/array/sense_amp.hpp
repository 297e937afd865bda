#pragma once

// Bit-line computing and the two-comparator sense amplifier.
//
// Two operand rows on one column: row A drives RWL = VDD, row B RWL = GND, and
// the RBL is precharged to VDD/2 (the vref3 level). Each MR conducts iff its
// cell's QB = 1:
//   QB_A = QB_B = 1 : divider between VDD and GND -> VDD/2   (MID)
//   QB_A = QB_B = 0 : nothing conducts, RBL floats at VDD/2  (MID)
//   QB_A = 1, QB_B = 0 : pulled to VDD
//   QB_A = 0, QB_B = 1 : pulled to GND
// SA1 fires for RBL > vref2, SA2 for RBL < vref1; their OR is XOR.
//
// Configuration bits (implementation-defined encoding):
//   en2 en1 s1 s0
//    1   1   0  1   XOR    (both comparators, OR output)
//    1   1   1  1   XNOR   (both comparators, inverted OR output)
//    0   1   0  0   MEMORY (SA1 alone against vref3)

#include <cstdint>
#include <string_view>

namespace mesram::array {

enum class RblClass : std::uint8_t { Gnd, Mid, Vdd };
enum class SenseMode : std::uint8_t { Xor, Xnor, Memory };

std::string_view to_string(RblClass c);
std::string_view to_string(SenseMode m);

struct SenseAmpConfig {
  bool en2 = true;
  bool en1 = true;
  bool s1 = false;
  bool s0 = true;
  double vref1 = 0.2;
  double vref2 = 0.6;
  double vref3 = 0.4;

  /// Default references 0.25, 0.75 and 0.5 of VDD and the mode's control bits.
  static SenseAmpConfig for_mode(SenseMode mode, double vdd);

  /// Mode encoded by the control bits; throws ConfigError for unused codes.
  SenseMode mode() const;
  /// Throws ConfigError if the bits do not encode `mode`, or if a compute mode
  /// is requested without vref1 < vref3 < vref2.
  void validate(SenseMode mode) const;
};

/// RBL class for the operand pair (QB of the RWL=VDD row, QB of the RWL=GND
/// row).
RblClass evaluate_rbl(int a_qb, int b_qb);

/// Nominal RBL voltage of a class: 0, vref3 (precharge level), or vdd.
double rbl_voltage(RblClass c, const SenseAmpConfig& cfg, double vdd);

/// Comparator decision on an analog RBL voltage.
int sense_voltage(double v_rbl, const SenseAmpConfig& cfg, SenseMode mode);

/// Decision on a nominal RBL class.
int sense(RblClass rbl, const SenseAmpConfig& cfg, SenseMode mode, double vdd);

}  // namespace mesram::array
