#pragma once

// Control-line levels of the bit-cell and the mode each legal combination
// selects.

#include <cstdint>
#include <string_view>

namespace mesram::cell {

enum class RblLevel : std::uint8_t { Vdd, PrechargeVdd, PrechargeHalf, Gnd, Float };
enum class Rail : std::uint8_t { Vdd, Gnd };
enum class PseLevel : std::uint8_t { Vdd, Gnd, Pulse };
enum class SplLevel : std::uint8_t { Vdd, Gnd, Data };
enum class SprLevel : std::uint8_t { Vdd, Gnd, DataBar };

enum class Mode : std::uint8_t { Hold, Read, Write, Store, Restore, Compute };

std::string_view to_string(Mode m);

struct SignalVector {
  RblLevel rbl = RblLevel::Vdd;
  Rail rwl = Rail::Vdd;
  PseLevel pse = PseLevel::Vdd;
  SplLevel spl = SplLevel::Vdd;
  SprLevel spr = SprLevel::Vdd;
  Rail str = Rail::Gnd;
  Rail rstr = Rail::Gnd;

  bool operator==(const SignalVector&) const = default;

  static SignalVector hold();
  static SignalVector read();
  static SignalVector write();
  static SignalVector store();
  static SignalVector restore();
  /// Bit-line computing: the RBL is precharged to VDD/2; one operand row has
  /// its RWL at VDD and the other at ground.
  static SignalVector compute(Rail rwl);
};

/// Mode selected by a signal vector. Throws IllegalSignaling when the vector
/// matches no defined pattern (including STR and RSTR both at VDD).
Mode classify(const SignalVector& sig);

}  // namespace mesram::cell
