#include "mesram/cell/signals.hpp"

#include "mesram/common/error.hpp"

namespace mesram::cell {

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Hold:
      return "hold";
    case Mode::Read:
      return "read";
    case Mode::Write:
      return "write";
    case Mode::Store:
      return "store";
    case Mode::Restore:
      return "restore";
    case Mode::Compute:
      return "compute";
  }
  return "unknown";
}

SignalVector SignalVector::hold() { return {}; }

SignalVector SignalVector::read() {
  SignalVector s;
  s.rbl = RblLevel::PrechargeVdd;
  s.rwl = Rail::Gnd;
  return s;
}

SignalVector SignalVector::write() {
  SignalVector s;
  s.pse = PseLevel::Pulse;
  s.spl = SplLevel::Data;
  s.spr = SprLevel::DataBar;
  return s;
}

SignalVector SignalVector::store() {
  SignalVector s;
  s.str = Rail::Vdd;
  return s;
}

SignalVector SignalVector::restore() {
  SignalVector s;
  s.pse = PseLevel::Pulse;
  s.spl = SplLevel::Gnd;
  s.spr = SprLevel::Gnd;
  s.rstr = Rail::Vdd;
  return s;
}

SignalVector SignalVector::compute(Rail rwl) {
  SignalVector s;
  s.rbl = RblLevel::PrechargeHalf;
  s.rwl = rwl;
  return s;
}

Mode classify(const SignalVector& sig) {
  if (sig.str == Rail::Vdd && sig.rstr == Rail::Vdd) {
    throw IllegalSignaling("STR and RSTR both asserted");
  }
  if (sig == SignalVector::hold()) {
    return Mode::Hold;
  }
  if (sig == SignalVector::read()) {
    return Mode::Read;
  }
  if (sig == SignalVector::write()) {
    return Mode::Write;
  }
  if (sig == SignalVector::store()) {
    return Mode::Store;
  }
  if (sig == SignalVector::restore()) {
    return Mode::Restore;
  }
  if (sig == SignalVector::compute(Rail::Vdd) || sig == SignalVector::compute(Rail::Gnd)) {
    return Mode::Compute;
  }
  throw IllegalSignaling("signal vector matches no operating mode");
}

}  // namespace mesram::cell
