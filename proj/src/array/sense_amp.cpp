#include "mesram/array/sense_amp.hpp"

#include "mesram/common/error.hpp"

namespace mesram::array {

std::string_view to_string(RblClass c) {
  switch (c) {
    case RblClass::Gnd:
      return "GND";
    case RblClass::Mid:
      return "MID";
    case RblClass::Vdd:
      return "VDD";
  }
  return "?";
}

std::string_view to_string(SenseMode m) {
  switch (m) {
    case SenseMode::Xor:
      return "xor";
    case SenseMode::Xnor:
      return "xnor";
    case SenseMode::Memory:
      return "memory";
  }
  return "?";
}

SenseAmpConfig SenseAmpConfig::for_mode(SenseMode mode, double vdd) {
  SenseAmpConfig c;
  c.vref1 = 0.25 * vdd;
  c.vref2 = 0.75 * vdd;
  c.vref3 = 0.5 * vdd;
  switch (mode) {
    case SenseMode::Xor:
      c.en2 = true, c.en1 = true, c.s1 = false, c.s0 = true;
      break;
    case SenseMode::Xnor:
      c.en2 = true, c.en1 = true, c.s1 = true, c.s0 = true;
      break;
    case SenseMode::Memory:
      c.en2 = false, c.en1 = true, c.s1 = false, c.s0 = false;
      break;
  }
  return c;
}

SenseMode SenseAmpConfig::mode() const {
  if (en2 && en1 && s0) {
    return s1 ? SenseMode::Xnor : SenseMode::Xor;
  }
  if (!en2 && en1 && !s1 && !s0) {
    return SenseMode::Memory;
  }
  throw ConfigError("sense amplifier control bits encode no mode");
}

void SenseAmpConfig::validate(SenseMode requested) const {
  if (mode() != requested) {
    throw ConfigError("sense amplifier bits do not select the requested mode");
  }
  if (requested != SenseMode::Memory && !(vref1 < vref3 && vref3 < vref2)) {
    throw ConfigError("X(N)OR sensing requires vref1 < vref3 < vref2");
  }
}

RblClass evaluate_rbl(int a_qb, int b_qb) {
  if (a_qb == b_qb) {
    return RblClass::Mid;
  }
  return a_qb ? RblClass::Vdd : RblClass::Gnd;
}

double rbl_voltage(RblClass c, const SenseAmpConfig& cfg, double vdd) {
  switch (c) {
    case RblClass::Gnd:
      return 0.0;
    case RblClass::Mid:
      return cfg.vref3;
    case RblClass::Vdd:
      return vdd;
  }
  return 0.0;
}

int sense_voltage(double v_rbl, const SenseAmpConfig& cfg, SenseMode mode) {
  if (mode == SenseMode::Memory) {
    return v_rbl > cfg.vref3 ? 1 : 0;
  }
  const bool sa1 = v_rbl > cfg.vref2;
  const bool sa2 = v_rbl < cfg.vref1;
  const int x = (sa1 || sa2) ? 1 : 0;
  return mode == SenseMode::Xor ? x : 1 - x;
}

int sense(RblClass rbl, const SenseAmpConfig& cfg, SenseMode mode, double vdd) {
  cfg.validate(mode);
  return sense_voltage(rbl_voltage(rbl, cfg, vdd), cfg, mode);
}

}  // namespace mesram::array
