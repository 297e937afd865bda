#include "mesram/arch/ledger.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "mesram/common/error.hpp"

namespace mesram::arch {

namespace {

constexpr std::array<std::pair<OpKind, std::string_view>, 8> kNames{{
    {OpKind::Read, "read"},
    {OpKind::Write, "write"},
    {OpKind::Store, "store"},
    {OpKind::Restore, "restore"},
    {OpKind::Xnor, "xnor"},
    {OpKind::Popcount, "popcount"},
    {OpKind::Hold, "hold"},
    {OpKind::Stage, "stage"},
}};

double bucket_latency(const Ledger::Key& k, const Ledger::Tally& t) {
  return k.concurrent ? static_cast<double>(t.invocations) * k.unit_delay
                      : static_cast<double>(t.units) * k.unit_delay;
}

}  // namespace

std::string_view to_string(OpKind op) {
  for (const auto& [kind, name] : kNames) {
    if (kind == op) {
      return name;
    }
  }
  return "unknown";
}

OpKind parse_op_kind(std::string_view name) {
  for (const auto& [kind, n] : kNames) {
    if (n == name) {
      return kind;
    }
  }
  throw LookupError("unknown operation '" + std::string(name) + "'");
}

void Ledger::record(const Event& e) {
  auto& tally = buckets_[{e.phase, e.group, e.op, e.unit_delay, e.unit_energy, e.concurrent}];
  tally.units += e.count;
  tally.invocations += 1;
  ++events_;
}

void Ledger::record_aggregate(const Event& e, std::uint64_t invocations) {
  if (invocations == 0) {
    return;
  }
  auto& tally = buckets_[{e.phase, e.group, e.op, e.unit_delay, e.unit_energy, e.concurrent}];
  tally.units += e.count;
  tally.invocations += invocations;
  events_ += invocations;
}

void Ledger::merge(const Ledger& other) {
  for (const auto& [key, tally] : other.buckets_) {
    auto& mine = buckets_[key];
    mine.units += tally.units;
    mine.invocations += tally.invocations;
  }
  events_ += other.events_;
}

double Ledger::total_energy() const {
  double total = 0.0;
  for (const auto& [key, tally] : buckets_) {
    total += static_cast<double>(tally.units) * key.unit_energy;
  }
  return total;
}

double Ledger::energy(OpKind op) const {
  double total = 0.0;
  for (const auto& [key, tally] : buckets_) {
    if (key.op == op) {
      total += static_cast<double>(tally.units) * key.unit_energy;
    }
  }
  return total;
}

std::uint64_t Ledger::count(OpKind op) const {
  std::uint64_t n = 0;
  for (const auto& [key, tally] : buckets_) {
    if (key.op == op) {
      n += tally.units;
    }
  }
  return n;
}

std::uint64_t Ledger::invocations(OpKind op) const {
  std::uint64_t n = 0;
  for (const auto& [key, tally] : buckets_) {
    if (key.op == op) {
      n += tally.invocations;
    }
  }
  return n;
}

double Ledger::latency(Schedule schedule) const {
  if (schedule == Schedule::Serial) {
    double total = 0.0;
    for (const auto& [key, tally] : buckets_) {
      total += bucket_latency(key, tally);
    }
    return total;
  }
  // Phases run back to back; within a phase groups run concurrently and each
  // group's events run serially.
  std::map<std::uint32_t, std::map<std::uint32_t, double>> per_phase;
  for (const auto& [key, tally] : buckets_) {
    per_phase[key.phase][key.group] += bucket_latency(key, tally);
  }
  double total = 0.0;
  for (const auto& [phase, groups] : per_phase) {
    double longest = 0.0;
    for (const auto& [group, t] : groups) {
      longest = std::max(longest, t);
    }
    total += longest;
  }
  return total;
}

}  // namespace mesram::arch
