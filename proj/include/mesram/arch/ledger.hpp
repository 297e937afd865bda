#pragma once

// Energy/latency event ledger. Events are aggregated by key with integer
// counts, so totals are independent of recording and merge order.

#include <cstdint>
#include <map>
#include <string_view>
#include <tuple>
#include <vector>

namespace mesram::arch {

enum class OpKind : std::uint8_t { Read, Write, Store, Restore, Xnor, Popcount, Hold, Stage };

std::string_view to_string(OpKind op);
/// Throws LookupError for unknown names.
OpKind parse_op_kind(std::string_view name);

struct Event {
  OpKind op = OpKind::Read;
  std::uint64_t count = 1;
  double unit_delay = 0.0;   // s
  double unit_energy = 0.0;  // J
  // The `count` units complete together in one unit_delay (e.g. all columns
  // of a bulk op) instead of back to back.
  bool concurrent = false;
  std::uint32_t group = 0;  // concurrency group, e.g. global sub-array index
  std::uint32_t phase = 0;  // barrier-separated schedule phase

  double energy() const { return static_cast<double>(count) * unit_energy; }
  double latency() const {
    return concurrent ? unit_delay : static_cast<double>(count) * unit_delay;
  }
};

enum class Schedule : std::uint8_t { Serial, ParallelAcrossSubarrays };

class Ledger {
 public:
  void record(const Event& e);
  /// Equivalent to `invocations` calls of record() whose counts sum to
  /// e.count.
  void record_aggregate(const Event& e, std::uint64_t invocations);
  void merge(const Ledger& other);

  bool empty() const { return buckets_.empty(); }
  std::uint64_t event_count() const { return events_; }

  double total_energy() const;
  double energy(OpKind op) const;
  std::uint64_t count(OpKind op) const;
  /// Number of recorded invocations (not units) of `op`.
  std::uint64_t invocations(OpKind op) const;

  double latency(Schedule schedule) const;

  struct Key {
    std::uint32_t phase;
    std::uint32_t group;
    OpKind op;
    double unit_delay;
    double unit_energy;
    bool concurrent;
    auto tie() const {
      return std::tie(phase, group, op, unit_delay, unit_energy, concurrent);
    }
    bool operator<(const Key& o) const { return tie() < o.tie(); }
  };
  struct Tally {
    std::uint64_t units = 0;        // sum of counts
    std::uint64_t invocations = 0;  // number of events
  };
  const std::map<Key, Tally>& buckets() const { return buckets_; }

 private:
  std::map<Key, Tally> buckets_;
  std::uint64_t events_ = 0;
};

}  // namespace mesram::arch
