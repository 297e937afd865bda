#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "mesram/arch/hierarchy.hpp"
#include "mesram/arch/ledger.hpp"
#include "mesram/arch/report.hpp"
#include "mesram/common/config.hpp"
#include "mesram/common/error.hpp"
#include "mesram/common/rng.hpp"

using namespace mesram;
using namespace mesram::arch;

namespace {

HierarchySpec small_spec() {
  HierarchySpec s;
  s.slice_capacity = 64;
  s.banks = 2;
  s.bank_capacity = 32;
  s.ways = 1;
  s.matrices_per_bank = 2;
  s.matrix_capacity = 16;
  s.compute_subarray = 8;
  s.subarray_rows = 2;
  s.subarray_cols = 32;
  return s;
}

// Discrete-event timeline: phases are barriers; within a phase each group is a
// serial resource starting at the phase start.
double timeline_latency(const std::vector<Event>& events, bool parallel) {
  if (!parallel) {
    double t = 0.0;
    for (const auto& e : events) {
      t += e.concurrent ? e.unit_delay : static_cast<double>(e.count) * e.unit_delay;
    }
    return t;
  }
  std::set<std::uint32_t> phases;
  for (const auto& e : events) {
    phases.insert(e.phase);
  }
  double start = 0.0;
  for (const auto p : phases) {
    std::map<std::uint32_t, double> clock;
    double end = start;
    for (const auto& e : events) {
      if (e.phase != p) {
        continue;
      }
      auto& c = clock.try_emplace(e.group, start).first->second;
      c += e.concurrent ? e.unit_delay : static_cast<double>(e.count) * e.unit_delay;
      end = std::max(end, c);
    }
    start = end;
  }
  return start;
}

std::vector<Event> random_trace(std::uint64_t seed, int n) {
  std::vector<Event> out;
  for (int i = 0; i < n; ++i) {
    const auto k = [&](std::uint64_t f) { return hash_keys({seed, static_cast<std::uint64_t>(i), f}); };
    Event e;
    e.op = static_cast<OpKind>(k(0) % 8);
    e.count = 1 + k(1) % 20;
    e.unit_delay = 1e-12 * static_cast<double>(1 + k(2) % 5);
    e.unit_energy = 1e-15 * static_cast<double>(1 + k(3) % 7);
    e.concurrent = k(4) % 2;
    e.group = static_cast<std::uint32_t>(k(5) % 4);
    e.phase = static_cast<std::uint32_t>(k(6) % 3);
    out.push_back(e);
  }
  return out;
}

}  // namespace

TEST(Hierarchy, DefaultsGiveEightyBanksAndOneSixtyMatrices) {
  const auto h = build_hierarchy(HierarchySpec{});
  EXPECT_EQ(h.banks(), 80u);
  EXPECT_EQ(h.matrices(), 160u);
  EXPECT_EQ(h.subarrays_per_matrix(), 2u);
  EXPECT_EQ(h.total_subarrays(), 320u);
  EXPECT_EQ(h.capacity(), 2560u * 1024u);
  EXPECT_EQ(h.row_bytes(), 32u);
}

TEST(Hierarchy, SingleBankDecodesOffsets) {
  HierarchySpec s = small_spec();
  s.slice_capacity = 32;
  s.banks = 1;
  const auto h = build_hierarchy(s);
  for (std::uint64_t a = 0; a < 32; ++a) {
    const auto loc = h.decode(a);
    EXPECT_EQ(loc.bank, 0u);
    const std::uint64_t offset = loc.matrix * 16 + loc.subarray * 8 + loc.row * 4 + loc.byte;
    EXPECT_EQ(offset, a);
  }
}

TEST(Hierarchy, EncodeDecodeIsBijection) {
  const auto h = build_hierarchy(small_spec());
  std::set<std::uint64_t> seen;
  for (std::uint32_t b = 0; b < 2; ++b)
    for (std::uint32_t m = 0; m < 2; ++m)
      for (std::uint32_t s = 0; s < 2; ++s)
        for (std::uint32_t r = 0; r < 2; ++r)
          for (std::uint32_t y = 0; y < 4; ++y) {
            const Location loc{b, m, s, r, y};
            const auto a = h.encode(loc);
            EXPECT_LT(a, h.capacity());
            EXPECT_TRUE(seen.insert(a).second);
            EXPECT_EQ(h.decode(a), loc);
          }
  EXPECT_EQ(seen.size(), 64u);
  for (std::uint64_t a = 0; a < 64; ++a) {
    EXPECT_EQ(h.encode(h.decode(a)), a);
  }
}

TEST(Hierarchy, RandomAddressesRoundTripOnDefaults) {
  const auto h = build_hierarchy(HierarchySpec{});
  for (std::uint64_t i = 0; i < 5000; ++i) {
    const auto a = hash_keys({77, i}) % h.capacity();
    EXPECT_EQ(h.encode(h.decode(a)), a);
  }
}

TEST(Hierarchy, AddressErrors) {
  const auto h = build_hierarchy(small_spec());
  EXPECT_THROW(h.decode(64), AddressError);
  EXPECT_THROW(h.encode(Location{2, 0, 0, 0, 0}), AddressError);
  EXPECT_THROW(h.encode(Location{0, 0, 0, 0, 4}), AddressError);
  EXPECT_THROW(h.subarray_origin(8), AddressError);
}

TEST(Hierarchy, GlobalSubarrayIndexRoundTrips) {
  const auto h = build_hierarchy(HierarchySpec{});
  for (std::uint32_t g = 0; g < h.total_subarrays(); ++g) {
    EXPECT_EQ(h.global_subarray(h.subarray_origin(g)), g);
  }
}

TEST(Hierarchy, InconsistentSpecsRejected) {
  auto s = small_spec();
  s.banks = 3;
  EXPECT_THROW(build_hierarchy(s), SpecError);
  s = small_spec();
  s.subarray_cols = 30;
  EXPECT_THROW(build_hierarchy(s), SpecError);
  s = small_spec();
  s.subarray_rows = 3;
  EXPECT_THROW(build_hierarchy(s), SpecError);
  EXPECT_THROW(load_hierarchy_spec(ConfigDocument::parse("[h]\nbanks = 3\n").section("h")),
               ConfigError);
  EXPECT_THROW(load_hierarchy_spec(ConfigDocument::parse("[h]\npages = 3\n").section("h")),
               ConfigError);
}

TEST(Ledger, ParallelIdenticalOps) {
  Ledger l;
  Event e{OpKind::Xnor, 256, 16.7e-12, 2e-16, true};
  l.record(e);
  EXPECT_DOUBLE_EQ(l.latency(Schedule::ParallelAcrossSubarrays), 16.7e-12);
  EXPECT_DOUBLE_EQ(l.total_energy(), 256 * 2e-16);

  Ledger s;
  Event se{OpKind::Xnor, 256, 16.7e-12, 2e-16, false};
  s.record(se);
  EXPECT_DOUBLE_EQ(s.latency(Schedule::Serial), 256 * 16.7e-12);
}

TEST(Ledger, AcrossGroupsParallelTakesLongest) {
  Ledger l;
  for (std::uint32_t g = 0; g < 4; ++g) {
    Event e{OpKind::Read, 1, 1e-12 * (g + 1), 1e-15, false, g, 0};
    l.record(e);
  }
  EXPECT_DOUBLE_EQ(l.latency(Schedule::ParallelAcrossSubarrays), 4e-12);
  EXPECT_DOUBLE_EQ(l.latency(Schedule::Serial), 10e-12);
}

TEST(Ledger, MatchesDiscreteEventOracle) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto trace = random_trace(seed, 40);
    Ledger l;
    double energy = 0.0;
    for (const auto& e : trace) {
      l.record(e);
      energy += static_cast<double>(e.count) * e.unit_energy;
    }
    const double serial = l.latency(Schedule::Serial);
    const double par = l.latency(Schedule::ParallelAcrossSubarrays);
    EXPECT_NEAR(serial, timeline_latency(trace, false), 1e-9 * serial);
    EXPECT_NEAR(par, timeline_latency(trace, true), 1e-9 * par);
    EXPECT_LE(par, serial * (1 + 1e-12));
    EXPECT_NEAR(l.total_energy(), energy, 1e-9 * energy);
  }
}

TEST(Ledger, MergeIsOrderIndependent) {
  const auto trace = random_trace(3, 60);
  Ledger all, a, b;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    all.record(trace[i]);
    (i % 2 ? a : b).record(trace[i]);
  }
  Ledger ab = a;
  ab.merge(b);
  Ledger ba = b;
  ba.merge(a);
  Ledger reversed;
  for (auto it = trace.rbegin(); it != trace.rend(); ++it) {
    reversed.record(*it);
  }
  for (const Ledger* l : {&ab, &ba, &reversed}) {
    EXPECT_EQ(l->buckets().size(), all.buckets().size());
    EXPECT_EQ(l->event_count(), all.event_count());
    EXPECT_DOUBLE_EQ(l->latency(Schedule::Serial), all.latency(Schedule::Serial));
    EXPECT_DOUBLE_EQ(l->latency(Schedule::ParallelAcrossSubarrays),
                     all.latency(Schedule::ParallelAcrossSubarrays));
    for (std::size_t op = 0; op < 8; ++op) {
      EXPECT_EQ(l->count(static_cast<OpKind>(op)), all.count(static_cast<OpKind>(op)));
    }
  }
}

TEST(Ledger, AggregateEqualsRepeatedRecords) {
  Event e{OpKind::Stage, 10, 2e-12, 3e-15, true, 1, 2};
  Ledger rep;
  for (int i = 0; i < 7; ++i) {
    rep.record(e);
  }
  Event agg = e;
  agg.count = 70;
  Ledger one;
  one.record_aggregate(agg, 7);
  one.record_aggregate(agg, 0);
  EXPECT_EQ(one.count(OpKind::Stage), rep.count(OpKind::Stage));
  EXPECT_EQ(one.invocations(OpKind::Stage), 7u);
  EXPECT_DOUBLE_EQ(one.latency(Schedule::Serial), rep.latency(Schedule::Serial));
  EXPECT_DOUBLE_EQ(one.total_energy(), rep.total_energy());
}

TEST(Ledger, OpNames) {
  for (std::size_t op = 0; op < 8; ++op) {
    const auto k = static_cast<OpKind>(op);
    EXPECT_EQ(parse_op_kind(to_string(k)), k);
  }
  EXPECT_THROW(parse_op_kind("erase"), LookupError);
  EXPECT_TRUE(Ledger{}.empty());
  EXPECT_EQ(Ledger{}.latency(Schedule::Serial), 0.0);
}

TEST(Report, RollsUpLevelsAndKeepsOverheadsSeparate) {
  const auto h = build_hierarchy(HierarchySpec{});
  Ledger l;
  l.record({OpKind::Xnor, 256, 16.7e-12, 1e-16, true, 0, 0});
  l.record({OpKind::Xnor, 256, 16.7e-12, 1e-16, true, 1, 0});
  l.record({OpKind::Write, 256, 22e-12, 2e-17, true, 2, 0});
  Overheads ov;
  ov.subarray_access = 1e-15;
  ov.controller_invocation = 5e-15;
  HookCounts hooks;
  hooks.controller = 2;
  const auto r = account(l, Schedule::ParallelAcrossSubarrays, &h, ov, hooks);
  EXPECT_DOUBLE_EQ(r.energy, 512 * 1e-16 + 256 * 2e-17);
  EXPECT_DOUBLE_EQ(r.latency, 22e-12);
  EXPECT_DOUBLE_EQ(r.overhead_energy, 3 * 1e-15 + 2 * 5e-15);

  std::map<std::string, double> level_energy;
  std::map<std::string, int> level_count;
  for (const auto& line : r.levels) {
    level_energy[line.level] += line.energy;
    ++level_count[line.level];
  }
  EXPECT_EQ(level_count["subarray"], 3);
  EXPECT_EQ(level_count["matrix"], 2);  // groups 0,1 share matrix 0; group 2 is matrix 1
  EXPECT_EQ(level_count["bank"], 1);
  EXPECT_EQ(level_count["slice"], 1);
  for (const auto& [level, e] : level_energy) {
    EXPECT_DOUBLE_EQ(e, r.energy) << level;
  }

  const auto j = to_json(r);
  EXPECT_EQ(j["schedule"], "parallel-across-subarrays");
  EXPECT_DOUBLE_EQ(j["energy_j"].get<double>(), r.energy);
  EXPECT_EQ(j["ops"].size(), 2u);
  const auto csv = to_csv(r);
  EXPECT_EQ(csv.rfind("level,id,energy_j,latency_s\ntotal,0,", 0), 0u);
}

TEST(Report, DefaultOverheadsAreZero) {
  Ledger l;
  l.record({OpKind::Read, 3, 1e-12, 1e-15});
  const auto r = account(l, Schedule::Serial);
  EXPECT_EQ(r.overhead_energy, 0.0);
  EXPECT_TRUE(r.levels.empty());
  ASSERT_EQ(r.ops.size(), 1u);
  EXPECT_EQ(r.ops[0].units, 3u);
}
