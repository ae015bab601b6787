#pragma once

// Shared family corpus and random generators.  The corpus spans ranks 0-3
// plus warrow and omega, cycle lengths 1-4, prefixes, per-member element
// drop-outs, polarity flips, and shorting flips, so the property suites see
// every structural feature the library supports.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tfdg/family.hpp"

namespace testsupport {

using tfdg::ArcEnd;
using tfdg::DigraphData;
using tfdg::Ditip;
using tfdg::FamilySpec;
using tfdg::Level;
using tfdg::Polarity;
using tfdg::Rank;
using tfdg::RankedDigraph;
using tfdg::Side;

inline ArcEnd src(std::string arc) { return {std::move(arc), Side::source}; }
inline ArcEnd snk(std::string arc) { return {std::move(arc), Side::sink}; }
inline Ditip tin(std::string id) { return {std::move(id), Polarity::in}; }
inline Ditip tout(std::string id) { return {std::move(id), Polarity::out}; }

struct NamedFamily {
  std::string name;
  FamilySpec family;
};

// Rank 0, two arcs forming a path: a then b through a middle vertex.
inline DigraphData path2_core() {
  DigraphData d;
  d.rank = Rank::finite(0);
  d.arcs = {"a", "b"};
  d.v0 = {{src("a")}, {snk("a"), src("b")}, {snk("b")}};
  return d;
}

inline FamilySpec fam_const_d0_small() {
  return FamilySpec({}, {RankedDigraph(path2_core())});
}

// Rank 1 on the path: an in ditip and an out ditip in separate vertices.
inline DigraphData path2_rank1() {
  DigraphData d = path2_core();
  d.rank = Rank::finite(1);
  d.levels = {Level{{tin("p"), tout("q")}, {{"p"}, {"q"}}}};
  return d;
}

inline FamilySpec fam_const_d1() {
  return FamilySpec({}, {RankedDigraph(path2_rank1())});
}

// Rank 2 over one arc: two rank-0 ditips shorted into one rank-1 vertex,
// one rank-1 ditip in a single rank-2 vertex.
inline FamilySpec fam_const_d2() {
  DigraphData d;
  d.rank = Rank::finite(2);
  d.arcs = {"a"};
  d.v0 = {{src("a")}, {snk("a")}};
  d.levels = {Level{{tin("p"), tout("q")}, {{"p", "q"}}},
              Level{{tin("r")}, {{"r"}}}};
  return FamilySpec({}, {RankedDigraph(std::move(d))});
}

// Rank 3 with a self-loop-shaped v0 and one shorting per layer.
inline FamilySpec fam_const_d3() {
  DigraphData d;
  d.rank = Rank::finite(3);
  d.arcs = {"a", "b"};
  d.v0 = {{src("a"), snk("b")}, {snk("a")}, {src("b")}};
  d.levels = {Level{{tin("p"), tout("q")}, {{"p"}, {"q"}}},
              Level{{tin("r"), tout("s")}, {{"r", "s"}}},
              Level{{tout("u")}, {{"u"}}}};
  return FamilySpec({}, {RankedDigraph(std::move(d))});
}

// Two members that differ only in whether p and q are shorted.
inline FamilySpec fam_cycle2_shorting() {
  DigraphData joined = path2_rank1();
  joined.levels[0].vertices = {{"p", "q"}};
  return FamilySpec(
      {}, {RankedDigraph(std::move(joined)), RankedDigraph(path2_rank1())});
}

// Two members that differ only in the polarity of ditip t.
inline FamilySpec fam_cycle2_polarity() {
  DigraphData d;
  d.rank = Rank::finite(1);
  d.arcs = {"a"};
  d.v0 = {{src("a")}, {snk("a")}};
  d.levels = {Level{{tin("t"), tout("w")}, {{"t", "w"}}}};
  DigraphData flipped = d;
  flipped.levels[0].tips = {tout("t"), tout("w")};
  return FamilySpec(
      {}, {RankedDigraph(std::move(d)), RankedDigraph(std::move(flipped))});
}

// Cycle of three members with per-member ditip drop-outs: p lives in members
// 0 and 1, q in members 0 and 2, and the v0 partition coarsens member by
// member.
inline FamilySpec fam_cycle3_rank1() {
  DigraphData m0;
  m0.rank = Rank::finite(1);
  m0.arcs = {"a", "b"};
  m0.v0 = {{src("a"), snk("a")}, {src("b"), snk("b")}};
  m0.levels = {Level{{tin("p"), tout("q")}, {{"p"}, {"q"}}}};

  DigraphData m1;
  m1.rank = Rank::finite(1);
  m1.arcs = {"a", "b"};
  m1.v0 = {{src("a"), snk("a"), src("b"), snk("b")}};
  m1.levels = {Level{{tin("p")}, {{"p"}}}};

  DigraphData m2;
  m2.rank = Rank::finite(1);
  m2.arcs = {"a", "b"};
  m2.v0 = {{src("a")}, {snk("a")}, {src("b")}, {snk("b")}};
  m2.levels = {Level{{tin("q")}, {{"q"}}}};

  return FamilySpec({}, {RankedDigraph(std::move(m0)),
                         RankedDigraph(std::move(m1)),
                         RankedDigraph(std::move(m2))});
}

// Cycle of four one-arc members: the two arc ends are joined in members 0
// and 3, split in 1 and 2, and the single ditip flips polarity halfway.
inline FamilySpec fam_cycle4_rank1() {
  auto member = [](bool joined, Polarity pol) {
    DigraphData d;
    d.rank = Rank::finite(1);
    d.arcs = {"a"};
    if (joined) {
      d.v0 = {{src("a"), snk("a")}};
    } else {
      d.v0 = {{src("a")}, {snk("a")}};
    }
    d.levels = {Level{{Ditip{"t", pol}}, {{"t"}}}};
    return RankedDigraph(std::move(d));
  };
  return FamilySpec({}, {member(true, Polarity::in), member(false, Polarity::in),
                         member(false, Polarity::out),
                         member(true, Polarity::out)});
}

// Two prefix members before a two-member cycle.  The first prefix member
// shares the cycle's shape; the second has rank 0 only (accepted and noted),
// so every ditip sequence is absent at position 1.
inline FamilySpec fam_prefix() {
  DigraphData e1 = path2_core();
  DigraphData joined = path2_rank1();
  joined.levels[0].vertices = {{"p", "q"}};
  return FamilySpec(
      {RankedDigraph(path2_rank1()), RankedDigraph(std::move(e1))},
      {RankedDigraph(std::move(joined)), RankedDigraph(path2_rank1())});
}

// Rank 0 at the arc-count bound: twelve arcs chained into a ring.
inline FamilySpec fam_const_12arcs() {
  DigraphData d;
  d.rank = Rank::finite(0);
  for (int i = 0; i < 12; ++i) d.arcs.push_back("a" + std::to_string(i));
  for (int i = 0; i < 12; ++i) {
    d.v0.push_back({snk("a" + std::to_string(i)),
                    src("a" + std::to_string((i + 1) % 12))});
  }
  return FamilySpec({}, {RankedDigraph(std::move(d))});
}

// Warrow rank: two-level towers marked as extending without bound, with the
// v0 partition flipping between the members.
inline FamilySpec fam_warrow() {
  auto member = [](bool joined) {
    DigraphData d;
    d.rank = Rank::warrow();
    d.arcs = {"a"};
    if (joined) {
      d.v0 = {{src("a"), snk("a")}};
    } else {
      d.v0 = {{src("a")}, {snk("a")}};
    }
    d.levels = {Level{{tin("p")}, {{"p"}}}, Level{{tout("r")}, {{"r"}}}};
    return RankedDigraph(std::move(d));
  };
  return FamilySpec({}, {member(false), member(true)});
}

// Omega rank, constant: one finite level, two warrow ditips in one omega
// vertex.
inline DigraphData omega_member() {
  DigraphData d = path2_rank1();
  d.rank = Rank::omega();
  d.warrow_tips = {tin("wt1"), tout("wt2")};
  d.v_omega = {{"wt1", "wt2"}};
  return d;
}

inline FamilySpec fam_omega() {
  return FamilySpec({}, {RankedDigraph(omega_member())});
}

// Omega rank with a two-member cycle: the omega partition splits in the
// second member.
inline FamilySpec fam_omega_cycle2() {
  DigraphData split = omega_member();
  split.v_omega = {{"wt1"}, {"wt2"}};
  return FamilySpec(
      {}, {RankedDigraph(omega_member()), RankedDigraph(std::move(split))});
}

inline const std::vector<NamedFamily>& corpus() {
  static const std::vector<NamedFamily> families = {
      {"const_d0_small", fam_const_d0_small()},
      {"const_d1", fam_const_d1()},
      {"const_d2", fam_const_d2()},
      {"const_d3", fam_const_d3()},
      {"cycle2_shorting", fam_cycle2_shorting()},
      {"cycle2_polarity", fam_cycle2_polarity()},
      {"cycle3_rank1", fam_cycle3_rank1()},
      {"cycle4_rank1", fam_cycle4_rank1()},
      {"prefix", fam_prefix()},
      {"const_12arcs", fam_const_12arcs()},
      {"warrow", fam_warrow()},
      {"omega", fam_omega()},
      {"omega_cycle2", fam_omega_cycle2()},
  };
  return families;
}

// A random partition of [0, n) as blocks of indices.
inline std::vector<std::vector<size_t>> random_partition(std::mt19937_64& rng,
                                                         size_t n) {
  std::vector<std::vector<size_t>> blocks;
  for (size_t i = 0; i < n; ++i) {
    const size_t choice = rng() % (blocks.size() + 1);
    if (choice == blocks.size()) {
      blocks.push_back({i});
    } else {
      blocks[choice].push_back(i);
    }
  }
  return blocks;
}

// Random family with every member of the same finite rank.  Arc and ditip
// ids are shared pools; each member keeps every arc but may drop ditips
// (never all of a level).  Prefix members reuse the same pools, which keeps
// every element of every member reachable by cycle-aligned sequences.
inline FamilySpec random_family(std::mt19937_64& rng) {
  const uint64_t rank = rng() % 4;
  const size_t arc_count = 1 + rng() % 3;
  const size_t cycle_len = 1 + rng() % 4;
  const size_t prefix_len = rng() % 3;

  std::vector<std::string> arcs;
  for (size_t i = 0; i < arc_count; ++i) arcs.push_back("a" + std::to_string(i));
  std::vector<std::vector<std::string>> tip_pool(rank);
  for (uint64_t k = 0; k < rank; ++k) {
    const size_t tips = 1 + rng() % 3;
    for (size_t i = 0; i < tips; ++i) {
      tip_pool[k].push_back("t" + std::to_string(k) + "_" + std::to_string(i));
    }
  }

  // prefix members must draw their tips from ids that survive somewhere in
  // the cycle: enumeration pools come from cycle members only, so an id that
  // exists solely in a prefix member has no materializable class
  auto member = [&](const std::vector<std::set<std::string>>* allowed) {
    DigraphData d;
    d.rank = Rank::finite(rank);
    d.arcs = arcs;
    std::vector<ArcEnd> ends;
    for (const auto& a : arcs) {
      ends.push_back(src(a));
      ends.push_back(snk(a));
    }
    for (const auto& block : random_partition(rng, ends.size())) {
      std::vector<ArcEnd> b;
      for (size_t idx : block) b.push_back(ends[idx]);
      d.v0.push_back(std::move(b));
    }
    for (uint64_t k = 0; k < rank; ++k) {
      std::vector<std::string> usable;
      for (const auto& id : tip_pool[k]) {
        if (!allowed || (*allowed)[k].count(id) != 0) usable.push_back(id);
      }
      Level level;
      for (const auto& id : usable) {
        if (usable.size() > 1 && rng() % 4 == 0) continue;  // drop-out
        level.tips.push_back(
            Ditip{id, rng() % 2 == 0 ? Polarity::in : Polarity::out});
      }
      if (level.tips.empty()) level.tips.push_back(tin(usable[0]));
      for (const auto& block : random_partition(rng, level.tips.size())) {
        std::vector<std::string> b;
        for (size_t idx : block) b.push_back(level.tips[idx].id);
        level.vertices.push_back(std::move(b));
      }
      d.levels.push_back(std::move(level));
    }
    return RankedDigraph(std::move(d));
  };

  std::vector<RankedDigraph> cycle;
  for (size_t i = 0; i < cycle_len; ++i) cycle.push_back(member(nullptr));
  std::vector<std::set<std::string>> in_cycle(rank);
  for (const auto& d : cycle) {
    for (uint64_t k = 0; k < rank; ++k) {
      for (const auto& tip : d.data().levels[k].tips) {
        in_cycle[k].insert(tip.id);
      }
    }
  }
  std::vector<RankedDigraph> prefix;
  for (size_t i = 0; i < prefix_len; ++i) prefix.push_back(member(&in_cycle));
  return FamilySpec(std::move(prefix), std::move(cycle));
}

}  // namespace testsupport
