#include "doctest.h"

#include <random>

#include "support/fixtures.hpp"
#include "support/window.hpp"
#include "tfdg/family.hpp"
#include "tfdg/ultrafilter.hpp"

using namespace tfdg;
using testsupport::src;
using testsupport::tin;
using testsupport::tout;

namespace {

EPSequence constant(SeqKind kind, ElemRef e) {
  EPSequence s;
  s.kind = kind;
  s.cycle = {std::move(e)};
  return s;
}

EPSequence tip_seq(std::vector<std::optional<ElemRef>> cycle) {
  EPSequence s;
  s.kind = SeqKind::ditip(Rank::finite(0));
  s.cycle = std::move(cycle);
  return s;
}

// prefix [D_A], cycle [D_B, D_C]: D_A has arcs {x}, D_B arcs {a, x},
// D_C arcs {x}; so "arc a exists" holds exactly on odd positions.
FamilySpec abc_family() {
  DigraphData da;
  da.rank = Rank::finite(0);
  da.arcs = {"x"};
  da.v0 = {{src("x")}, {testsupport::snk("x")}};

  DigraphData db = da;
  db.arcs = {"a", "x"};
  db.v0.push_back({src("a"), testsupport::snk("a")});

  DigraphData dc = da;

  return FamilySpec({RankedDigraph(da)},
                    {RankedDigraph(db), RankedDigraph(dc)});
}

}  // namespace

TEST_CASE("family indexing unrolls prefix then cycle") {
  const FamilySpec fam = abc_family();
  CHECK(fam.threshold() == 1);
  CHECK(fam.period() == 2);
  CHECK(fam.at(0).arc_count() == 1);
  CHECK(fam.at(1).arc_count() == 2);
  CHECK(fam.at(2).arc_count() == 1);
  CHECK(fam.at(3).arc_count() == 2);
  for (uint64_t n = fam.threshold(); n < 20; ++n) {
    REQUIRE(fam.at(n) == fam.at(n + fam.period()));
  }

  const FamilySpec constant_fam = testsupport::fam_const_d1();
  for (uint64_t n = 0; n < 8; ++n) {
    REQUIRE(constant_fam.at(n) == constant_fam.at(0));
  }
}

TEST_CASE("family construction enforces the cycle contract") {
  CHECK_THROWS_AS(FamilySpec({}, {}), std::invalid_argument);

  // mixed cycle ranks are rejected
  DigraphData r0;
  r0.rank = Rank::finite(0);
  r0.arcs = {"a"};
  r0.v0 = {{src("a"), testsupport::snk("a")}};
  CHECK_THROWS_AS(
      FamilySpec({}, {RankedDigraph(r0), RankedDigraph(testsupport::path2_rank1())}),
      std::invalid_argument);

  // a lower-rank prefix member is accepted but noted
  const FamilySpec fam = testsupport::fam_prefix();
  CHECK(fam.rank() == Rank::finite(1));
  CHECK(fam.notes().size() == 1);
  CHECK(fam.notes()[0].find("rank") != std::string::npos);

  // same-rank members produce no notes
  CHECK(testsupport::fam_cycle2_shorting().notes().empty());
}

TEST_CASE("depth is the minimum level count over cycle members") {
  CHECK(testsupport::fam_const_d3().depth() == 3);
  CHECK(testsupport::fam_warrow().depth() == 2);
  CHECK(testsupport::fam_omega().depth() == 1);
}

TEST_CASE("element existence and enumeration per kind") {
  const FamilySpec fam = testsupport::fam_const_d1();
  const RankedDigraph& d = fam.cycle()[0];
  CHECK(element_exists(d, SeqKind::arc(), ElemRef::arc("a")));
  CHECK_FALSE(element_exists(d, SeqKind::arc(), ElemRef::arc("zz")));
  CHECK(element_exists(d, SeqKind::arc_end(), ElemRef::end("b", Side::sink)));
  CHECK(element_exists(d, SeqKind::ditip(Rank::finite(0)), ElemRef::tip("p")));
  CHECK_FALSE(element_exists(d, SeqKind::ditip(Rank::finite(1)), ElemRef::tip("p")));

  CHECK(elements_of(d, SeqKind::arc()).size() == 2);
  CHECK(elements_of(d, SeqKind::arc_end()).size() == 4);
  CHECK(elements_of(d, SeqKind::ditip(Rank::finite(0))).size() == 2);
  CHECK(elements_of(d, SeqKind::ditip(Rank::finite(1))).empty());

  const FamilySpec omega_fam = testsupport::fam_omega();
  const RankedDigraph& om = omega_fam.cycle()[0];
  CHECK(elements_of(om, SeqKind::ditip(Rank::warrow())).size() == 2);
}

TEST_CASE("sequence indexing follows its own alignment") {
  EPSequence s;
  s.kind = SeqKind::ditip(Rank::finite(0));
  s.prefix = {std::nullopt, ElemRef::tip("p")};
  s.cycle = {ElemRef::tip("q"), std::nullopt, ElemRef::tip("p")};
  CHECK_FALSE(s.at(0).has_value());
  CHECK(s.at(1)->id == "p");
  CHECK(s.at(2)->id == "q");
  CHECK_FALSE(s.at(3).has_value());
  CHECK(s.at(4)->id == "p");
  CHECK(s.at(5)->id == "q");
  CHECK(s.threshold() == 2);
  CHECK(s.period() == 3);
}

TEST_CASE("predicate_set compiles pointwise predicates exactly") {
  const FamilySpec fam = abc_family();

  // "arc a exists" holds exactly on odd positions
  const EPSet odd_only = predicate_set(fam, {}, [&](uint64_t n) {
    return element_exists(fam.at(n), SeqKind::arc(), ElemRef::arc("a"));
  });
  CHECK(odd_only == EPSet::residue_class(2, 1));

  CHECK(predicate_set(fam, {}, [](uint64_t) { return true; }) == EPSet::all());
  CHECK(predicate_set(fam, {}, [](uint64_t) { return false; }) ==
        EPSet::empty());

  // constant sequences always shorted: the full set again
  const FamilySpec shorting = testsupport::fam_const_d2();
  const EPSequence p = constant(SeqKind::ditip(Rank::finite(0)), ElemRef::tip("p"));
  const EPSequence q = constant(SeqKind::ditip(Rank::finite(0)), ElemRef::tip("q"));
  const EPSet always = predicate_set(shorting, {&p, &q}, [&](uint64_t n) {
    return shorting.at(n).shorted(Rank::finite(0), p.at(n)->id, q.at(n)->id);
  });
  CHECK(always == EPSet::all());
}

TEST_CASE("predicate_set agrees with brute-force window evaluation") {
  std::mt19937_64 rng(71);
  for (const auto& [name, fam] : testsupport::corpus()) {
    CAPTURE(name);
    // random eventually periodic boolean predicates over positions, phrased
    // through a sequence alignment so the joint period varies
    for (int trial = 0; trial < 20; ++trial) {
      const uint64_t period = 1 + rng() % 4;
      const uint64_t threshold = rng() % 3;
      EPSequence shape;
      shape.kind = SeqKind::arc();
      for (uint64_t i = 0; i < threshold; ++i) {
        shape.prefix.push_back(ElemRef::arc("z" + std::to_string(rng() % 2)));
      }
      for (uint64_t i = 0; i < period; ++i) {
        shape.cycle.push_back(ElemRef::arc("z" + std::to_string(rng() % 2)));
      }
      auto pred = [&](uint64_t n) {
        return shape.at(n)->id == "z1" && fam.at(n).arc_count() % 2 == 0;
      };
      const EPSet s = predicate_set(fam, {&shape}, pred);
      const uint64_t window = testsupport::joint_threshold(fam, &shape, nullptr) +
                              3 * testsupport::joint_period(fam, &shape, nullptr);
      for (uint64_t n = 0; n < window; ++n) {
        REQUIRE(s.member(n) == pred(n));
      }
    }
  }
}

TEST_CASE("presence respects kind, rank, and the absent marker") {
  const FamilySpec fam = testsupport::fam_cycle3_rank1();
  const EPSequence p = constant(SeqKind::ditip(Rank::finite(0)), ElemRef::tip("p"));
  const EPSequence q = constant(SeqKind::ditip(Rank::finite(0)), ElemRef::tip("q"));

  // p lives in members 0 and 1 of the 3-cycle, q in members 0 and 2
  CHECK(present_at(fam, p, 0));
  CHECK(present_at(fam, p, 1));
  CHECK_FALSE(present_at(fam, p, 2));
  CHECK(present_at(fam, q, 0));
  CHECK_FALSE(present_at(fam, q, 1));
  CHECK(present_at(fam, q, 2));
  CHECK(presence_set(fam, p) ==
        EPSet::residue_class(3, 0).unite(EPSet::residue_class(3, 1)));

  const EPSequence gap = tip_seq({ElemRef::tip("p"), std::nullopt});
  CHECK_FALSE(present_at(fam, gap, 1));
  CHECK_FALSE(present_at(fam, gap, 3));

  // a named element that is missing from that member counts as not present
  const FamilySpec pre = testsupport::fam_prefix();
  const EPSequence tp = constant(SeqKind::ditip(Rank::finite(0)), ElemRef::tip("p"));
  CHECK(present_at(pre, tp, 0));
  CHECK_FALSE(present_at(pre, tp, 1));  // rank-0 prefix member has no ditips
  CHECK(present_at(pre, tp, 2));
}

TEST_CASE("presence matches the brute-force reference on the corpus") {
  std::mt19937_64 rng(72);
  for (const auto& [name, fam] : testsupport::corpus()) {
    CAPTURE(name);
    const std::vector<SeqKind> kinds = {SeqKind::arc(), SeqKind::arc_end(),
                                        SeqKind::ditip(Rank::finite(0))};
    for (const auto& kind : kinds) {
      for (int trial = 0; trial < 10; ++trial) {
        EPSequence s;
        s.kind = kind;
        const uint64_t period = 1 + rng() % 4;
        std::vector<ElemRef> pool;
        for (const auto& m : fam.cycle()) {
          for (const auto& e : elements_of(m, kind)) pool.push_back(e);
        }
        if (pool.empty()) continue;
        for (uint64_t i = 0; i < period; ++i) {
          if (rng() % 4 == 0) {
            s.cycle.push_back(std::nullopt);
          } else {
            s.cycle.push_back(pool[rng() % pool.size()]);
          }
        }
        const EPSet ps = presence_set(fam, s);
        const uint64_t window = testsupport::joint_threshold(fam, &s, nullptr) +
                                3 * testsupport::joint_period(fam, &s, nullptr);
        for (uint64_t n = 0; n < window; ++n) {
          REQUIRE(ps.member(n) == testsupport::brute_present(fam, s, n));
        }
      }
    }
  }
}

TEST_CASE("seq_valid asks the oracle about the presence set") {
  const FamilySpec fam = testsupport::fam_const_d1();
  MultiplesOracle multiples;

  const EPSequence p = constant(SeqKind::ditip(Rank::finite(0)), ElemRef::tip("p"));
  CHECK(seq_valid(p, fam, multiples));

  // present only at n < 5: rejected by a nonprincipal oracle
  EPSequence finite_support;
  finite_support.kind = SeqKind::ditip(Rank::finite(0));
  for (int i = 0; i < 5; ++i) finite_support.prefix.push_back(ElemRef::tip("p"));
  finite_support.cycle = {std::nullopt};
  CHECK_FALSE(seq_valid(finite_support, fam, multiples));
  PrincipalOracle p3(3);
  CHECK(seq_valid(finite_support, fam, p3));

  // present exactly on evens: accepted by multiples, flips with principal
  const EPSequence evens = tip_seq({ElemRef::tip("p"), std::nullopt});
  CHECK(seq_valid(evens, fam, multiples));
  PrincipalOracle p0(0);
  PrincipalOracle p1(1);
  CHECK(seq_valid(evens, fam, p0));
  CHECK_FALSE(seq_valid(evens, fam, p1));

  // an everywhere-absent sequence is never valid
  const EPSequence never = tip_seq({std::nullopt});
  CHECK_FALSE(seq_valid(never, fam, multiples));
  CHECK_FALSE(seq_valid(never, fam, p0));
}
