#include "doctest.h"

#include <string>

#include <fstream>
#include <sstream>

#include "support/dot_lint.hpp"
#include "support/fixtures.hpp"
#include "tfdg/textio.hpp"

using namespace tfdg;

namespace {

std::string read_golden(const std::string& name) {
  std::ifstream in(std::string(TESTS_DIR) + "/golden/" + name);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kFullSpec = R"(# a two-member family with every declaration kind
digraph A rank 1 {
  arcs a b;
  v0 [a.src] [a.snk b.src] [b.snk];
  ditips0 p:in q:out;
  v1 [p q];
}
digraph B rank 1 {
  arcs a b;
  v0 [a.src] [a.snk b.src] [b.snk];
  ditips0 p:in;
  v1 [p];
}
family {
  prefix [B];
  cycle [A B];
}
seq sp rank 0 {
  prefix [_ p];
  cycle [p _];
}
seq se kind end {
  cycle [a.src b.snk];
}
seq sa kind arc {
  cycle [a];
}
epset evens {prefix: [], from: 0, mod: 2, residues: [0]};
epset bumpy {prefix: [1, 3], from: 4, mod: 3, residues: [0, 2]};
)";

ParseError capture(const std::string& text) {
  try {
    (void)parse_spec(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError(0, 0, "unreachable");
}

}  // namespace

TEST_CASE("parse_spec reads every declaration kind") {
  const SpecFile f = parse_spec(kFullSpec);
  REQUIRE(f.digraphs.size() == 2);
  CHECK(f.digraphs[0].first == "A");
  CHECK(f.digraphs[0].second.rank() == Rank::finite(1));
  CHECK(f.digraphs[0].second.arc_count() == 2);
  CHECK(f.digraphs[1].second.ditips(Rank::finite(0)).size() == 1);

  REQUIRE(f.family.has_value());
  CHECK(f.family_prefix_names == std::vector<std::string>{"B"});
  CHECK(f.family_cycle_names == std::vector<std::string>{"A", "B"});
  CHECK(f.family->threshold() == 1);
  CHECK(f.family->period() == 2);

  REQUIRE(f.sequences.size() == 3);
  const EPSequence* sp = f.find_sequence("sp");
  REQUIRE(sp != nullptr);
  CHECK(sp->kind == SeqKind::ditip(Rank::finite(0)));
  CHECK(sp->threshold() == 2);
  CHECK_FALSE(sp->at(0).has_value());
  CHECK(sp->at(1)->id == "p");
  CHECK(sp->at(2)->id == "p");
  CHECK_FALSE(sp->at(3).has_value());

  const EPSequence* se = f.find_sequence("se");
  REQUIRE(se != nullptr);
  CHECK(se->kind == SeqKind::arc_end());
  CHECK(se->at(0)->side == Side::source);
  CHECK(se->at(1)->side == Side::sink);

  const EPSequence* sa = f.find_sequence("sa");
  REQUIRE(sa != nullptr);
  CHECK(sa->kind == SeqKind::arc());

  REQUIRE(f.epsets.size() == 2);
  const EPSet* evens = f.find_epset("evens");
  REQUIRE(evens != nullptr);
  CHECK(evens->member(0));
  CHECK_FALSE(evens->member(1));
  const EPSet* bumpy = f.find_epset("bumpy");
  REQUIRE(bumpy != nullptr);
  CHECK(bumpy->member(1));
  CHECK(bumpy->member(3));
  CHECK_FALSE(bumpy->member(2));
  CHECK(bumpy->member(6));

  CHECK(f.find_digraph("nope") == nullptr);
  CHECK(f.find_sequence("nope") == nullptr);
  CHECK(f.find_epset("nope") == nullptr);
}

TEST_CASE("print_spec round-trips through parse_spec") {
  const SpecFile f = parse_spec(kFullSpec);
  const std::string printed = print_spec(f);
  const SpecFile again = parse_spec(printed);

  REQUIRE(again.digraphs.size() == f.digraphs.size());
  for (size_t i = 0; i < f.digraphs.size(); ++i) {
    CHECK(again.digraphs[i].first == f.digraphs[i].first);
    CHECK(again.digraphs[i].second == f.digraphs[i].second);
  }
  CHECK(again.family_prefix_names == f.family_prefix_names);
  CHECK(again.family_cycle_names == f.family_cycle_names);
  REQUIRE(again.sequences.size() == f.sequences.size());
  for (size_t i = 0; i < f.sequences.size(); ++i) {
    CHECK(again.sequences[i].first == f.sequences[i].first);
    CHECK(again.sequences[i].second == f.sequences[i].second);
  }
  REQUIRE(again.epsets.size() == f.epsets.size());
  for (size_t i = 0; i < f.epsets.size(); ++i) {
    CHECK(again.epsets[i].first == f.epsets[i].first);
    CHECK(again.epsets[i].second.identical_to(f.epsets[i].second));
  }

  // printing is a fixed point: print(parse(print(f))) == print(f)
  CHECK(print_spec(again) == printed);
}

TEST_CASE("warrow and omega digraphs survive the round trip") {
  const std::string text = R"(digraph W rank warrow {
  arcs a;
  v0 [a.src] [a.snk];
  ditips0 p:in;
  v1 [p];
  ditips1 r:out;
  v2 [r];
}
digraph Om rank omega {
  arcs a;
  v0 [a.src] [a.snk];
  ditips0 p:in;
  v1 [p];
  ditipswarrow wt:in wu:out;
  vomega [wt wu];
}
seq sw rank warrow {
  cycle [wt wu];
}
)";
  const SpecFile f = parse_spec(text);
  REQUIRE(f.digraphs.size() == 2);
  CHECK(f.digraphs[0].second.rank() == Rank::warrow());
  CHECK(f.digraphs[0].second.depth() == 2);
  CHECK(f.digraphs[1].second.rank() == Rank::omega());
  CHECK(f.digraphs[1].second.ditips(Rank::warrow()).size() == 2);
  const EPSequence* sw = f.find_sequence("sw");
  REQUIRE(sw != nullptr);
  CHECK(sw->kind == SeqKind::ditip(Rank::warrow()));

  const SpecFile again = parse_spec(print_spec(f));
  CHECK(again.digraphs[0].second == f.digraphs[0].second);
  CHECK(again.digraphs[1].second == f.digraphs[1].second);
}

TEST_CASE("parse errors carry positions and causes") {
  // unknown digraph name in the family
  ParseError e1 = capture("family { cycle [Nope]; }");
  CHECK(e1.line() == 1);
  CHECK(std::string(e1.what()).find("Nope") != std::string::npos);

  // epset keys must come in declaration order
  ParseError e2 =
      capture("epset x {from: 0, prefix: [], mod: 2, residues: [0]};");
  CHECK(e2.line() == 1);

  // sequences cannot sit at rank omega (omega has vertices, not tips)
  ParseError e3 = capture("seq s rank omega { cycle [x]; }");
  CHECK(std::string(e3.what()).find("omega") != std::string::npos);

  // duplicate names are rejected
  const std::string dup = R"(digraph D rank 0 {
  arcs a;
  v0 [a.src] [a.snk];
}
digraph D rank 0 {
  arcs a;
  v0 [a.src] [a.snk];
}
)";
  ParseError e4 = capture(dup);
  CHECK(e4.line() == 5);

  // a validation failure surfaces as a parse error at the digraph
  ParseError e5 = capture("digraph D rank 0 { arcs a; v0 [a.src]; }");
  CHECK(std::string(e5.what()).find("a.snk") != std::string::npos);

  // stray characters are positioned precisely
  ParseError e6 = capture("digraph D rank 0 {\n  arcs a$;\n}");
  CHECK(e6.line() == 2);
  CHECK(e6.col() == 9);

  // dotted entries belong to end sequences only
  ParseError e7 = capture("seq s rank 0 { cycle [a.src]; }");
  CHECK(e7.line() == 1);

  // two families in one file
  ParseError e8 = capture(
      "digraph D rank 0 { arcs a; v0 [a.src] [a.snk]; }\n"
      "family { cycle [D]; }\nfamily { cycle [D]; }");
  CHECK(e8.line() == 3);
}

TEST_CASE("epset literals parse and print raw fields") {
  const EPSet s = parse_epset("{prefix: [0, 5], from: 6, mod: 4, residues: [1, 3]}");
  CHECK(s.member(0));
  CHECK(s.member(5));
  CHECK_FALSE(s.member(1));
  CHECK(s.member(9));
  CHECK(s.member(7));
  CHECK_FALSE(s.member(8));

  const std::string printed = print_epset(s);
  CHECK(parse_epset(printed).identical_to(s));

  CHECK_THROWS_AS((void)parse_epset("{prefix: [], mod: 2}"), ParseError);
  CHECK_THROWS_AS((void)parse_epset("{prefix: [], from: 0, mod: 0, residues: []}"),
                  ParseError);
  // prefix members at or beyond the threshold are invalid
  CHECK_THROWS_AS(
      (void)parse_epset("{prefix: [7], from: 2, mod: 2, residues: []}"),
      ParseError);
}

TEST_CASE("dot output is well formed for all three renderers") {
  MultiplesOracle multiples;
  for (const auto& [name, fam] : testsupport::corpus()) {
    CAPTURE(name);
    const std::string d0 = to_dot(fam.cycle()[0], "G0");
    CHECK(d0.rfind("digraph", 0) == 0);
    CHECK(testsupport::dot_lint(d0).empty());

    const NsDigraph nsd = build_ns_digraph(fam, multiples, fam.rank(),
                                           fam.period());
    const std::string d1 = to_dot(nsd, "NsD");
    CHECK(d1.rfind("digraph", 0) == 0);
    CHECK(testsupport::dot_lint(d1).empty());

    const NsGraph g = forget_ns(nsd);
    const std::string d2 = to_dot(g, "NsG");
    CHECK(d2.rfind("graph", 0) == 0);
    CHECK(testsupport::dot_lint(d2).empty());
  }
}

TEST_CASE("dot classes are labeled with representative and resolution") {
  MultiplesOracle multiples;
  const FamilySpec fam = testsupport::fam_cycle2_shorting();
  const NsDigraph nsd = build_ns_digraph(fam, multiples, Rank::finite(1), 2);
  const std::string dot = to_dot(nsd);
  CHECK(dot.find("@2]") != std::string::npos);
  CHECK(dot.find("[a@2]") != std::string::npos);
}

TEST_CASE("standard digraph dot matches the golden file") {
  const FamilySpec fam = testsupport::fam_const_d1();
  const std::string dot = to_dot(fam.cycle()[0], "G1");
  CHECK(dot == read_golden("g1_const.dot"));
}
