#pragma once

#include "tfdg/ultrapower.hpp"

namespace tfdg {

/// Which of a branch's two undirected extremities.  Mirrors Side with the
/// orientation meaning removed: a forgotten source end becomes the first
/// slot, a forgotten sink end the second.
enum class TipSlot { first, second };

std::string to_string(TipSlot s);

struct BranchTip {
  std::string branch;
  TipSlot slot = TipSlot::first;

  friend auto operator<=>(const BranchTip&, const BranchTip&) = default;
};

std::string to_string(const BranchTip& t);

/// One layer of an undirected tower: rank-k tips (ids only, no polarity) and
/// the rank-(k+1) node partition.
struct GraphLevel {
  std::vector<std::string> tips;
  std::vector<std::vector<std::string>> vertices;

  friend auto operator<=>(const GraphLevel&, const GraphLevel&) = default;
};

/// A ranked graph: what remains of a ranked digraph when every direction is
/// forgotten.  Branches replace arcs, branch tips replace arc ends, and the
/// partitions keep their exact block structure.
struct GraphData {
  Rank rank = Rank::finite(0);
  std::vector<std::string> branches;
  std::vector<std::vector<BranchTip>> x0;
  std::vector<GraphLevel> levels;
  std::vector<std::string> warrow_tips;
  std::vector<std::vector<std::string>> x_omega;

  friend auto operator<=>(const GraphData&, const GraphData&) = default;
};

/// Forgets directions: one branch per arc, source/sink ends become
/// first/second tips, ditips lose their polarity, every partition block is
/// carried over unchanged.
GraphData forget(const RankedDigraph& d);

/// The partition laws of ranked digraphs, checked on a graph (polarity plays
/// no role in them).
ValidationReport validate_graph(const GraphData& g);

/// Restriction to a lower rank, mirroring RankedDigraph::slice so that
/// forgetting commutes with slicing.
GraphData slice_graph(const GraphData& g, const Rank& target);

/// Embeds a graph back into digraph form for reuse of the digraph machinery:
/// branches become arcs (first/second slots as source/sink) and every tip an
/// in ditip.  The polarity is a placeholder; consumers of the result that
/// care about direction have left the underlying world.
DigraphData as_digraph(const GraphData& g);

struct NsGraphLevel {
  std::vector<EPSequence> tips;
  std::vector<std::vector<size_t>> vertices;

  friend bool operator==(const NsGraphLevel&, const NsGraphLevel&) = default;
};

/// A nonstandard graph: a built nonstandard digraph with its polarity
/// columns removed.  Representatives are shared verbatim (sequences name
/// elements by id; direction was never part of them).
struct NsGraph {
  Rank rank = Rank::finite(0);
  uint64_t resolution = 1;
  std::string oracle;
  std::vector<EPSequence> branches;
  std::vector<EPSequence> branch_tips;
  std::vector<std::vector<size_t>> x0;
  std::vector<NsGraphLevel> levels;
  NsGraphLevel omega;

  friend bool operator==(const NsGraph&, const NsGraph&) = default;
};

/// Forgets directions classwise: branch classes from arc classes, tip classes
/// from end classes, levels without polarities.  Class counts never change.
NsGraph forget_ns(const NsDigraph& nsd);

/// Builds the nonstandard graph by first forgetting every family member and
/// then running the ultrapower construction on the result.  Equals
/// forget_ns(build_ns_digraph(...)) structurally; both orders are exposed so
/// the commutation is testable.
NsGraph build_ns_graph(const FamilySpec& fam, Oracle& oracle, const Rank& target,
                       uint64_t resolution, size_t rank_budget = all_levels);

}  // namespace tfdg
