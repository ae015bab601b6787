#include "tfdg/underlying.hpp"

namespace tfdg {

std::string to_string(TipSlot s) { return s == TipSlot::first ? "1" : "2"; }

std::string to_string(const BranchTip& t) {
  return t.branch + "." + to_string(t.slot);
}

namespace {

TipSlot slot_of(Side side) {
  return side == Side::source ? TipSlot::first : TipSlot::second;
}

Side side_of(TipSlot slot) {
  return slot == TipSlot::first ? Side::source : Side::sink;
}

}  // namespace

GraphData forget(const RankedDigraph& d) {
  const DigraphData& in = d.data();
  GraphData out;
  out.rank = in.rank;
  out.branches = in.arcs;
  for (const auto& block : in.v0) {
    std::vector<BranchTip> tips;
    tips.reserve(block.size());
    for (const auto& end : block) {
      tips.push_back(BranchTip{end.arc, slot_of(end.side)});
    }
    out.x0.push_back(std::move(tips));
  }
  for (const auto& level : in.levels) {
    GraphLevel g;
    g.tips.reserve(level.tips.size());
    for (const auto& tip : level.tips) g.tips.push_back(tip.id);
    g.vertices = level.vertices;
    out.levels.push_back(std::move(g));
  }
  for (const auto& tip : in.warrow_tips) out.warrow_tips.push_back(tip.id);
  out.x_omega = in.v_omega;
  return out;
}

DigraphData as_digraph(const GraphData& g) {
  DigraphData out;
  out.rank = g.rank;
  out.arcs = g.branches;
  for (const auto& block : g.x0) {
    std::vector<ArcEnd> ends;
    ends.reserve(block.size());
    for (const auto& tip : block) {
      ends.push_back(ArcEnd{tip.branch, side_of(tip.slot)});
    }
    out.v0.push_back(std::move(ends));
  }
  for (const auto& level : g.levels) {
    Level l;
    l.tips.reserve(level.tips.size());
    for (const auto& id : level.tips) l.tips.push_back(Ditip{id, Polarity::in});
    l.vertices = level.vertices;
    out.levels.push_back(std::move(l));
  }
  for (const auto& id : g.warrow_tips) {
    out.warrow_tips.push_back(Ditip{id, Polarity::in});
  }
  out.v_omega = g.x_omega;
  return out;
}

ValidationReport validate_graph(const GraphData& g) {
  return validate(as_digraph(g));
}

GraphData slice_graph(const GraphData& g, const Rank& target) {
  return forget(RankedDigraph(as_digraph(g)).slice(target));
}

NsGraph forget_ns(const NsDigraph& nsd) {
  NsGraph out;
  out.rank = nsd.rank;
  out.resolution = nsd.resolution;
  out.oracle = nsd.oracle;
  out.branches = nsd.arcs;
  out.branch_tips = nsd.ends;
  out.x0 = nsd.v0;
  for (const auto& level : nsd.levels) {
    out.levels.push_back(NsGraphLevel{level.tips, level.vertices});
  }
  out.omega = NsGraphLevel{nsd.omega.tips, nsd.omega.vertices};
  return out;
}

NsGraph build_ns_graph(const FamilySpec& fam, Oracle& oracle, const Rank& target,
                       uint64_t resolution, size_t rank_budget) {
  std::vector<RankedDigraph> prefix;
  prefix.reserve(fam.prefix().size());
  for (const auto& d : fam.prefix()) {
    prefix.emplace_back(as_digraph(forget(d)));
  }
  std::vector<RankedDigraph> cycle;
  cycle.reserve(fam.cycle().size());
  for (const auto& d : fam.cycle()) {
    cycle.emplace_back(as_digraph(forget(d)));
  }
  FamilySpec forgotten(std::move(prefix), std::move(cycle));
  return forget_ns(
      build_ns_digraph(forgotten, oracle, target, resolution, rank_budget));
}

}  // namespace tfdg
