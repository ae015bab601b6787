#include "tfdg/ranked_digraph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace tfdg {

std::string to_string(const Rank& r) {
  switch (r.kind) {
    case Rank::Kind::finite:
      return std::to_string(r.value);
    case Rank::Kind::warrow:
      return "warrow";
    case Rank::Kind::omega:
      return "omega";
  }
  return "?";
}

Rank parse_rank(const std::string& text) {
  if (text == "warrow") return Rank::warrow();
  if (text == "omega") return Rank::omega();
  uint64_t k = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, k);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw std::invalid_argument("invalid rank '" + text +
                                "' (expected a number, warrow, or omega)");
  }
  return Rank::finite(k);
}

std::string to_string(Side s) { return s == Side::source ? "src" : "snk"; }

std::string to_string(Polarity p) { return p == Polarity::in ? "in" : "out"; }

std::string to_string(const ArcEnd& e) { return e.arc + "." + to_string(e.side); }

std::string ValidationReport::joined() const {
  std::ostringstream out;
  for (size_t i = 0; i < problems.size(); ++i) {
    if (i > 0) out << "; ";
    out << problems[i];
  }
  return out.str();
}

ValidationError::ValidationError(ValidationReport report)
    : std::runtime_error(report.ok() ? "validation failed" : report.joined()),
      report_(std::move(report)) {}

namespace {

// Checks that `blocks` is a partition of `universe` (every element in
// exactly one nonempty block) and appends one problem per violation.
void check_partition(const std::vector<std::vector<std::string>>& blocks,
                     const std::vector<std::string>& universe,
                     const std::string& what,
                     std::vector<std::string>& problems) {
  std::map<std::string, int> seen;
  for (const auto& id : universe) seen[id] = 0;
  for (const auto& block : blocks) {
    if (block.empty()) {
      problems.push_back(what + " has an empty block");
      continue;
    }
    for (const auto& id : block) {
      auto it = seen.find(id);
      if (it == seen.end()) {
        problems.push_back(what + " references unknown id '" + id + "'");
      } else if (++it->second > 1) {
        problems.push_back("'" + id + "' appears in more than one block of " +
                           what);
      }
    }
  }
  for (const auto& [id, count] : seen) {
    if (count == 0) {
      problems.push_back("'" + id + "' is not covered by " + what);
    }
  }
}

void check_unique_ids(const std::vector<std::string>& ids,
                      const std::string& what,
                      std::vector<std::string>& problems) {
  std::map<std::string, int> counts;
  for (const auto& id : ids) {
    if (id.empty()) {
      problems.push_back(what + " contains an empty id");
    } else if (++counts[id] == 2) {
      problems.push_back("duplicate id '" + id + "' in " + what);
    }
  }
}

}  // namespace

ValidationReport validate(const DigraphData& d) {
  ValidationReport report;
  auto& problems = report.problems;

  if (d.arcs.empty()) problems.push_back("digraph has no arcs");
  check_unique_ids(d.arcs, "arcs", problems);

  switch (d.rank.kind) {
    case Rank::Kind::finite:
      if (d.levels.size() != d.rank.value) {
        problems.push_back("rank " + to_string(d.rank) + " requires exactly " +
                           std::to_string(d.rank.value) + " levels, found " +
                           std::to_string(d.levels.size()));
      }
      break;
    case Rank::Kind::warrow:
    case Rank::Kind::omega:
      if (d.levels.empty()) {
        problems.push_back("rank " + to_string(d.rank) +
                           " requires at least one level");
      }
      break;
  }
  if (d.rank.kind == Rank::Kind::omega) {
    if (d.warrow_tips.empty()) {
      problems.push_back("rank omega requires a nonempty set of warrow ditips");
    }
  } else {
    if (!d.warrow_tips.empty()) {
      problems.push_back("warrow ditips are only allowed at rank omega");
    }
    if (!d.v_omega.empty()) {
      problems.push_back("an omega vertex partition is only allowed at rank omega");
    }
  }

  // v0 must partition the 2*|arcs| arc ends.
  {
    std::vector<std::string> universe;
    for (const auto& arc : d.arcs) {
      universe.push_back(to_string(ArcEnd{arc, Side::source}));
      universe.push_back(to_string(ArcEnd{arc, Side::sink}));
    }
    std::vector<std::vector<std::string>> blocks;
    for (const auto& block : d.v0) {
      std::vector<std::string> names;
      for (const auto& end : block) names.push_back(to_string(end));
      blocks.push_back(std::move(names));
    }
    check_partition(blocks, universe, "v0", problems);
  }

  for (size_t k = 0; k < d.levels.size(); ++k) {
    const Level& level = d.levels[k];
    const std::string tips_name = "ditips at rank " + std::to_string(k);
    if (level.tips.empty()) {
      problems.push_back(tips_name + " is empty");
    }
    std::vector<std::string> ids;
    for (const auto& tip : level.tips) ids.push_back(tip.id);
    check_unique_ids(ids, tips_name, problems);
    check_partition(level.vertices, ids,
                    "vertex partition at rank " + std::to_string(k + 1),
                    problems);
  }

  if (d.rank.kind == Rank::Kind::omega) {
    std::vector<std::string> ids;
    for (const auto& tip : d.warrow_tips) ids.push_back(tip.id);
    check_unique_ids(ids, "warrow ditips", problems);
    check_partition(d.v_omega, ids, "omega vertex partition", problems);
  }

  return report;
}

RankedDigraph::RankedDigraph(DigraphData data) : data_(std::move(data)) {
  ValidationReport report = validate(data_);
  if (!report.ok()) throw ValidationError(std::move(report));
  build_tables();
}

void RankedDigraph::build_tables() {
  for (size_t i = 0; i < data_.arcs.size(); ++i) {
    arc_index_[data_.arcs[i]] = i;
  }
  for (size_t b = 0; b < data_.v0.size(); ++b) {
    for (const auto& end : data_.v0[b]) {
      end_block_[end] = b;
    }
  }
  level_tips_.resize(data_.levels.size());
  for (size_t k = 0; k < data_.levels.size(); ++k) {
    const Level& level = data_.levels[k];
    auto& table = level_tips_[k];
    for (size_t t = 0; t < level.tips.size(); ++t) {
      table[level.tips[t].id] = TipInfo{t, 0, level.tips[t].polarity};
    }
    for (size_t b = 0; b < level.vertices.size(); ++b) {
      for (const auto& id : level.vertices[b]) {
        table[id].block = b;
      }
    }
  }
  for (size_t t = 0; t < data_.warrow_tips.size(); ++t) {
    warrow_tips_[data_.warrow_tips[t].id] =
        TipInfo{t, 0, data_.warrow_tips[t].polarity};
  }
  for (size_t b = 0; b < data_.v_omega.size(); ++b) {
    for (const auto& id : data_.v_omega[b]) {
      warrow_tips_[id].block = b;
    }
  }
}

bool RankedDigraph::has_arc(const std::string& id) const {
  return arc_index_.count(id) > 0;
}

size_t RankedDigraph::arc_index(const std::string& id) const {
  auto it = arc_index_.find(id);
  if (it == arc_index_.end()) {
    throw std::invalid_argument("unknown arc '" + id + "'");
  }
  return it->second;
}

std::vector<ArcEnd> RankedDigraph::ends() const {
  std::vector<ArcEnd> out;
  out.reserve(2 * data_.arcs.size());
  for (const auto& arc : data_.arcs) {
    out.push_back(ArcEnd{arc, Side::source});
    out.push_back(ArcEnd{arc, Side::sink});
  }
  return out;
}

const std::vector<Ditip>& RankedDigraph::ditips(const Rank& tip_rank) const {
  switch (tip_rank.kind) {
    case Rank::Kind::finite:
      if (tip_rank.value < data_.levels.size()) {
        return data_.levels[tip_rank.value].tips;
      }
      throw std::invalid_argument("no ditips at rank " + to_string(tip_rank) +
                                  " in a digraph of depth " +
                                  std::to_string(data_.levels.size()));
    case Rank::Kind::warrow:
      if (data_.rank == Rank::omega()) return data_.warrow_tips;
      throw std::invalid_argument(
          "warrow ditips exist only in omega digraphs, this one has rank " +
          to_string(data_.rank));
    case Rank::Kind::omega:
      break;
  }
  throw std::invalid_argument("rank omega has vertices but no ditips");
}

namespace {

const char* tip_scope_name(const Rank& tip_rank) {
  return tip_rank.kind == Rank::Kind::warrow ? "warrow ditip" : "ditip";
}

}  // namespace

bool RankedDigraph::has_ditip(const Rank& tip_rank, const std::string& id) const {
  if (tip_rank.kind == Rank::Kind::finite) {
    return tip_rank.value < level_tips_.size() &&
           level_tips_[tip_rank.value].count(id) > 0;
  }
  if (tip_rank.kind == Rank::Kind::warrow) {
    return data_.rank == Rank::omega() && warrow_tips_.count(id) > 0;
  }
  return false;
}

Polarity RankedDigraph::polarity_of(const Rank& tip_rank,
                                    const std::string& id) const {
  if (tip_rank.kind == Rank::Kind::finite &&
      tip_rank.value < level_tips_.size()) {
    auto it = level_tips_[tip_rank.value].find(id);
    if (it != level_tips_[tip_rank.value].end()) return it->second.polarity;
  } else if (tip_rank.kind == Rank::Kind::warrow && data_.rank == Rank::omega()) {
    auto it = warrow_tips_.find(id);
    if (it != warrow_tips_.end()) return it->second.polarity;
  }
  throw std::invalid_argument("unknown " + std::string(tip_scope_name(tip_rank)) +
                              " '" + id + "' at rank " + to_string(tip_rank));
}

size_t RankedDigraph::v0_block_of(const ArcEnd& end) const {
  auto it = end_block_.find(end);
  if (it == end_block_.end()) {
    throw std::invalid_argument("unknown arc end '" + to_string(end) + "'");
  }
  return it->second;
}

bool RankedDigraph::same_v0_block(const ArcEnd& a, const ArcEnd& b) const {
  return v0_block_of(a) == v0_block_of(b);
}

size_t RankedDigraph::vertex_block_of(const Rank& tip_rank,
                                      const std::string& tip_id) const {
  if (tip_rank.kind == Rank::Kind::finite &&
      tip_rank.value < level_tips_.size()) {
    auto it = level_tips_[tip_rank.value].find(tip_id);
    if (it != level_tips_[tip_rank.value].end()) return it->second.block;
  } else if (tip_rank.kind == Rank::Kind::warrow && data_.rank == Rank::omega()) {
    auto it = warrow_tips_.find(tip_id);
    if (it != warrow_tips_.end()) return it->second.block;
  }
  throw std::invalid_argument("unknown " + std::string(tip_scope_name(tip_rank)) +
                              " '" + tip_id + "' at rank " + to_string(tip_rank));
}

bool RankedDigraph::shorted(const Rank& tip_rank, const std::string& a,
                            const std::string& b) const {
  return vertex_block_of(tip_rank, a) == vertex_block_of(tip_rank, b);
}

RankedDigraph RankedDigraph::slice(const Rank& target) const {
  DigraphData out;
  out.arcs = data_.arcs;
  out.v0 = data_.v0;
  switch (target.kind) {
    case Rank::Kind::finite:
      if (target.value > data_.levels.size()) {
        throw std::invalid_argument(
            "cannot slice to rank " + to_string(target) +
            ": only " + std::to_string(data_.levels.size()) +
            " levels are present");
      }
      out.rank = target;
      out.levels.assign(data_.levels.begin(),
                        data_.levels.begin() +
                            static_cast<ptrdiff_t>(target.value));
      return RankedDigraph(std::move(out));
    case Rank::Kind::warrow:
      if (data_.rank < Rank::warrow()) {
        throw std::invalid_argument("cannot slice rank " +
                                    to_string(data_.rank) + " to warrow");
      }
      out.rank = Rank::warrow();
      out.levels = data_.levels;
      return RankedDigraph(std::move(out));
    case Rank::Kind::omega:
      if (data_.rank != Rank::omega()) {
        throw std::invalid_argument("cannot slice rank " +
                                    to_string(data_.rank) + " to omega");
      }
      return *this;
  }
  throw std::invalid_argument("invalid slice target");
}

}  // namespace tfdg
