#include "tfdg/family.hpp"

#include <algorithm>
#include <stdexcept>

namespace tfdg {

std::string to_string(const SeqKind& k) {
  switch (k.kind) {
    case ElemKind::arc:
      return "arc";
    case ElemKind::arc_end:
      return "end";
    case ElemKind::ditip:
      return "ditip(" + to_string(k.tip_rank) + ")";
  }
  return "?";
}

std::string format_element(const SeqKind& kind, const ElemRef& e) {
  if (kind.kind == ElemKind::arc_end) {
    return e.id + "." + to_string(e.side);
  }
  return e.id;
}

const std::optional<ElemRef>& EPSequence::at(uint64_t n) const {
  if (n < prefix.size()) return prefix[n];
  if (cycle.empty()) {
    throw std::invalid_argument("sequence has an empty cycle");
  }
  return cycle[(n - prefix.size()) % cycle.size()];
}

std::string format_sequence(const EPSequence& s) {
  std::string out;
  auto entry = [&](const std::optional<ElemRef>& e) {
    return e ? format_element(s.kind, *e) : std::string("_");
  };
  if (!s.prefix.empty()) {
    out += "[";
    for (size_t i = 0; i < s.prefix.size(); ++i) {
      if (i > 0) out += " ";
      out += entry(s.prefix[i]);
    }
    out += "] ";
  }
  if (s.cycle.size() == 1) {
    out += entry(s.cycle[0]);
  } else {
    out += "(";
    for (size_t i = 0; i < s.cycle.size(); ++i) {
      if (i > 0) out += " ";
      out += entry(s.cycle[i]);
    }
    out += ")";
  }
  return out;
}

FamilySpec::FamilySpec(std::vector<RankedDigraph> prefix,
                       std::vector<RankedDigraph> cycle)
    : prefix_(std::move(prefix)), cycle_(std::move(cycle)), rank_(Rank::finite(0)) {
  if (cycle_.empty()) {
    throw std::invalid_argument("family cycle must be nonempty");
  }
  rank_ = cycle_.front().rank();
  depth_ = cycle_.front().depth();
  for (size_t i = 1; i < cycle_.size(); ++i) {
    if (cycle_[i].rank() != rank_) {
      throw std::invalid_argument(
          "cycle members must share one rank: position 0 has rank " +
          to_string(rank_) + ", position " + std::to_string(i) + " has rank " +
          to_string(cycle_[i].rank()));
    }
    depth_ = std::min(depth_, cycle_[i].depth());
  }
  for (size_t i = 0; i < prefix_.size(); ++i) {
    if (prefix_[i].rank() != rank_) {
      notes_.push_back("prefix member " + std::to_string(i) + " has rank " +
                       to_string(prefix_[i].rank()) +
                       " while the cycle declares rank " + to_string(rank_));
    }
  }
}

const RankedDigraph& FamilySpec::at(uint64_t n) const {
  if (n < prefix_.size()) return prefix_[n];
  return cycle_[(n - prefix_.size()) % cycle_.size()];
}

bool element_exists(const RankedDigraph& d, const SeqKind& kind,
                    const ElemRef& e) {
  switch (kind.kind) {
    case ElemKind::arc:
    case ElemKind::arc_end:
      return d.has_arc(e.id);
    case ElemKind::ditip:
      return d.has_ditip(kind.tip_rank, e.id);
  }
  return false;
}

std::vector<ElemRef> elements_of(const RankedDigraph& d, const SeqKind& kind) {
  std::vector<ElemRef> out;
  switch (kind.kind) {
    case ElemKind::arc:
      for (const auto& arc : d.data().arcs) out.push_back(ElemRef::arc(arc));
      break;
    case ElemKind::arc_end:
      for (const auto& arc : d.data().arcs) {
        out.push_back(ElemRef::end(arc, Side::source));
        out.push_back(ElemRef::end(arc, Side::sink));
      }
      break;
    case ElemKind::ditip: {
      const Rank& r = kind.tip_rank;
      const bool available =
          (r.kind == Rank::Kind::finite && r.value < d.depth()) ||
          (r.kind == Rank::Kind::warrow && d.rank() == Rank::omega());
      if (available) {
        for (const auto& tip : d.ditips(r)) out.push_back(ElemRef::tip(tip.id));
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool present_at(const FamilySpec& fam, const EPSequence& s, uint64_t n) {
  const std::optional<ElemRef>& entry = s.at(n);
  return entry.has_value() && element_exists(fam.at(n), s.kind, *entry);
}

EPSet predicate_set(const FamilySpec& fam,
                    const std::vector<const EPSequence*>& seqs,
                    const std::function<bool(uint64_t)>& pred) {
  uint64_t threshold = fam.threshold();
  uint64_t period = fam.period();
  for (const EPSequence* s : seqs) {
    threshold = std::max(threshold, s->threshold());
    if (s->period() == 0) {
      throw std::invalid_argument("sequence has an empty cycle");
    }
    period = lcm_checked(period, s->period());
  }
  // Past every threshold, all alignments are simultaneously periodic with the
  // joint period, so one window pins the whole pattern; positions below the
  // threshold are enumerated directly.
  std::vector<uint64_t> residues;
  for (uint64_t n = threshold; n < threshold + period; ++n) {
    if (pred(n)) residues.push_back(n % period);
  }
  std::vector<uint64_t> exceptions;
  for (uint64_t n = 0; n < threshold; ++n) {
    if (pred(n)) exceptions.push_back(n);
  }
  return EPSet(threshold, period, residues, exceptions).normalized();
}

EPSet presence_set(const FamilySpec& fam, const EPSequence& s) {
  return predicate_set(fam, {&s},
                       [&](uint64_t n) { return present_at(fam, s, n); });
}

bool seq_valid(const EPSequence& s, const FamilySpec& fam, Oracle& oracle) {
  if (s.cycle.empty()) return false;
  return oracle.decide(presence_set(fam, s));
}

}  // namespace tfdg
