#include "tfdg/ultrapower.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tfdg {

namespace {

void require_valid(const EPSequence& s, const FamilySpec& fam, Oracle& oracle,
                   const char* who) {
  if (!seq_valid(s, fam, oracle)) {
    throw std::invalid_argument(std::string(who) +
                                ": sequence is not present almost everywhere");
  }
}

bool shorted_at(const FamilySpec& fam, const EPSequence& s, const EPSequence& t,
                uint64_t n) {
  if (!present_at(fam, s, n) || !present_at(fam, t, n)) return false;
  const RankedDigraph& d = fam.at(n);
  const ElemRef& a = *s.at(n);
  const ElemRef& b = *t.at(n);
  if (s.kind.kind == ElemKind::arc_end) {
    return d.same_v0_block(ArcEnd{a.id, a.side}, ArcEnd{b.id, b.side});
  }
  return d.shorted(s.kind.tip_rank, a.id, b.id);
}

}  // namespace

bool ns_equal(const EPSequence& s, const EPSequence& t, const FamilySpec& fam,
              Oracle& oracle) {
  if (s.kind != t.kind) {
    throw std::invalid_argument("ns_equal: kind mismatch (" + to_string(s.kind) +
                                " vs " + to_string(t.kind) + ")");
  }
  require_valid(s, fam, oracle, "ns_equal");
  require_valid(t, fam, oracle, "ns_equal");
  return oracle.decide(predicate_set(fam, {&s, &t}, [&](uint64_t n) {
    return present_at(fam, s, n) && present_at(fam, t, n) && *s.at(n) == *t.at(n);
  }));
}

Polarity ns_polarity(const EPSequence& s, const FamilySpec& fam, Oracle& oracle) {
  if (s.kind.kind != ElemKind::ditip) {
    throw std::invalid_argument("ns_polarity: only ditip sequences carry polarity");
  }
  require_valid(s, fam, oracle, "ns_polarity");
  const bool is_in = oracle.decide(predicate_set(fam, {&s}, [&](uint64_t n) {
    return present_at(fam, s, n) &&
           fam.at(n).polarity_of(s.kind.tip_rank, s.at(n)->id) == Polarity::in;
  }));
  return is_in ? Polarity::in : Polarity::out;
}

bool ns_shorted(const EPSequence& s, const EPSequence& t, const FamilySpec& fam,
                Oracle& oracle) {
  if (s.kind != t.kind) {
    throw std::invalid_argument("ns_shorted: kind mismatch (" +
                                to_string(s.kind) + " vs " + to_string(t.kind) +
                                ")");
  }
  if (s.kind.kind == ElemKind::arc) {
    throw std::invalid_argument(
        "ns_shorted: defined for ditip and arc-end sequences, not arcs");
  }
  require_valid(s, fam, oracle, "ns_shorted");
  require_valid(t, fam, oracle, "ns_shorted");
  return oracle.decide(predicate_set(
      fam, {&s, &t}, [&](uint64_t n) { return shorted_at(fam, s, t, n); }));
}

bool check_independence(const EPSequence& s, const EPSequence& s_alt,
                        const EPSequence& t, const EPSequence& t_alt,
                        const FamilySpec& fam, Oracle& oracle) {
  if (!ns_equal(s, s_alt, fam, oracle) || !ns_equal(t, t_alt, fam, oracle)) {
    throw std::invalid_argument(
        "check_independence: the alternates must be equal to their originals");
  }
  return ns_shorted(s, t, fam, oracle) == ns_shorted(s_alt, t_alt, fam, oracle);
}

NsElement standard_embedding(const RankedDigraph& d, Oracle& oracle,
                             const SeqKind& kind, const ElemRef& elem) {
  if (!element_exists(d, kind, elem)) {
    throw std::invalid_argument("standard_embedding: no " + to_string(kind) +
                                " '" + format_element(kind, elem) +
                                "' in the digraph");
  }
  EPSequence rep;
  rep.kind = kind;
  rep.cycle.push_back(elem);
  return NsElement{std::move(rep), oracle.describe()};
}

std::string class_label(const EPSequence& rep, uint64_t resolution) {
  return "[" + format_sequence(rep) + "@" + std::to_string(resolution) + "]";
}

namespace {

std::vector<uint64_t> divisors_ascending(uint64_t r) {
  std::vector<uint64_t> out;
  for (uint64_t d = 1; d <= r; ++d) {
    if (r % d == 0) out.push_back(d);
  }
  return out;
}

// Precomputed per-residue element pools for cycle-aligned enumeration at one
// resolution.  Positions n >= threshold with n % R == j always land on the
// same cycle member, so presence and agreement of purely periodic tuples
// reduce to one check per residue class plus exact evaluation of the finitely
// many prefix positions.
class Aligner {
public:
  Aligner(const FamilySpec& fam, const SeqKind& kind, uint64_t resolution)
      : fam_(fam), kind_(kind), resolution_(resolution), pool_(resolution) {
    const uint64_t p = fam.period();
    const uint64_t n0 = fam.threshold();
    for (uint64_t j = 0; j < resolution; ++j) {
      const uint64_t slot = ((j % p) + p - (n0 % p)) % p;
      pool_[j] = elements_of(fam.cycle()[slot], kind_);
    }
  }

  const std::vector<ElemRef>& pool(uint64_t j) const { return pool_[j]; }

  bool tail_present(const std::optional<ElemRef>& e, uint64_t j) const {
    return e.has_value() &&
           std::binary_search(pool_[j].begin(), pool_[j].end(), *e);
  }

  using Tuple = std::vector<std::optional<ElemRef>>;

  EPSet presence(const Tuple& tuple) const {
    const uint64_t d = tuple.size();
    const uint64_t n0 = fam_.threshold();
    std::vector<uint64_t> residues;
    for (uint64_t j = 0; j < resolution_; ++j) {
      if (tail_present(tuple[j % d], j)) residues.push_back(j);
    }
    std::vector<uint64_t> exceptions;
    for (uint64_t n = 0; n < n0; ++n) {
      const auto& e = tuple[n % d];
      if (e.has_value() && element_exists(fam_.at(n), kind_, *e)) {
        exceptions.push_back(n);
      }
    }
    return EPSet(n0, resolution_, residues, exceptions).normalized();
  }

  EPSet agreement(const Tuple& a, const Tuple& b) const {
    const uint64_t da = a.size();
    const uint64_t db = b.size();
    const uint64_t n0 = fam_.threshold();
    std::vector<uint64_t> residues;
    for (uint64_t j = 0; j < resolution_; ++j) {
      const auto& ea = a[j % da];
      const auto& eb = b[j % db];
      if (ea.has_value() && eb.has_value() && *ea == *eb &&
          tail_present(ea, j)) {
        residues.push_back(j);
      }
    }
    std::vector<uint64_t> exceptions;
    for (uint64_t n = 0; n < n0; ++n) {
      const auto& ea = a[n % da];
      const auto& eb = b[n % db];
      if (ea.has_value() && eb.has_value() && *ea == *eb &&
          element_exists(fam_.at(n), kind_, *ea)) {
        exceptions.push_back(n);
      }
    }
    return EPSet(n0, resolution_, residues, exceptions).normalized();
  }

private:
  const FamilySpec& fam_;
  SeqKind kind_;
  uint64_t resolution_;
  std::vector<std::vector<ElemRef>> pool_;
};

bool has_smaller_period(const Aligner::Tuple& tuple,
                        const std::vector<uint64_t>& proper_divisors) {
  for (uint64_t d0 : proper_divisors) {
    bool folds = true;
    for (size_t i = 0; i < tuple.size() && folds; ++i) {
      folds = tuple[i] == tuple[i % d0];
    }
    if (folds) return true;
  }
  return false;
}

}  // namespace

std::vector<NsElement> enumerate_classes(const FamilySpec& fam, Oracle& oracle,
                                         const SeqKind& kind,
                                         uint64_t resolution) {
  if (resolution == 0 || resolution % fam.period() != 0) {
    throw std::invalid_argument(
        "resolution " + std::to_string(resolution) +
        " must be a positive multiple of the family period " +
        std::to_string(fam.period()));
  }
  if (kind.kind == ElemKind::ditip && kind.tip_rank.kind == Rank::Kind::omega) {
    throw std::invalid_argument(
        "ditip sequences exist at finite ranks and warrow, not at omega");
  }

  const Aligner aligner(fam, kind, resolution);
  std::vector<EPSequence> reps;
  std::vector<Aligner::Tuple> rep_tuples;

  for (uint64_t d : divisors_ascending(resolution)) {
    std::vector<std::vector<std::optional<ElemRef>>> options(d);
    for (uint64_t i = 0; i < d; ++i) {
      std::set<ElemRef> merged;
      for (uint64_t j = i; j < resolution; j += d) {
        merged.insert(aligner.pool(j).begin(), aligner.pool(j).end());
      }
      options[i].push_back(std::nullopt);
      for (const auto& e : merged) options[i].push_back(e);
    }

    std::vector<uint64_t> proper_divisors = divisors_ascending(d);
    proper_divisors.pop_back();  // drop d itself

    // Mixed-radix counter with slot 0 most significant: visits tuples in
    // lexicographic order (absent sorts before every element), so the first
    // sequence accepted for a class is its canonical representative.
    std::vector<size_t> idx(d, 0);
    bool exhausted = false;
    while (!exhausted) {
      Aligner::Tuple tuple(d);
      for (uint64_t i = 0; i < d; ++i) tuple[i] = options[i][idx[i]];

      // Tuples that fold into a smaller period were already visited there.
      if (!has_smaller_period(tuple, proper_divisors)) {
        const EPSet pres = aligner.presence(tuple);
        if (!pres.is_empty() && oracle.decide(pres)) {
          bool duplicate = false;
          for (const auto& other : rep_tuples) {
            if (oracle.decide(aligner.agreement(tuple, other))) {
              duplicate = true;
              break;
            }
          }
          if (!duplicate) {
            EPSequence seq;
            seq.kind = kind;
            seq.cycle = tuple;
            reps.push_back(std::move(seq));
            rep_tuples.push_back(tuple);
          }
        }
      }

      exhausted = true;
      for (size_t pos = d; pos-- > 0;) {
        if (++idx[pos] < options[pos].size()) {
          exhausted = false;
          break;
        }
        idx[pos] = 0;
      }
    }
  }

  std::vector<NsElement> out;
  out.reserve(reps.size());
  for (auto& rep : reps) {
    out.push_back(NsElement{std::move(rep), oracle.describe()});
  }
  return out;
}

namespace {

EPSequence end_of(const EPSequence& arc_seq, Side side) {
  EPSequence out;
  out.kind = SeqKind::arc_end();
  auto convert = [&](const std::optional<ElemRef>& e) -> std::optional<ElemRef> {
    if (!e.has_value()) return std::nullopt;
    return ElemRef::end(e->id, side);
  };
  out.prefix.reserve(arc_seq.prefix.size());
  for (const auto& e : arc_seq.prefix) out.prefix.push_back(convert(e));
  out.cycle.reserve(arc_seq.cycle.size());
  for (const auto& e : arc_seq.cycle) out.cycle.push_back(convert(e));
  return out;
}

std::vector<std::vector<size_t>> group_by_shorting(
    const std::vector<EPSequence>& seqs, const FamilySpec& fam, Oracle& oracle) {
  std::vector<std::vector<size_t>> blocks;
  for (size_t i = 0; i < seqs.size(); ++i) {
    bool placed = false;
    for (auto& block : blocks) {
      if (ns_shorted(seqs[i], seqs[block.front()], fam, oracle)) {
        block.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) blocks.push_back({i});
  }
  return blocks;
}

NsLevel build_level(const FamilySpec& fam, Oracle& oracle, const Rank& tip_rank,
                    uint64_t resolution) {
  NsLevel level;
  for (auto& cls : enumerate_classes(fam, oracle, SeqKind::ditip(tip_rank),
                                     resolution)) {
    level.tips.push_back(std::move(cls.rep));
  }
  level.polarities.reserve(level.tips.size());
  for (const auto& tip : level.tips) {
    level.polarities.push_back(ns_polarity(tip, fam, oracle));
  }
  level.vertices = group_by_shorting(level.tips, fam, oracle);
  return level;
}

}  // namespace

NsDigraph build_ns_digraph(const FamilySpec& fam, Oracle& oracle,
                           const Rank& target, uint64_t resolution,
                           size_t rank_budget) {
  if (target > fam.rank()) {
    throw std::invalid_argument("target rank " + to_string(target) +
                                " exceeds the family rank " +
                                to_string(fam.rank()));
  }
  size_t levels_to_build = 0;
  bool with_omega = false;
  switch (target.kind) {
    case Rank::Kind::finite:
      if (target.value > fam.depth()) {
        throw std::invalid_argument("target rank " + to_string(target) +
                                    " exceeds the family depth " +
                                    std::to_string(fam.depth()));
      }
      levels_to_build = target.value;
      break;
    case Rank::Kind::warrow:
      levels_to_build =
          rank_budget == all_levels ? fam.depth() : rank_budget;
      if (levels_to_build > fam.depth()) {
        throw std::invalid_argument(
            "rank budget " + std::to_string(rank_budget) +
            " exceeds the family depth " + std::to_string(fam.depth()));
      }
      break;
    case Rank::Kind::omega:
      levels_to_build = fam.depth();
      with_omega = true;
      break;
  }

  NsDigraph nsd;
  nsd.rank = target;
  nsd.resolution = resolution;
  nsd.oracle = oracle.describe();

  for (auto& cls : enumerate_classes(fam, oracle, SeqKind::arc(), resolution)) {
    nsd.arcs.push_back(std::move(cls.rep));
  }
  nsd.ends.reserve(2 * nsd.arcs.size());
  for (const auto& arc : nsd.arcs) {
    nsd.ends.push_back(end_of(arc, Side::source));
    nsd.ends.push_back(end_of(arc, Side::sink));
  }
  nsd.v0 = group_by_shorting(nsd.ends, fam, oracle);

  for (size_t k = 0; k < levels_to_build; ++k) {
    nsd.levels.push_back(build_level(fam, oracle, Rank::finite(k), resolution));
  }
  if (with_omega) {
    nsd.omega = build_level(fam, oracle, Rank::warrow(), resolution);
  }
  return nsd;
}

NsVertex ns_vertex_of(const EPSequence& s, const FamilySpec& fam, Oracle& oracle,
                      uint64_t resolution) {
  if (s.kind.kind != ElemKind::ditip) {
    throw std::invalid_argument("ns_vertex_of: only ditip sequences lie in vertices");
  }
  require_valid(s, fam, oracle, "ns_vertex_of");
  const Rank& tip_rank = s.kind.tip_rank;
  const Rank vertex_rank = tip_rank.kind == Rank::Kind::warrow
                               ? Rank::omega()
                               : Rank::finite(tip_rank.value + 1);
  for (auto& cls : enumerate_classes(fam, oracle, s.kind, resolution)) {
    if (ns_shorted(cls.rep, s, fam, oracle)) {
      return NsVertex{std::move(cls), vertex_rank};
    }
  }
  // The class is not materialized at this resolution (its period does not
  // divide it); the sequence itself is the best available name.
  return NsVertex{NsElement{s, oracle.describe()}, vertex_rank};
}

namespace {

void check_index_partition(const std::vector<std::vector<size_t>>& blocks,
                           size_t universe, const std::string& what,
                           std::vector<std::string>& problems) {
  std::vector<int> seen(universe, 0);
  for (const auto& block : blocks) {
    if (block.empty()) {
      problems.push_back(what + " has an empty block");
      continue;
    }
    for (size_t idx : block) {
      if (idx >= universe) {
        problems.push_back(what + " references out-of-range class index " +
                           std::to_string(idx));
      } else if (++seen[idx] > 1) {
        problems.push_back("class index " + std::to_string(idx) +
                           " appears in more than one block of " + what);
      }
    }
  }
  for (size_t i = 0; i < universe; ++i) {
    if (seen[i] == 0) {
      problems.push_back("class index " + std::to_string(i) +
                         " is not covered by " + what);
    }
  }
}

void check_pairwise_distinct(const std::vector<EPSequence>& reps,
                             const FamilySpec& fam, Oracle& oracle,
                             const std::string& what,
                             std::vector<std::string>& problems) {
  for (size_t i = 0; i < reps.size(); ++i) {
    for (size_t j = i + 1; j < reps.size(); ++j) {
      if (ns_equal(reps[i], reps[j], fam, oracle)) {
        problems.push_back(what + ": representatives " + std::to_string(i) +
                           " and " + std::to_string(j) + " are equal classes");
      }
    }
  }
}

void check_block_coherence(const std::vector<EPSequence>& reps,
                           const std::vector<std::vector<size_t>>& blocks,
                           const FamilySpec& fam, Oracle& oracle,
                           const std::string& what,
                           std::vector<std::string>& problems) {
  for (const auto& block : blocks) {
    if (block.empty()) continue;
    for (size_t idx : block) {
      if (idx >= reps.size() || block.front() >= reps.size()) continue;
      if (!ns_shorted(reps[idx], reps[block.front()], fam, oracle)) {
        problems.push_back(what + ": class " + std::to_string(idx) +
                           " is not shorted to its block's canonical");
      }
    }
  }
  for (size_t a = 0; a < blocks.size(); ++a) {
    for (size_t b = a + 1; b < blocks.size(); ++b) {
      if (blocks[a].empty() || blocks[b].empty()) continue;
      if (blocks[a].front() >= reps.size() || blocks[b].front() >= reps.size())
        continue;
      if (ns_shorted(reps[blocks[a].front()], reps[blocks[b].front()], fam,
                     oracle)) {
        problems.push_back(what + ": blocks " + std::to_string(a) + " and " +
                           std::to_string(b) + " have shorted canonicals");
      }
    }
  }
}

void check_level(const NsLevel& level, const FamilySpec& fam, Oracle& oracle,
                 const std::string& what, std::vector<std::string>& problems) {
  check_pairwise_distinct(level.tips, fam, oracle, what + " ditips", problems);
  if (level.polarities.size() != level.tips.size()) {
    problems.push_back(what + ": polarity count does not match ditip count");
  } else {
    for (size_t i = 0; i < level.tips.size(); ++i) {
      if (ns_polarity(level.tips[i], fam, oracle) != level.polarities[i]) {
        problems.push_back(what + ": stored polarity of class " +
                           std::to_string(i) + " disagrees with ns_polarity");
      }
    }
  }
  check_index_partition(level.vertices, level.tips.size(),
                        what + " vertex partition", problems);
  check_block_coherence(level.tips, level.vertices, fam, oracle,
                        what + " vertex partition", problems);
}

}  // namespace

std::vector<std::string> verify_ns_partitions(const NsDigraph& nsd,
                                              const FamilySpec& fam,
                                              Oracle& oracle) {
  std::vector<std::string> problems;
  check_pairwise_distinct(nsd.arcs, fam, oracle, "arc classes", problems);
  if (nsd.ends.size() != 2 * nsd.arcs.size()) {
    problems.push_back("expected two end classes per arc class, found " +
                       std::to_string(nsd.ends.size()) + " for " +
                       std::to_string(nsd.arcs.size()) + " arcs");
  }
  check_pairwise_distinct(nsd.ends, fam, oracle, "end classes", problems);
  check_index_partition(nsd.v0, nsd.ends.size(), "v0", problems);
  check_block_coherence(nsd.ends, nsd.v0, fam, oracle, "v0", problems);
  for (size_t k = 0; k < nsd.levels.size(); ++k) {
    check_level(nsd.levels[k], fam, oracle, "level " + std::to_string(k),
                problems);
  }
  if (nsd.rank == Rank::omega()) {
    check_level(nsd.omega, fam, oracle, "omega level", problems);
  } else if (!nsd.omega.tips.empty()) {
    problems.push_back("omega level populated below rank omega");
  }
  return problems;
}

}  // namespace tfdg
