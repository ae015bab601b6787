#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tfdg/family.hpp"

namespace tfdg {

/// A nonstandard element: an equivalence class of sequences under
/// almost-everywhere equality, named by its canonical representative.  The
/// oracle field records which ultrafilter oracle was in force when the class
/// was formed; classes from different oracles are not comparable.
struct NsElement {
  EPSequence rep;
  std::string oracle;

  friend bool operator==(const NsElement&, const NsElement&) = default;
};

/// Almost-everywhere equality of two sequences: the oracle accepts the exact
/// index set where both are present and name the same element.  Throws on a
/// kind/rank mismatch or when either sequence is invalid (not present almost
/// everywhere).  An equivalence relation on valid sequences.
bool ns_equal(const EPSequence& s, const EPSequence& t, const FamilySpec& fam,
              Oracle& oracle);

/// Polarity of a nonstandard ditip: in iff the oracle accepts the set of
/// positions where the representative is an in ditip.  Exclusive and
/// exhaustive with out for valid sequences.  Throws unless s is a valid
/// ditip sequence.
Polarity ns_polarity(const EPSequence& s, const FamilySpec& fam, Oracle& oracle);

/// Lifted shorting: the oracle accepts the set of positions where both
/// elements are present and shorted in that member (same vertex block for
/// ditips, same v0 block for arc ends).  Defined for ditip sequences of one
/// common rank and for arc-end sequences; throws otherwise, and on invalid
/// sequences.  Representative-independent (see check_independence).
bool ns_shorted(const EPSequence& s, const EPSequence& t, const FamilySpec& fam,
                Oracle& oracle);

/// A nonstandard vertex, named by the least enumerated ditip class it
/// contains.  Membership of any ditip sequence d is ns_shorted(d, canonical);
/// two vertices are the same iff their canonicals are shorted.
struct NsVertex {
  NsElement canonical;
  Rank rank;  // one above the rank of its ditips
};

/// The vertex containing s: canonical = the first enumerated class at this
/// resolution that is shorted with s.  When s's class is not materialized at
/// this resolution (period not dividing it), s itself is returned as the
/// canonical.
NsVertex ns_vertex_of(const EPSequence& s, const FamilySpec& fam, Oracle& oracle,
                      uint64_t resolution);

/// All equivalence classes of cycle-aligned sequences of the given kind with
/// period dividing `resolution`, one canonical representative each, in
/// canonical order (period ascending, then entries lexicographic, absent
/// first).  Candidates whose presence set the oracle rejects denote nothing
/// and are skipped.  `resolution` must be a positive multiple of the family
/// period; ditip kinds must name a finite or warrow rank.
std::vector<NsElement> enumerate_classes(const FamilySpec& fam, Oracle& oracle,
                                         const SeqKind& kind,
                                         uint64_t resolution);

/// One rank layer of a nonstandard digraph: ditip classes (canonical reps in
/// enumeration order), their polarities, and the next-rank vertex partition
/// as blocks of indices into tips.
struct NsLevel {
  std::vector<EPSequence> tips;
  std::vector<Polarity> polarities;
  std::vector<std::vector<size_t>> vertices;

  friend bool operator==(const NsLevel&, const NsLevel&) = default;
};

/// A materialized nonstandard digraph.  `ends` holds the two end classes of
/// each arc class (source then sink, in arc order); `v0` partitions indices
/// into `ends`.  `levels[k]` holds the rank-k ditip classes and the
/// rank-(k+1) vertex partition.  At rank omega, `omega` holds the warrow
/// ditip classes and the omega vertex partition; it is empty otherwise.
struct NsDigraph {
  Rank rank = Rank::finite(0);
  uint64_t resolution = 1;
  std::string oracle;
  std::vector<EPSequence> arcs;
  std::vector<EPSequence> ends;
  std::vector<std::vector<size_t>> v0;
  std::vector<NsLevel> levels;
  NsLevel omega;

  friend bool operator==(const NsDigraph&, const NsDigraph&) = default;
};

inline constexpr size_t all_levels = static_cast<size_t>(-1);

/// Assembles the nonstandard digraph at the target rank: arc classes, their
/// end classes, v0 from lifted end-shorting, then one level per rank below
/// the target (ditip classes, polarities, next-rank vertices), and at rank
/// omega additionally the warrow ditip classes with their omega vertices.
///
/// The target may not exceed the family's rank, and a finite target may not
/// exceed the family's depth.  `rank_budget` applies to warrow targets only
/// (how many finite levels of the unbounded tower to materialize; default:
/// all the family stores; more than that throws) and is ignored otherwise.
NsDigraph build_ns_digraph(const FamilySpec& fam, Oracle& oracle,
                           const Rank& target, uint64_t resolution,
                           size_t rank_budget = all_levels);

/// The well-definedness of lifted shorting as a runnable check: given
/// ns_equal(s, s_alt) and ns_equal(t, t_alt) (else throws), returns whether
/// ns_shorted(s, t) == ns_shorted(s_alt, t_alt).  Always true; exposed so the
/// property is directly executable.
bool check_independence(const EPSequence& s, const EPSequence& s_alt,
                        const EPSequence& t, const EPSequence& t_alt,
                        const FamilySpec& fam, Oracle& oracle);

/// Embeds an element of a single digraph into the ultrapower over the
/// constant family <d, d, ...> as its constant sequence's class.  Injective;
/// preserves polarity, shorting, and arc-end incidence.  Throws when the
/// element does not exist in d.
NsElement standard_embedding(const RankedDigraph& d, Oracle& oracle,
                             const SeqKind& kind, const ElemRef& elem);

/// Checks the class-level invariants of a built nonstandard digraph: reps
/// pairwise non-equal, every vertex partition an exact partition of its tip
/// classes, blocks coherent under lifted shorting, polarities matching
/// ns_polarity.  Returns one message per violation (empty means all hold).
std::vector<std::string> verify_ns_partitions(const NsDigraph& nsd,
                                              const FamilySpec& fam,
                                              Oracle& oracle);

/// Stable display label for a class: "[<representative>@<resolution>]".
std::string class_label(const EPSequence& rep, uint64_t resolution);

}  // namespace tfdg
