#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tfdg/epset.hpp"
#include "tfdg/ranked_digraph.hpp"
#include "tfdg/ultrafilter.hpp"

namespace tfdg {

/// What kind of element a sequence ranges over.
enum class ElemKind { arc, arc_end, ditip };

/// Kind of an element sequence: arcs, arc ends, or ditips of one fixed rank.
struct SeqKind {
  ElemKind kind = ElemKind::arc;
  Rank tip_rank = Rank::finite(0);  // meaningful only for ditip

  static SeqKind arc() { return SeqKind{ElemKind::arc, Rank::finite(0)}; }
  static SeqKind arc_end() { return SeqKind{ElemKind::arc_end, Rank::finite(0)}; }
  static SeqKind ditip(const Rank& r) { return SeqKind{ElemKind::ditip, r}; }

  friend auto operator<=>(const SeqKind&, const SeqKind&) = default;
};

std::string to_string(const SeqKind& k);

/// A reference to one element by symbolic id.  The same id names "the same"
/// element across different members of a family; whether it actually exists
/// in a given member is a per-position question.  `side` is meaningful only
/// for arc-end sequences and stays at its default elsewhere.
struct ElemRef {
  std::string id;
  Side side = Side::source;

  static ElemRef arc(std::string id) { return ElemRef{std::move(id)}; }
  static ElemRef end(std::string arc, Side side) {
    return ElemRef{std::move(arc), side};
  }
  static ElemRef tip(std::string id) { return ElemRef{std::move(id)}; }

  friend auto operator<=>(const ElemRef&, const ElemRef&) = default;
};

/// Prints an element the way the text format spells it ("a", "a.src", "t1").
std::string format_element(const SeqKind& kind, const ElemRef& e);

/// Eventually periodic sequence of elements (or the absent marker).  Position
/// n < threshold() reads prefix[n]; position n >= threshold() reads
/// cycle[(n - threshold()) % period()].  The alignment is the sequence's own
/// and need not match any family's.
struct EPSequence {
  SeqKind kind;
  std::vector<std::optional<ElemRef>> prefix;
  std::vector<std::optional<ElemRef>> cycle;  // must be nonempty

  uint64_t threshold() const { return prefix.size(); }
  uint64_t period() const { return cycle.size(); }
  const std::optional<ElemRef>& at(uint64_t n) const;

  friend auto operator<=>(const EPSequence&, const EPSequence&) = default;
};

std::string format_sequence(const EPSequence& s);

/// Eventually periodic family of ranked digraphs.  Position n < threshold()
/// is prefix[n]; position n >= threshold() is cycle[(n - threshold()) %
/// period()].  Cycle members must all have the declared rank; prefix members
/// only need to validate on their own (each rank mismatch is flagged as a
/// note, since those positions are negligible under nonprincipal oracles but
/// visible under principal ones).
class FamilySpec {
public:
  FamilySpec(std::vector<RankedDigraph> prefix, std::vector<RankedDigraph> cycle);

  const RankedDigraph& at(uint64_t n) const;
  uint64_t threshold() const { return prefix_.size(); }
  uint64_t period() const { return cycle_.size(); }
  /// The common rank of the cycle members.
  Rank rank() const { return rank_; }
  /// Number of materializable finite levels: the minimum level count over
  /// cycle members (equals the rank value for finite ranks).
  size_t depth() const { return depth_; }
  const std::vector<RankedDigraph>& prefix() const { return prefix_; }
  const std::vector<RankedDigraph>& cycle() const { return cycle_; }
  /// Advisory observations (currently: prefix members whose rank differs
  /// from the declared rank).  Never errors.
  const std::vector<std::string>& notes() const { return notes_; }

private:
  std::vector<RankedDigraph> prefix_;
  std::vector<RankedDigraph> cycle_;
  Rank rank_;
  size_t depth_;
  std::vector<std::string> notes_;
};

/// Does this element (of this kind) exist in the digraph?  For arc ends the
/// end exists exactly when its arc does; for ditips the rank must be
/// populated in d.
bool element_exists(const RankedDigraph& d, const SeqKind& kind, const ElemRef& e);

/// All elements of one kind in a digraph, sorted.  Empty when the digraph
/// does not populate the requested ditip rank.
std::vector<ElemRef> elements_of(const RankedDigraph& d, const SeqKind& kind);

/// Present at n: the entry is non-absent and names an element that exists in
/// at(fam, n) with the declared kind/rank.
bool present_at(const FamilySpec& fam, const EPSequence& s, uint64_t n);

/// Compiles a pointwise predicate into the exact EPSet {n : pred(n)}.  The
/// sequences are only consulted for their alignments (thresholds/periods);
/// pred itself is expected to depend on n only through the family member and
/// the sequence values at n, which makes the result eventually periodic with
/// threshold max(all thresholds) and period lcm(all periods).  The predicate
/// is evaluated once per prefix position and once per residue of the joint
/// period; the result is returned in canonical form.
EPSet predicate_set(const FamilySpec& fam,
                    const std::vector<const EPSequence*>& seqs,
                    const std::function<bool(uint64_t)>& pred);

/// Exact EPSet of positions where s is present in fam.
EPSet presence_set(const FamilySpec& fam, const EPSequence& s);

/// A sequence is a usable representative iff it is present almost
/// everywhere, i.e. the oracle accepts its presence set.
bool seq_valid(const EPSequence& s, const FamilySpec& fam, Oracle& oracle);

}  // namespace tfdg
