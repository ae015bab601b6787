#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tfdg {

/// Rank of a transfinite digraph or of a ditip layer inside one.  Finite
/// ranks are ordered by value; every finite rank sits below warrow (the
/// arrow-omega rank of unbounded finite towers) which sits below omega.
struct Rank {
  enum class Kind { finite, warrow, omega };

  Kind kind = Kind::finite;
  uint64_t value = 0;  // meaningful only when kind == finite

  static Rank finite(uint64_t k) { return Rank{Kind::finite, k}; }
  static Rank warrow() { return Rank{Kind::warrow, 0}; }
  static Rank omega() { return Rank{Kind::omega, 0}; }

  bool is_finite() const { return kind == Kind::finite; }

  friend bool operator==(const Rank& a, const Rank& b) {
    return a.key() == b.key();
  }
  friend std::strong_ordering operator<=>(const Rank& a, const Rank& b) {
    return a.key() <=> b.key();
  }

private:
  std::pair<int, uint64_t> key() const {
    const int order = kind == Kind::finite ? 0 : (kind == Kind::warrow ? 1 : 2);
    return {order, kind == Kind::finite ? value : 0};
  }
};

std::string to_string(const Rank& r);

/// Parses "0", "1", ..., "warrow", "omega".  Throws std::invalid_argument.
Rank parse_rank(const std::string& text);

/// Which end of an arc: the source end (tail) or the sink end (head).
enum class Side { source, sink };

std::string to_string(Side s);

/// Orientation a ditip carries: an in ditip points into its vertex, an out
/// ditip points away from it.
enum class Polarity { in, out };

std::string to_string(Polarity p);

/// One of the two ends of a named arc.
struct ArcEnd {
  std::string arc;
  Side side = Side::source;

  friend auto operator<=>(const ArcEnd&, const ArcEnd&) = default;
};

std::string to_string(const ArcEnd& e);

/// A named ditip together with its polarity.  The rank is implied by the
/// level the ditip sits in, not stored per tip.
struct Ditip {
  std::string id;
  Polarity polarity = Polarity::in;

  friend auto operator<=>(const Ditip&, const Ditip&) = default;
};

/// One layer of the tower: the rank-k ditips and the partition of their ids
/// into rank-(k+1) vertices.
struct Level {
  std::vector<Ditip> tips;
  std::vector<std::vector<std::string>> vertices;

  friend auto operator<=>(const Level&, const Level&) = default;
};

/// Raw, freely mutable description of a ranked digraph.
///
///   rank finite(mu):  arcs, v0, and exactly mu levels; levels[k] holds the
///                     rank-k ditips and the rank-(k+1) vertex partition.
///   rank warrow:      like a finite tower of any depth >= 1, but tagged as
///                     extending without bound; it has no tips of its own
///                     above the finite levels.
///   rank omega:       a warrow-style tower plus a nonempty set of warrow
///                     ditips and the omega vertex partition over them.
///
/// v0 partitions the 2*|arcs| arc ends.  Validation (below) checks all of
/// the partition and nonemptiness constraints; RankedDigraph wraps data that
/// passed them.
struct DigraphData {
  Rank rank = Rank::finite(0);
  std::vector<std::string> arcs;
  std::vector<std::vector<ArcEnd>> v0;
  std::vector<Level> levels;
  std::vector<Ditip> warrow_tips;
  std::vector<std::vector<std::string>> v_omega;

  friend auto operator<=>(const DigraphData&, const DigraphData&) = default;
};

struct ValidationReport {
  std::vector<std::string> problems;

  bool ok() const { return problems.empty(); }
  std::string joined() const;
};

/// Checks every structural constraint on the raw data and reports all
/// violations at once (never throws).
ValidationReport validate(const DigraphData& d);

class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

private:
  ValidationReport report_;
};

/// Immutable ranked digraph.  Construction validates the raw data and throws
/// ValidationError listing every violation if it is malformed; afterwards all
/// lookups are table-driven and cheap.
class RankedDigraph {
public:
  explicit RankedDigraph(DigraphData data);

  const DigraphData& data() const { return data_; }
  Rank rank() const { return data_.rank; }
  size_t arc_count() const { return data_.arcs.size(); }
  /// Number of stored levels (equals the rank for finite ranks).
  size_t depth() const { return data_.levels.size(); }

  bool has_arc(const std::string& id) const;
  size_t arc_index(const std::string& id) const;

  /// All 2*|arcs| ends in canonical order: per arc, source end then sink end.
  std::vector<ArcEnd> ends() const;

  /// Ditips at a given rank.  Finite k must satisfy k < depth(); the warrow
  /// rank is only populated on omega digraphs.  Throws std::invalid_argument
  /// outside those bounds (including rank omega, which has vertices but no
  /// tips of its own).
  const std::vector<Ditip>& ditips(const Rank& tip_rank) const;

  bool has_ditip(const Rank& tip_rank, const std::string& id) const;
  Polarity polarity_of(const Rank& tip_rank, const std::string& id) const;

  /// Index of the v0 block containing the end.  Throws if the end is unknown.
  size_t v0_block_of(const ArcEnd& end) const;
  bool same_v0_block(const ArcEnd& a, const ArcEnd& b) const;

  /// Index of the vertex block (one rank above tip_rank) containing the tip.
  size_t vertex_block_of(const Rank& tip_rank, const std::string& tip_id) const;
  /// True when the two ditips of the given rank lie in the same vertex block,
  /// i.e. they are shorted together.
  bool shorted(const Rank& tip_rank, const std::string& a,
               const std::string& b) const;

  /// Restriction to a lower (or equal) rank.  finite(k) keeps arcs, v0 and
  /// the first k levels; warrow keeps every level and drops the omega layer;
  /// omega is the identity.  Throws std::invalid_argument when the target
  /// exceeds what this digraph can provide.
  RankedDigraph slice(const Rank& target) const;

  friend bool operator==(const RankedDigraph& a, const RankedDigraph& b) {
    return a.data_ == b.data_;
  }

private:
  void build_tables();

  DigraphData data_;
  std::map<std::string, size_t> arc_index_;
  std::map<ArcEnd, size_t> end_block_;
  // Per level: ditip id -> (tip index, vertex block index, polarity).
  struct TipInfo {
    size_t tip_index;
    size_t block;
    Polarity polarity;
  };
  std::vector<std::map<std::string, TipInfo>> level_tips_;
  std::map<std::string, TipInfo> warrow_tips_;
};

}  // namespace tfdg
