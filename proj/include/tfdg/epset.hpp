#pragma once

#include <cstdint>
#include <vector>

namespace tfdg {

/// Eventually periodic subset of the naturals.
///
/// Membership of n >= threshold() is read from a residue pattern modulo
/// period() (indexed by n % period, not by n - threshold); members below the
/// threshold are listed explicitly in exceptions().  The family is closed
/// under complement, intersection and union, and every set has a unique
/// canonical form — minimal period first, then minimal threshold — so
/// canonical equality is set equality.  operator== compares canonical forms;
/// identical_to() compares raw representations.
///
/// Values are immutable; all operations are pure and return fresh sets.
class EPSet {
public:
  /// The empty set: threshold 0, period 1, no residues.
  EPSet();

  /// Raw construction; the representation is kept as given (not normalized).
  /// Throws std::invalid_argument if period == 0, a residue is >= period, or
  /// an exception is >= threshold.
  EPSet(uint64_t threshold, uint64_t period, std::vector<uint64_t> residues,
        std::vector<uint64_t> exceptions);

  static EPSet empty();
  static EPSet all();
  static EPSet finite(std::vector<uint64_t> members);
  /// {n : n % modulus == residue}
  static EPSet residue_class(uint64_t modulus, uint64_t residue);

  bool member(uint64_t n) const;

  EPSet complement() const;
  EPSet intersect(const EPSet& other) const;
  /// Union, computed by De Morgan from complement and intersect.
  EPSet unite(const EPSet& other) const;
  EPSet difference(const EPSet& other) const;

  enum class Class { finite, cofinite, neither };
  Class classify() const;

  bool is_empty() const;
  bool is_finite() const;
  bool subset_of(const EPSet& other) const;

  /// Canonical form: minimal period (found by divisor testing), then minimal
  /// threshold (prefix entries matching the pattern are absorbed).
  /// Membership is unchanged for every n.
  EPSet normalized() const;
  bool is_canonical() const;

  uint64_t threshold() const { return threshold_; }
  uint64_t period() const { return period_; }
  /// Residues r in [0, period) with pattern true, ascending.
  std::vector<uint64_t> residues() const;
  /// Members below the threshold, ascending.
  const std::vector<uint64_t>& exceptions() const { return exceptions_; }

  /// Set equality (canonical forms identical).
  friend bool operator==(const EPSet& a, const EPSet& b);
  friend bool operator!=(const EPSet& a, const EPSet& b) { return !(a == b); }

  /// Exact representation equality (threshold, period, pattern, exceptions).
  bool identical_to(const EPSet& other) const;

private:
  uint64_t threshold_ = 0;
  uint64_t period_ = 1;
  std::vector<bool> pattern_;         // size period_, indexed by n % period_
  std::vector<uint64_t> exceptions_;  // sorted, unique, all < threshold_
};

/// lcm with overflow check; throws std::overflow_error.
uint64_t lcm_checked(uint64_t a, uint64_t b);

}  // namespace tfdg
