#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tfdg/epset.hpp"

namespace tfdg {

/// Membership oracle for a fixed ultrafilter on the naturals, restricted to
/// the decidable algebra of eventually periodic sets.  Every implementation
/// satisfies the ultrafilter laws on that algebra: properness (empty false,
/// full true), the complement law (exactly one of S and its complement is
/// accepted), the intersection law and the superset law.
///
/// decide() is non-const because the lazy kind commits sets as it answers;
/// principal and multiples oracles are pure and freely shareable, a lazy
/// oracle needs exclusive access for the duration of a session.
class Oracle {
public:
  virtual ~Oracle() = default;
  virtual bool decide(const EPSet& s) = 0;
  virtual std::string describe() const = 0;
};

/// {S : n0 in S}.  Principal (fixed), so it accepts some finite sets; kept as
/// an exact cross-check: under it every ultrapower construction collapses to
/// evaluation at n0.
class PrincipalOracle final : public Oracle {
public:
  explicit PrincipalOracle(uint64_t n0) : n0_(n0) {}
  bool decide(const EPSet& s) override { return s.member(n0_); }
  std::string describe() const override;
  uint64_t base() const { return n0_; }

private:
  uint64_t n0_;
};

/// Nonprincipal oracle: S is accepted iff for some m >= 1 every sufficiently
/// large multiple of m lies in S.  On an eventually periodic set this is
/// decidable: it holds exactly when residue 0 of the canonical period is in
/// the pattern.  Rejects every finite set, accepts every cofinite one.
class MultiplesOracle final : public Oracle {
public:
  bool decide(const EPSet& s) override;
  std::string describe() const override { return "multiples"; }
};

/// Nonprincipal, stateful oracle grown from a seed.  It keeps a finite
/// committed list whose full intersection is infinite (the finite
/// intersection property, sharpened to infinite intersections so finite sets
/// are never accepted).  A query is answered true, and the set committed,
/// when the set meets the committed core in an infinite set; otherwise the
/// answer is false and the complement is committed.  Answers never change
/// within a session; different seeds or query orders may realize different
/// ultrafilters.
class LazyFipOracle final : public Oracle {
public:
  explicit LazyFipOracle(uint64_t seed);
  bool decide(const EPSet& s) override;
  std::string describe() const override;
  const std::vector<EPSet>& committed() const { return committed_; }

private:
  uint64_t seed_;
  std::vector<EPSet> committed_;
  EPSet core_;  // intersection of committed_, always infinite
};

/// Parses "principal:<n0>" | "multiples" | "lazyfip:<seed>".
/// Throws std::invalid_argument on anything else.
std::unique_ptr<Oracle> make_oracle(const std::string& selector);

}  // namespace tfdg
