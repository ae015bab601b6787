#pragma once

#include <optional>
#include <random>

#include "tfdg/ultrapower.hpp"

namespace tfdg {

/// Outcome of the randomized self-check suites over one family.
struct CheckReport {
  int independence_total = 0;
  int independence_passed = 0;
  int skipped = 0;  // samples where no valid random sequence was found
  std::vector<std::string> problems;

  bool ok() const {
    return independence_passed == independence_total && problems.empty();
  }
};

/// Runs two suites against a family under one oracle session:
///  - representative independence: random valid sequence pairs are perturbed
///    on oracle-rejected index sets (which preserves their classes) and the
///    lifted shorting answer must not change;
///  - partition laws: the nonstandard digraph built at the family's rank must
///    pass every class-level partition check.
/// Deterministic for a fixed (family, oracle selector, resolution, samples,
/// seed).
CheckReport run_checks(const FamilySpec& fam, Oracle& oracle,
                       uint64_t resolution, int samples, uint64_t seed);

/// A random cycle-aligned sequence of the kind whose presence set the oracle
/// accepts, or nullopt when `attempts` draws found none (e.g. the kind has no
/// elements anywhere in the family).  Entries are drawn per slot from the
/// elements available at the aligned positions, with the absent marker mixed
/// in.
std::optional<EPSequence> random_valid_sequence(const FamilySpec& fam,
                                                Oracle& oracle,
                                                const SeqKind& kind,
                                                uint64_t resolution,
                                                std::mt19937_64& rng,
                                                int attempts = 64);

/// A catalog of EPSets the oracle rejects, drawn from small singletons,
/// pairs, and residue classes.  Never empty for a law-abiding oracle (it
/// rejects the complement of whatever it accepts).
std::vector<EPSet> rejected_sets(Oracle& oracle);

/// Rewrites s on the positions of `where` (drawing replacement entries, or
/// the absent marker, from the family's elements of the same kind), leaving
/// every other position untouched.  When the oracle rejects `where`, the
/// result is a different representative of the same class.
EPSequence perturb_on(const EPSequence& s, const EPSet& where,
                      const FamilySpec& fam, std::mt19937_64& rng);

}  // namespace tfdg
