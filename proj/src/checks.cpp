#include "tfdg/checks.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tfdg {

namespace {

std::vector<ElemRef> family_pool(const FamilySpec& fam, const SeqKind& kind) {
  std::set<ElemRef> merged;
  for (const auto& d : fam.prefix()) {
    auto v = elements_of(d, kind);
    merged.insert(v.begin(), v.end());
  }
  for (const auto& d : fam.cycle()) {
    auto v = elements_of(d, kind);
    merged.insert(v.begin(), v.end());
  }
  return std::vector<ElemRef>(merged.begin(), merged.end());
}

std::vector<uint64_t> divisors_of(uint64_t r) {
  std::vector<uint64_t> out;
  for (uint64_t d = 1; d <= r; ++d) {
    if (r % d == 0) out.push_back(d);
  }
  return out;
}

}  // namespace

std::optional<EPSequence> random_valid_sequence(const FamilySpec& fam,
                                                Oracle& oracle,
                                                const SeqKind& kind,
                                                uint64_t resolution,
                                                std::mt19937_64& rng,
                                                int attempts) {
  if (resolution == 0 || resolution % fam.period() != 0) {
    throw std::invalid_argument(
        "resolution must be a positive multiple of the family period");
  }
  const uint64_t p = fam.period();
  const uint64_t n0 = fam.threshold();
  std::vector<std::vector<ElemRef>> pool(resolution);
  for (uint64_t j = 0; j < resolution; ++j) {
    const uint64_t slot = ((j % p) + p - (n0 % p)) % p;
    pool[j] = elements_of(fam.cycle()[slot], kind);
  }
  const std::vector<uint64_t> divisors = divisors_of(resolution);
  const std::vector<ElemRef> wide_pool = family_pool(fam, kind);

  for (int attempt = 0; attempt < attempts; ++attempt) {
    const uint64_t d = divisors[rng() % divisors.size()];
    EPSequence s;
    s.kind = kind;
    s.cycle.resize(d);
    for (uint64_t i = 0; i < d; ++i) {
      std::set<ElemRef> merged;
      for (uint64_t j = i; j < resolution; j += d) {
        merged.insert(pool[j].begin(), pool[j].end());
      }
      std::vector<ElemRef> options(merged.begin(), merged.end());
      const size_t pick = rng() % (options.size() + 1);
      if (pick > 0) s.cycle[i] = options[pick - 1];
    }
    // Now and then give the sequence its own prefix, so its alignment does
    // not match the family's.
    if (rng() % 3 == 0 && !wide_pool.empty()) {
      const size_t len = 1 + rng() % 2;
      for (size_t i = 0; i < len; ++i) {
        const size_t pick = rng() % (wide_pool.size() + 1);
        s.prefix.push_back(pick == 0 ? std::optional<ElemRef>()
                                     : std::optional<ElemRef>(wide_pool[pick - 1]));
      }
    }
    if (seq_valid(s, fam, oracle)) return s;
  }
  return std::nullopt;
}

std::vector<EPSet> rejected_sets(Oracle& oracle) {
  std::vector<EPSet> candidates;
  for (uint64_t i = 0; i < 6; ++i) {
    candidates.push_back(EPSet::finite({i}));
  }
  candidates.push_back(EPSet::finite({0, 1, 2}));
  for (uint64_t m = 2; m <= 4; ++m) {
    for (uint64_t r = 0; r < m; ++r) {
      candidates.push_back(EPSet::residue_class(m, r));
    }
  }
  std::vector<EPSet> out;
  for (const auto& c : candidates) {
    if (!oracle.decide(c)) out.push_back(c);
  }
  return out;
}

EPSequence perturb_on(const EPSequence& s, const EPSet& where,
                      const FamilySpec& fam, std::mt19937_64& rng) {
  const EPSet w = where.normalized();
  const uint64_t joint_period = lcm_checked(s.period(), w.period());
  const uint64_t joint_threshold = std::max(s.threshold(), w.threshold());
  const std::vector<ElemRef> pool = family_pool(fam, s.kind);

  auto replacement = [&](const std::optional<ElemRef>& current)
      -> std::optional<ElemRef> {
    for (int t = 0; t < 4; ++t) {
      const size_t pick = rng() % (pool.size() + 1);
      std::optional<ElemRef> cand =
          pick == 0 ? std::optional<ElemRef>() : std::optional<ElemRef>(pool[pick - 1]);
      if (cand != current) return cand;
    }
    return std::nullopt;
  };

  EPSequence out;
  out.kind = s.kind;
  out.prefix.reserve(joint_threshold);
  for (uint64_t n = 0; n < joint_threshold; ++n) {
    out.prefix.push_back(w.member(n) ? replacement(s.at(n)) : s.at(n));
  }
  out.cycle.reserve(joint_period);
  // Both s and w are periodic past the joint threshold, so one representative
  // position per cycle slot pins the whole tail.
  for (uint64_t j = 0; j < joint_period; ++j) {
    const uint64_t n = joint_threshold + j;
    out.cycle.push_back(w.member(n) ? replacement(s.at(n)) : s.at(n));
  }
  return out;
}

CheckReport run_checks(const FamilySpec& fam, Oracle& oracle,
                       uint64_t resolution, int samples, uint64_t seed) {
  CheckReport report;
  std::mt19937_64 rng(seed);

  std::vector<SeqKind> kinds{SeqKind::arc_end()};
  for (size_t k = 0; k < fam.depth(); ++k) {
    kinds.push_back(SeqKind::ditip(Rank::finite(k)));
  }
  if (fam.rank() == Rank::omega()) {
    kinds.push_back(SeqKind::ditip(Rank::warrow()));
  }

  const std::vector<EPSet> rejected = rejected_sets(oracle);
  if (rejected.empty()) {
    report.problems.push_back(
        "oracle rejected none of the candidate sets; its laws are broken");
    return report;
  }

  for (int i = 0; i < samples; ++i) {
    const SeqKind kind = kinds[rng() % kinds.size()];
    auto s = random_valid_sequence(fam, oracle, kind, resolution, rng);
    auto t = random_valid_sequence(fam, oracle, kind, resolution, rng);
    if (!s.has_value() || !t.has_value()) {
      ++report.skipped;
      continue;
    }
    EPSequence s_alt = perturb_on(*s, rejected[rng() % rejected.size()], fam, rng);
    EPSequence t_alt = perturb_on(*t, rejected[rng() % rejected.size()], fam, rng);
    ++report.independence_total;
    try {
      if (check_independence(*s, s_alt, *t, t_alt, fam, oracle)) {
        ++report.independence_passed;
      } else {
        report.problems.push_back("shorting changed under representative change on sample " +
                                  std::to_string(i));
      }
    } catch (const std::exception& e) {
      report.problems.push_back("independence sample " + std::to_string(i) +
                                " failed: " + e.what());
    }
  }

  const NsDigraph nsd = build_ns_digraph(fam, oracle, fam.rank(), resolution);
  auto problems = verify_ns_partitions(nsd, fam, oracle);
  report.problems.insert(report.problems.end(), problems.begin(), problems.end());
  return report;
}

}  // namespace tfdg
