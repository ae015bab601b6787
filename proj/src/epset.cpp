#include "tfdg/epset.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tfdg {

uint64_t lcm_checked(uint64_t a, uint64_t b) {
  if (a == 0 || b == 0) throw std::invalid_argument("lcm of zero");
  uint64_t g = std::gcd(a, b);
  uint64_t q = a / g;
  if (q > UINT64_MAX / b) throw std::overflow_error("lcm overflow");
  return q * b;
}

EPSet::EPSet() : threshold_(0), period_(1), pattern_(1, false) {}

EPSet::EPSet(uint64_t threshold, uint64_t period, std::vector<uint64_t> residues,
             std::vector<uint64_t> exceptions)
    : threshold_(threshold), period_(period) {
  if (period_ == 0) throw std::invalid_argument("EPSet: period must be positive");
  pattern_.assign(period_, false);
  for (uint64_t r : residues) {
    if (r >= period_) throw std::invalid_argument("EPSet: residue out of range");
    pattern_[r] = true;
  }
  std::sort(exceptions.begin(), exceptions.end());
  exceptions.erase(std::unique(exceptions.begin(), exceptions.end()), exceptions.end());
  for (uint64_t e : exceptions) {
    if (e >= threshold_) throw std::invalid_argument("EPSet: exception not below threshold");
  }
  exceptions_ = std::move(exceptions);
}

EPSet EPSet::empty() { return EPSet(); }

EPSet EPSet::all() { return EPSet(0, 1, {0}, {}); }

EPSet EPSet::finite(std::vector<uint64_t> members) {
  if (members.empty()) return empty();
  uint64_t top = *std::max_element(members.begin(), members.end());
  return EPSet(top + 1, 1, {}, std::move(members));
}

EPSet EPSet::residue_class(uint64_t modulus, uint64_t residue) {
  return EPSet(0, modulus, {residue % (modulus == 0 ? 1 : modulus)}, {});
}

bool EPSet::member(uint64_t n) const {
  if (n < threshold_)
    return std::binary_search(exceptions_.begin(), exceptions_.end(), n);
  return pattern_[n % period_];
}

EPSet EPSet::normalized() const {
  // Minimal period: smallest divisor d of period_ with a d-periodic pattern.
  uint64_t d = period_;
  for (uint64_t cand = 1; cand <= period_ / 2; ++cand) {
    if (period_ % cand != 0) continue;
    bool ok = true;
    for (uint64_t r = cand; r < period_ && ok; ++r) ok = (pattern_[r] == pattern_[r % cand]);
    if (ok) {
      d = cand;
      break;
    }
  }
  std::vector<bool> pat(pattern_.begin(), pattern_.begin() + static_cast<ptrdiff_t>(d));

  // Minimal threshold: absorb prefix entries that already match the pattern.
  uint64_t thr = threshold_;
  std::vector<uint64_t> exc = exceptions_;
  while (thr > 0) {
    uint64_t m = thr - 1;
    bool actual = !exc.empty() && exc.back() == m;
    bool predicted = pat[m % d];
    if (actual != predicted) break;
    if (actual) exc.pop_back();
    --thr;
  }

  EPSet out;
  out.threshold_ = thr;
  out.period_ = d;
  out.pattern_ = std::move(pat);
  out.exceptions_ = std::move(exc);
  return out;
}

bool EPSet::is_canonical() const { return identical_to(normalized()); }

EPSet EPSet::complement() const {
  EPSet out;
  out.threshold_ = threshold_;
  out.period_ = period_;
  out.pattern_.assign(period_, false);
  for (uint64_t r = 0; r < period_; ++r) out.pattern_[r] = !pattern_[r];
  for (uint64_t n = 0; n < threshold_; ++n)
    if (!member(n)) out.exceptions_.push_back(n);
  return out.normalized();
}

EPSet EPSet::intersect(const EPSet& other) const {
  uint64_t p = lcm_checked(period_, other.period_);
  uint64_t thr = std::max(threshold_, other.threshold_);
  EPSet out;
  out.threshold_ = thr;
  out.period_ = p;
  out.pattern_.assign(p, false);
  for (uint64_t r = 0; r < p; ++r)
    out.pattern_[r] = pattern_[r % period_] && other.pattern_[r % other.period_];
  for (uint64_t n = 0; n < thr; ++n)
    if (member(n) && other.member(n)) out.exceptions_.push_back(n);
  return out.normalized();
}

EPSet EPSet::unite(const EPSet& other) const {
  return complement().intersect(other.complement()).complement();
}

EPSet EPSet::difference(const EPSet& other) const { return intersect(other.complement()); }

EPSet::Class EPSet::classify() const {
  EPSet c = normalized();
  size_t members = 0;
  for (uint64_t r = 0; r < c.period_; ++r) members += c.pattern_[r] ? 1 : 0;
  if (members == 0) return Class::finite;
  if (members == c.period_) return Class::cofinite;
  return Class::neither;
}

bool EPSet::is_empty() const {
  EPSet c = normalized();
  return c.exceptions_.empty() &&
         std::none_of(c.pattern_.begin(), c.pattern_.end(), [](bool b) { return b; });
}

bool EPSet::is_finite() const { return classify() == Class::finite; }

bool EPSet::subset_of(const EPSet& other) const { return difference(other).is_empty(); }

std::vector<uint64_t> EPSet::residues() const {
  std::vector<uint64_t> out;
  for (uint64_t r = 0; r < period_; ++r)
    if (pattern_[r]) out.push_back(r);
  return out;
}

bool EPSet::identical_to(const EPSet& other) const {
  return threshold_ == other.threshold_ && period_ == other.period_ &&
         pattern_ == other.pattern_ && exceptions_ == other.exceptions_;
}

bool operator==(const EPSet& a, const EPSet& b) {
  return a.normalized().identical_to(b.normalized());
}

}  // namespace tfdg
