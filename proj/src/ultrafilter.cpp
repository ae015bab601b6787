#include "tfdg/ultrafilter.hpp"

#include <charconv>
#include <random>
#include <stdexcept>

namespace tfdg {

std::string PrincipalOracle::describe() const {
  return "principal:" + std::to_string(n0_);
}

bool MultiplesOracle::decide(const EPSet& s) {
  // All sufficiently large multiples of the canonical period land on residue
  // 0, and any other witness modulus m would still hit residue 0 infinitely
  // often through multiples of lcm(m, period).  So the acceptance test is
  // exactly: residue 0 of the canonical pattern is present.
  const EPSet c = s.normalized();
  const auto& r = c.residues();
  return !r.empty() && r.front() == 0;
}

namespace {

EPSet random_epset(std::mt19937_64& rng) {
  const uint64_t period = 1 + rng() % 6;
  const uint64_t threshold = rng() % 5;
  std::vector<uint64_t> residues;
  for (uint64_t r = 0; r < period; ++r) {
    if (rng() % 2 == 0) residues.push_back(r);
  }
  std::vector<uint64_t> exceptions;
  for (uint64_t n = 0; n < threshold; ++n) {
    if (rng() % 2 == 0) exceptions.push_back(n);
  }
  return EPSet(threshold, period, residues, exceptions);
}

}  // namespace

LazyFipOracle::LazyFipOracle(uint64_t seed) : seed_(seed), core_(EPSet::all()) {
  // Seed the session with a handful of deterministic pseudorandom queries so
  // that different seeds genuinely walk toward different ultrafilters instead
  // of all agreeing until the first caller-supplied set.
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 6; ++i) {
    decide(random_epset(rng));
  }
}

bool LazyFipOracle::decide(const EPSet& s) {
  const EPSet inter = core_.intersect(s);
  if (inter.classify() != EPSet::Class::finite) {
    committed_.push_back(s);
    core_ = inter;
    return true;
  }
  // core_ is infinite and core_ & s is finite, so core_ minus s is infinite:
  // committing the complement keeps the core infinite.
  const EPSet comp = s.complement();
  committed_.push_back(comp);
  core_ = core_.intersect(comp);
  return false;
}

std::string LazyFipOracle::describe() const {
  return "lazyfip:" + std::to_string(seed_);
}

namespace {

uint64_t parse_u64_strict(const std::string& text, const std::string& what) {
  uint64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw std::invalid_argument("invalid " + what + ": '" + text + "'");
  }
  return value;
}

}  // namespace

std::unique_ptr<Oracle> make_oracle(const std::string& selector) {
  if (selector == "multiples") {
    return std::make_unique<MultiplesOracle>();
  }
  const std::string principal_prefix = "principal:";
  if (selector.rfind(principal_prefix, 0) == 0) {
    const uint64_t n0 =
        parse_u64_strict(selector.substr(principal_prefix.size()), "principal base");
    return std::make_unique<PrincipalOracle>(n0);
  }
  const std::string lazyfip_prefix = "lazyfip:";
  if (selector.rfind(lazyfip_prefix, 0) == 0) {
    const uint64_t seed =
        parse_u64_strict(selector.substr(lazyfip_prefix.size()), "lazyfip seed");
    return std::make_unique<LazyFipOracle>(seed);
  }
  throw std::invalid_argument(
      "unknown oracle selector '" + selector +
      "' (expected principal:<n0>, multiples, or lazyfip:<seed>)");
}

}  // namespace tfdg
