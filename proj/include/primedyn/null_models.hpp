#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "primedyn/error.hpp"
#include "primedyn/primes.hpp"
#include "primedyn/rng.hpp"
#include "primedyn/symbol_sequence.hpp"
#include "primedyn/symbolize.hpp"

namespace primedyn {

namespace nullspec {
/// i.i.d. uniform symbols over p letters.
struct Type1Uniform { int p = 2; };
/// i.i.d. symbols with the given probabilities.
struct Type1Weighted { std::vector<double> weights; };
/// Overlapping pairs of an i.i.d. binary stream with P(A) = weight_a.
struct Type2Transition { double weight_a = 0.5; };
/// Odd x in [3, xmax] kept independently with probability min(1, 2 / ln x).
struct Type3Cramer { std::uint64_t xmax = 0; };
}  // namespace nullspec

struct NullSpec {
  std::variant<nullspec::Type1Uniform, nullspec::Type1Weighted, nullspec::Type2Transition,
               nullspec::Type3Cramer>
      kind;
  std::size_t length = 0;  // ignored by Type3Cramer
  std::uint64_t seed = 0;
};

using NullOutput = std::variant<SymbolSequence, PrimeTable>;

namespace detail {

inline void check_weights(const std::vector<double>& weights) {
  require(weights.size() >= 2 && weights.size() <= 256, "need between 2 and 256 weights");
  double sum = 0.0;
  for (double w : weights) {
    require(w >= 0.0 && std::isfinite(w), "weights must be non-negative");
    sum += w;
  }
  require(std::abs(sum - 1.0) <= 1e-12, "weights must sum to 1");
}

inline SymbolSequence iid_sequence(const std::vector<double>& weights, std::size_t length, Xoshiro256& rng) {
  std::vector<double> cumulative(weights.size());
  std::partial_sum(weights.begin(), weights.end(), cumulative.begin());
  SymbolSequence seq;
  seq.alphabet_size = static_cast<int>(weights.size());
  seq.symbols.resize(length);
  for (auto& s : seq.symbols) {
    const double u = rng.uniform() * cumulative.back();
    std::size_t k = 0;
    while (k + 1 < cumulative.size() && u >= cumulative[k]) ++k;
    s = static_cast<Symbol>(k);
  }
  return seq;
}

}  // namespace detail

/// Symbol-valued null models (Types I and II).
inline SymbolSequence generate_symbol_null(const NullSpec& spec) {
  require(spec.length >= 1, "null sequence length must be positive");
  Xoshiro256 rng(spec.seed);
  if (const auto* u = std::get_if<nullspec::Type1Uniform>(&spec.kind)) {
    require(u->p >= 2 && u->p <= 256, "alphabet size must be in [2, 256]");
    SymbolSequence seq;
    seq.alphabet_size = u->p;
    seq.symbols.resize(spec.length);
    for (auto& s : seq.symbols) s = static_cast<Symbol>(rng.below(static_cast<std::uint64_t>(u->p)));
    seq.provenance = provenance::NullModel{"t1u", spec.seed};
    return seq;
  }
  if (const auto* w = std::get_if<nullspec::Type1Weighted>(&spec.kind)) {
    detail::check_weights(w->weights);
    auto seq = detail::iid_sequence(w->weights, spec.length, rng);
    seq.provenance = provenance::NullModel{"t1w", spec.seed};
    return seq;
  }
  if (const auto* t = std::get_if<nullspec::Type2Transition>(&spec.kind)) {
    detail::check_weights({t->weight_a, 1.0 - t->weight_a});
    auto base = detail::iid_sequence({t->weight_a, 1.0 - t->weight_a}, spec.length + 1, rng);
    auto seq = transition_sequence(base);
    seq.provenance = provenance::NullModel{"t2", spec.seed};
    return seq;
  }
  throw DomainError("null model kind does not produce a symbol sequence");
}

/// Modified Cramer model: evens are never pseudo-prime, odd x is with
/// probability min(1, 2 / ln x). The table's upper_bound is xmax.
inline PrimeTable generate_cramer(std::uint64_t xmax, std::uint64_t seed) {
  require(xmax >= 5, "Cramer model needs xmax >= 5");
  Xoshiro256 rng(seed);
  PrimeTable table;
  table.upper_bound = xmax;
  for (std::uint64_t x = 3; x <= xmax; x += 2) {
    const double prob = std::min(1.0, 2.0 / std::log(static_cast<double>(x)));
    // One draw per candidate keeps the stream aligned for every x.
    const double u = rng.uniform();
    if (u < prob) table.primes.push_back(x);
  }
  return table;
}

inline NullOutput generate_null(const NullSpec& spec) {
  if (const auto* c = std::get_if<nullspec::Type3Cramer>(&spec.kind)) return generate_cramer(c->xmax, spec.seed);
  return generate_symbol_null(spec);
}

/// Number of admissible and forbidden m-blocks of the Type II model:
/// (2^(m+1), 2^m (2^m - 2)).
struct Type2Counts {
  std::uint64_t admissible = 0;
  std::uint64_t forbidden = 0;
};

inline Type2Counts type2_counts(int m) {
  require(m >= 1, "block length must be positive");
  if (m > 31) throw DomainError("type II counts overflow");
  const std::uint64_t two_m = std::uint64_t{1} << m;
  return {2 * two_m, two_m * (two_m - 2)};
}

/// Checks F(m) = 4 F(m-1) + 2 A(m-1) and A(m) + F(m) = 4^m for m <= m_max.
inline bool type2_recursion_check(int m_max) {
  require(m_max >= 2, "m_max must be >= 2");
  require(m_max <= 31, "m_max must be <= 31");
  auto prev = type2_counts(1);
  if (prev.forbidden != 0) return false;
  for (int m = 2; m <= m_max; ++m) {
    const auto cur = type2_counts(m);
    if (cur.forbidden != 4 * prev.forbidden + 2 * prev.admissible) return false;
    if (cur.admissible + cur.forbidden != (std::uint64_t{1} << (2 * m))) return false;
    prev = cur;
  }
  return true;
}

}  // namespace primedyn
