#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "primedyn/error.hpp"
#include "primedyn/primes.hpp"
#include "primedyn/symbol_sequence.hpp"

namespace primedyn {

/// p(i) mod k over the compact alphabet of residues that actually occur,
/// ordered by residue. Transient residues (2 mod 4, 3 mod 3, ...) are kept.
inline SymbolSequence prime_residues(const PrimeTable& primes, int k) {
  require(k >= 2, "modulus must be >= 2");
  require(!primes.empty(), "prime table is empty");
  const auto mod = static_cast<std::uint64_t>(k);

  std::set<std::uint64_t> present;
  for (auto p : primes.primes) present.insert(p % mod);
  require(present.size() <= 256, "too many residue classes for an 8-bit alphabet");

  std::vector<int> code_of(static_cast<std::size_t>(k), -1);
  SymbolSequence seq;
  int next = 0;
  for (auto r : present) {
    code_of[r] = next;
    seq.labels[next] = std::to_string(r);
    ++next;
  }
  // A single occurring residue still needs a 2-letter alphabet.
  seq.alphabet_size = std::max(2, next);
  seq.symbols.reserve(primes.count());
  for (auto p : primes.primes) seq.symbols.push_back(static_cast<Symbol>(code_of[p % mod]));
  seq.provenance = provenance::PrimeResidues{k};
  return seq;
}

/// Residue class of the second positive-density class modulo k (the first is 1).
inline std::uint64_t upper_class(int k) {
  switch (k) {
    case 3: return 2;
    case 4: return 3;
    case 6: return 5;
    default: throw DomainError("two-class sequence needs k in {3, 4, 6}");
  }
}

/// Binary sequence over the two positive-density classes modulo k in {3,4,6}:
/// 0 = residue 1, 1 = the other class. Primes outside both classes are dropped.
inline SymbolSequence two_class_sequence(const PrimeTable& primes, int k) {
  const std::uint64_t hi = upper_class(k);
  const auto mod = static_cast<std::uint64_t>(k);
  SymbolSequence seq;
  seq.alphabet_size = 2;
  seq.labels = {{0, "A"}, {1, "B"}};
  seq.provenance = provenance::TwoClass{k};
  seq.symbols.reserve(primes.count());
  for (auto p : primes.primes) {
    const auto r = p % mod;
    if (r == 1) seq.symbols.push_back(0);
    else if (r == hi) seq.symbols.push_back(1);
  }
  require(!seq.symbols.empty(), "no primes in the two residue classes");
  return seq;
}

/// Overlapping pairs of a binary sequence: 0=AA, 1=AB, 2=BA, 3=BB.
inline SymbolSequence transition_sequence(const SymbolSequence& base) {
  require(base.alphabet_size == 2, "transition sequence needs a binary base sequence");
  require(base.size() >= 2, "transition sequence needs at least two symbols");
  SymbolSequence seq;
  seq.alphabet_size = 4;
  seq.labels = {{0, "AA"}, {1, "AB"}, {2, "BA"}, {3, "BB"}};
  seq.provenance = provenance::Transition{};
  seq.symbols.resize(base.size() - 1);
  for (std::size_t i = 0; i + 1 < base.size(); ++i)
    seq.symbols[i] = static_cast<Symbol>(2 * base.symbols[i] + base.symbols[i + 1]);
  return seq;
}

/// Gap residues (p(n+1) - p(n)) mod k for consecutive entries >= 3, so the
/// odd gap 3 - 2 is skipped. Symbol = residue / 2; alphabet size k / 2.
inline SymbolSequence gap_residues(const PrimeTable& primes, int k = 6) {
  require(k >= 4 && k % 2 == 0, "gap modulus must be even and >= 4");
  require(k <= 512, "gap modulus too large for an 8-bit alphabet");
  auto first = std::lower_bound(primes.primes.begin(), primes.primes.end(), std::uint64_t{3});
  require(primes.primes.end() - first >= 2, "need at least two primes >= 3");

  SymbolSequence seq;
  seq.alphabet_size = k / 2;
  seq.provenance = provenance::GapResidues{k};
  if (k == 6) {
    seq.labels = {{0, "A"}, {1, "B"}, {2, "C"}};
  } else {
    for (int r = 0; r < k; r += 2) seq.labels[r / 2] = std::to_string(r);
  }
  const auto mod = static_cast<std::uint64_t>(k);
  seq.symbols.reserve(static_cast<std::size_t>(primes.primes.end() - first) - 1);
  for (auto it = first; it + 1 != primes.primes.end(); ++it) {
    const std::uint64_t gap = *(it + 1) - *it;
    require(gap % 2 == 0, "odd gap between entries >= 3");
    seq.symbols.push_back(static_cast<Symbol>((gap % mod) / 2));
  }
  return seq;
}

/// Residue value (0, 2, 4, ...) carried by a gap-residue symbol.
inline int gap_residue_value(Symbol s) { return 2 * static_cast<int>(s); }

}  // namespace primedyn
