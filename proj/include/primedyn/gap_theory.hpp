#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "primedyn/error.hpp"
#include "primedyn/primes.hpp"
#include "primedyn/symbolize.hpp"

namespace primedyn {

// ---------------------------------------------------------------------------
// Admissibility of gap-residue blocks
// ---------------------------------------------------------------------------

/// Gap residues modulo 6, each in {0, 2, 4}.
using GapBlock = std::vector<int>;

enum class GapVerdict {
  Generic,      // admissible: no prime covers the cumulative offsets
  Exceptional,  // covered mod 3, yet realised once by the gaps starting at prime 3
  Forbidden,    // covered mod 3: every large instance contains a multiple of 3
};

inline const char* to_string(GapVerdict v) {
  switch (v) {
    case GapVerdict::Generic: return "admissible";
    case GapVerdict::Exceptional: return "admissible-exceptional";
    case GapVerdict::Forbidden: return "forbidden";
  }
  return "?";
}

struct GapResidueBlock {
  GapBlock residues;
  GapVerdict verdict = GapVerdict::Generic;
  std::optional<std::uint64_t> witness_prime;  // set iff Forbidden

  bool admissible() const noexcept { return verdict != GapVerdict::Forbidden; }
};

inline bool is_small_prime(std::uint64_t r) {
  if (r < 2) return false;
  for (std::uint64_t d = 2; d * d <= r; ++d)
    if (r % d == 0) return false;
  return true;
}

/// True iff the cumulative offsets {0, h1, h1+h2, ...} hit every residue mod r.
inline bool covering_check(std::span<const std::uint64_t> half_gaps, std::uint64_t r) {
  if (!is_small_prime(r)) throw DomainError("covering modulus must be prime");
  require(!half_gaps.empty(), "half-gap tuple is empty");
  if (half_gaps.size() + 1 < r) return false;
  std::vector<bool> hit(r, false);
  std::uint64_t sum = 0;
  std::uint64_t distinct = 1;
  hit[0] = true;
  for (auto h : half_gaps) {
    sum = (sum + h % r) % r;
    if (!hit[sum]) {
      hit[sum] = true;
      ++distinct;
    }
  }
  return distinct == r;
}

inline void check_gap_block(std::span<const int> residues) {
  require(!residues.empty(), "gap block is empty");
  for (int r : residues)
    if (r != 0 && r != 2 && r != 4) throw DomainError("gap residue must be 0, 2 or 4");
}

/// First m gap residues mod 6 of the primes starting at 3: 2,2,4,2,4,2,4,0,...
inline GapBlock prime3_gap_prefix(int m) {
  require(m >= 1, "prefix length must be positive");
  const auto primes = first_n_primes(static_cast<std::uint64_t>(m) + 2);
  const auto seq = gap_residues(primes, 6);
  GapBlock out;
  for (std::size_t i = 0; i < static_cast<std::size_t>(m); ++i) out.push_back(gap_residue_value(seq.symbols[i]));
  return out;
}

namespace detail {

// Bitmask of residues mod 3 reached by {0} and the cumulative half-gaps.
inline unsigned mod3_footprint(std::span<const int> residues) {
  unsigned mask = 1;
  int sum = 0;
  for (int r : residues) {
    sum = (sum + r / 2) % 3;
    mask |= 1u << sum;
  }
  return mask;
}

}  // namespace detail

/// Admissibility verdict for a block of gap residues mod 6.
///
/// Only r = 3 can forbid a residue block: for r >= 5 each residue class
/// contains gaps of every size mod r, so a non-covering representative exists.
inline GapResidueBlock is_admissible_gap_block(std::span<const int> residues) {
  check_gap_block(residues);
  GapResidueBlock block;
  block.residues.assign(residues.begin(), residues.end());
  if (detail::mod3_footprint(residues) != 0b111) {
    block.verdict = GapVerdict::Generic;
    return block;
  }
  if (prime3_gap_prefix(static_cast<int>(residues.size())) == block.residues) {
    block.verdict = GapVerdict::Exceptional;
    return block;
  }
  block.verdict = GapVerdict::Forbidden;
  block.witness_prime = 3;
  return block;
}

struct GapBlockEnumeration {
  int m = 0;
  std::vector<GapResidueBlock> admissible;  // lexicographic in (0, 2, 4)
  std::vector<GapBlock> forbidden;          // listed only when m <= kMaxListedForbidden
  std::uint64_t forbidden_count = 0;

  static constexpr int kMaxListedForbidden = 13;
};

/// Classifies all 3^m residue blocks.
///
/// Admissible blocks come from a depth-first walk that stops extending a
/// prefix once it is covered mod 3 (covering persists under extension),
/// except along the prime-3 prefix.
inline GapBlockEnumeration enumerate_gap_blocks(int m) {
  require(m >= 1, "block length must be positive");
  if (m > 20) throw DomainError("block length too large to enumerate (max 20)");
  const GapBlock prefix = prime3_gap_prefix(m);

  GapBlockEnumeration out;
  out.m = m;
  GapBlock current;
  current.reserve(static_cast<std::size_t>(m));

  auto walk = [&](auto&& self, unsigned mask, int sum, bool on_prefix) -> void {
    const auto depth = current.size();
    if (depth == static_cast<std::size_t>(m)) {
      GapResidueBlock b;
      b.residues = current;
      b.verdict = mask == 0b111 ? GapVerdict::Exceptional : GapVerdict::Generic;
      out.admissible.push_back(std::move(b));
      return;
    }
    for (int r : {0, 2, 4}) {
      const int s = (sum + r / 2) % 3;
      const unsigned next = mask | (1u << s);
      const bool stays = on_prefix && prefix[depth] == r;
      if (next == 0b111 && !stays) continue;
      current.push_back(r);
      self(self, next, s, stays);
      current.pop_back();
    }
  };
  walk(walk, 1u, 0, true);

  std::uint64_t total = 1;
  for (int i = 0; i < m; ++i) total *= 3;
  out.forbidden_count = total - out.admissible.size();

  if (m <= GapBlockEnumeration::kMaxListedForbidden) {
    GapBlock block(static_cast<std::size_t>(m));
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t c = code;
      for (int i = m - 1; i >= 0; --i) {
        block[static_cast<std::size_t>(i)] = 2 * static_cast<int>(c % 3);
        c /= 3;
      }
      if (detail::mod3_footprint(block) == 0b111 && block != prefix) out.forbidden.push_back(block);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hardy-Littlewood constants
// ---------------------------------------------------------------------------

/// C(g_1..g_m) = 2^m prod_{q > 2} (1 - w(q)/q) / (1 - 1/q)^(m+1), truncated at a cutoff.
struct HLValue {
  std::vector<std::uint64_t> offsets;
  double value = 0.0;
  std::uint64_t prime_cutoff = 0;
  // Relative error bound of the truncated product.
  double tail_error_bound = 0.0;
};

/// Odd primes up to a cutoff plus suffix sums of log((1 - k/q) / (1 - 1/q)^k),
/// so each constant costs only the primes not exceeding its largest offset.
class HardyLittlewood {
 public:
  explicit HardyLittlewood(std::uint64_t cutoff = 1'000'000, int max_tuple = 6) : cutoff_(cutoff) {
    require(cutoff >= 100, "prime cutoff must be >= 100");
    require(max_tuple >= 2 && max_tuple <= 64, "max tuple size must be in [2, 64]");
    auto table = sieve_upto(cutoff);
    primes_.assign(table.primes.begin() + 1, table.primes.end());
    suffix_.resize(static_cast<std::size_t>(max_tuple) + 1);
    for (int k = 2; k <= max_tuple; ++k) {
      auto& s = suffix_[static_cast<std::size_t>(k)];
      s.assign(primes_.size() + 1, 0.0L);
      for (std::size_t i = primes_.size(); i-- > 0;) {
        const auto q = primes_[i];
        s[i] = s[i + 1] + (q > static_cast<std::uint64_t>(k) ? log_factor(q, k, k) : 0.0L);
      }
    }
  }

  std::uint64_t cutoff() const noexcept { return cutoff_; }
  const std::vector<std::uint64_t>& odd_primes() const noexcept { return primes_; }

  /// Truncated constant for offsets g_1 < ... < g_m (the tuple p, p+2g_1, ..., p+2g_m).
  HLValue constant(std::span<const std::uint64_t> offsets) const {
    require(!offsets.empty(), "offset tuple is empty");
    for (std::size_t i = 0; i < offsets.size(); ++i)
      if (offsets[i] == 0 || (i > 0 && offsets[i] <= offsets[i - 1]))
        throw DomainError("offsets must be strictly increasing positive integers");

    HLValue out;
    out.offsets.assign(offsets.begin(), offsets.end());
    out.prime_cutoff = cutoff_;
    const int k = static_cast<int>(offsets.size()) + 1;
    const double q_max = static_cast<double>(cutoff_);
    out.tail_error_bound = 0.5 * k * (k - 1) / (q_max * std::log(q_max));

    // Above max(g_m, k) every offset has its own residue, so w(q) = k.
    const std::uint64_t direct_limit = std::max<std::uint64_t>(offsets.back(), static_cast<std::uint64_t>(k));
    std::vector<std::uint64_t> residues(static_cast<std::size_t>(k));
    long double log_sum = 0.0L;
    std::size_t i = 0;
    for (; i < primes_.size() && primes_[i] <= direct_limit; ++i) {
      const auto q = primes_[i];
      residues[0] = 0;
      for (std::size_t j = 0; j < offsets.size(); ++j) residues[j + 1] = offsets[j] % q;
      std::sort(residues.begin(), residues.end());
      const auto omega = static_cast<int>(std::unique(residues.begin(), residues.end()) - residues.begin());
      if (static_cast<std::uint64_t>(omega) == q) {
        out.value = 0.0;
        return out;
      }
      log_sum += log_factor(q, omega, k);
    }
    if (k < static_cast<int>(suffix_.size())) {
      log_sum += suffix_[static_cast<std::size_t>(k)][i];
    } else {
      for (; i < primes_.size(); ++i) log_sum += log_factor(primes_[i], k, k);
    }
    out.value = static_cast<double>(std::ldexp(std::exp(log_sum), k - 1));
    return out;
  }

  HLValue constant(std::initializer_list<std::uint64_t> offsets) const {
    return constant(std::span<const std::uint64_t>(offsets.begin(), offsets.size()));
  }

  /// C(g) from C(1) and the odd prime divisors q of g: C(1) prod (q - 1) / (q - 2).
  double single_gap(std::uint64_t g) const {
    require(g >= 1, "gap index must be positive");
    double value = constant({1}).value;
    std::uint64_t rest = g;
    while (rest % 2 == 0) rest /= 2;
    for (std::uint64_t q = 3; q * q <= rest; q += 2) {
      if (rest % q != 0) continue;
      value *= static_cast<double>(q - 1) / static_cast<double>(q - 2);
      while (rest % q == 0) rest /= q;
    }
    if (rest > 1) value *= static_cast<double>(rest - 1) / static_cast<double>(rest - 2);
    return value;
  }

 private:
  // log((1 - omega/q) / (1 - 1/q)^k)
  static long double log_factor(std::uint64_t q, int omega, int k) {
    const long double inv = 1.0L / static_cast<long double>(q);
    return std::log1p(-omega * inv) - k * std::log1p(-inv);
  }

  std::uint64_t cutoff_;
  std::vector<std::uint64_t> primes_;
  std::vector<std::vector<long double>> suffix_;
};

inline HLValue hl_constant(std::span<const std::uint64_t> offsets, std::uint64_t cutoff = 1'000'000) {
  return HardyLittlewood(cutoff, static_cast<int>(std::min<std::size_t>(offsets.size() + 1, 64))).constant(offsets);
}

inline double hl_single_gap(std::uint64_t g1, std::uint64_t cutoff = 1'000'000) {
  return HardyLittlewood(cutoff, 2).single_gap(g1);
}

struct AuxProducts {
  double a = 0.0;  // prod_{q >= 5} (1 - 2/q) / (1 - 1/q)^3; diverges as the cutoff grows
  double b = 0.0;  // prod_{q >= 5} (1 - 3/q) / (1 - 1/q)^3
  std::uint64_t prime_cutoff = 0;
  double a_tail_error_bound = std::numeric_limits<double>::infinity();
  double b_tail_error_bound = 0.0;
};

inline AuxProducts aux_products(const HardyLittlewood& hl) {
  AuxProducts out;
  out.prime_cutoff = hl.cutoff();
  long double log_a = 0.0L;
  long double log_b = 0.0L;
  for (auto q : hl.odd_primes()) {
    if (q < 5) continue;
    const long double inv = 1.0L / static_cast<long double>(q);
    const long double denom = 3 * std::log1p(-inv);
    log_a += std::log1p(-2 * inv) - denom;
    log_b += std::log1p(-3 * inv) - denom;
  }
  out.a = static_cast<double>(std::exp(log_a));
  out.b = static_cast<double>(std::exp(log_b));
  const double q_max = static_cast<double>(hl.cutoff());
  out.b_tail_error_bound = 3.0 / (q_max * std::log(q_max));
  return out;
}

inline AuxProducts aux_products(std::uint64_t cutoff = 1'000'000) { return aux_products(HardyLittlewood(cutoff, 2)); }

// ---------------------------------------------------------------------------
// Densities of gap-residue blocks
// ---------------------------------------------------------------------------

/// Sum of C(o_1, ..., o_m) over cumulative offsets o_j = 3 i_j + c_j realising
/// the block, where c_j is the cumulative half-residue mod 3. Offsets must
/// increase strictly, which fixes the lower end of each index; each index then
/// runs over `order` consecutive values.
inline double block_density_numerator(std::span<const int> residues, int order, const HardyLittlewood& hl) {
  check_gap_block(residues);
  require(order >= 1, "truncation order must be positive");
  const std::size_t m = residues.size();
  std::vector<std::uint64_t> cumulative(m);
  {
    std::uint64_t c = 0;
    for (std::size_t j = 0; j < m; ++j) {
      c = (c + static_cast<std::uint64_t>(residues[j] / 2)) % 3;
      cumulative[j] = c;
    }
  }
  std::vector<std::uint64_t> index(m);
  std::vector<std::uint64_t> offsets(m);
  double sum = 0.0;

  auto recurse = [&](auto&& self, std::size_t j) -> void {
    if (j == m) {
      sum += hl.constant(offsets).value;
      return;
    }
    const std::uint64_t prev_index = j == 0 ? 0 : index[j - 1];
    const std::uint64_t prev_c = j == 0 ? 0 : cumulative[j - 1];
    const std::uint64_t start = cumulative[j] > prev_c ? prev_index : prev_index + 1;
    for (std::uint64_t i = start; i < start + static_cast<std::uint64_t>(order); ++i) {
      index[j] = i;
      offsets[j] = 3 * i + cumulative[j];
      self(self, j + 1);
    }
  };
  recurse(recurse, 0);
  return sum;
}

/// Normalised density of an admissible block at a truncation order; the
/// normaliser sums the numerators of every admissible block of the same length.
inline double block_density(std::span<const int> residues, int order, const HardyLittlewood& hl) {
  check_gap_block(residues);
  if (!is_admissible_gap_block(residues).admissible())
    throw DomainError("density undefined for forbidden block");
  double z = 0.0;
  double numerator = 0.0;
  for (const auto& block : enumerate_gap_blocks(static_cast<int>(residues.size())).admissible) {
    const double term = block_density_numerator(block.residues, order, hl);
    z += term;
    if (std::equal(block.residues.begin(), block.residues.end(), residues.begin(), residues.end()))
      numerator = term;
  }
  return numerator / z;
}

/// Densities (p(0), p(2), p(4)) of single gap residues truncated at an order:
/// sums of C(3i), C(3i+1), C(3i+2) over gaps up to 6 * order.
inline std::array<double, 3> residue_densities(int order, const HardyLittlewood& hl) {
  require(order >= 1, "truncation order must be positive");
  std::array<double, 3> sums{};
  for (int i = 0; i < order; ++i) {
    sums[0] += hl.single_gap(3 * static_cast<std::uint64_t>(i) + 3);
    sums[1] += hl.single_gap(3 * static_cast<std::uint64_t>(i) + 1);
    sums[2] += hl.single_gap(3 * static_cast<std::uint64_t>(i) + 2);
  }
  const double z = sums[0] + sums[1] + sums[2];
  return {sums[0] / z, sums[1] / z, sums[2] / z};
}

inline double residue_density(int residue, int order, const HardyLittlewood& hl) {
  if (residue != 0 && residue != 2 && residue != 4) throw DomainError("gap residue must be 0, 2 or 4");
  return residue_densities(order, hl)[static_cast<std::size_t>(residue / 2)];
}

}  // namespace primedyn
