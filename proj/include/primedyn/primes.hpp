#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <thread>
#include <vector>

#include "primedyn/error.hpp"

namespace primedyn {

/// Ascending list of primes, complete up to `upper_bound`.
struct PrimeTable {
  std::uint64_t upper_bound = 0;
  std::vector<std::uint64_t> primes;

  std::size_t count() const noexcept { return primes.size(); }
  bool empty() const noexcept { return primes.empty(); }
};

struct SieveOptions {
  // Bytes of sieve state per segment; one byte per odd number.
  std::size_t segment_bytes = 32 * 1024;
  unsigned threads = 1;
};

namespace detail {

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Odd primes <= limit with a plain (unsegmented) sieve; limit is ~sqrt(n).
inline std::vector<std::uint64_t> small_odd_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 3) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 3; i * i <= limit; i += 2)
    if (!composite[i])
      for (std::uint64_t j = i * i; j <= limit; j += 2 * i) composite[j] = true;
  for (std::uint64_t i = 3; i <= limit; i += 2)
    if (!composite[i]) out.push_back(i);
  return out;
}

// Sieves odd numbers in [low, high] (low odd) and appends the primes to out.
// `mark` is scratch space of at least (high - low) / 2 + 1 bytes.
inline void sieve_odd_segment(std::uint64_t low, std::uint64_t high,
                              const std::vector<std::uint64_t>& base,
                              std::vector<std::uint8_t>& mark,
                              std::vector<std::uint64_t>& out) {
  const std::size_t len = static_cast<std::size_t>((high - low) / 2 + 1);
  std::fill(mark.begin(), mark.begin() + static_cast<std::ptrdiff_t>(len), 1);
  for (std::uint64_t q : base) {
    if (q * q > high) break;
    std::uint64_t start = q * q;
    if (start < low) {
      start = (low + q - 1) / q * q;
      if (start % 2 == 0) start += q;
    }
    for (std::uint64_t j = (start - low) / 2; j < len; j += q) mark[j] = 0;
  }
  for (std::size_t i = 0; i < len; ++i)
    if (mark[i]) out.push_back(low + 2 * i);
}

}  // namespace detail

/// All primes <= n by an odd-only segmented sieve of Eratosthenes.
///
/// Working memory beyond the output is one segment per worker plus the base
/// primes up to sqrt(n). The result does not depend on `threads` or
/// `segment_bytes`.
inline PrimeTable sieve_upto(std::uint64_t n, SieveOptions options = {}) {
  if (n < 2) throw DomainError("empty range");
  if (n > (std::uint64_t{1} << 63)) throw DomainError("upper bound beyond 2^63");
  require(options.segment_bytes >= 64, "segment too small");

  PrimeTable table;
  table.upper_bound = n;
  table.primes.push_back(2);
  if (n < 3) return table;

  const auto base = detail::small_odd_primes(detail::isqrt(n));
  const std::uint64_t span = 2 * static_cast<std::uint64_t>(options.segment_bytes);
  const std::uint64_t n_segments = (n - 3) / span + 1;
  const unsigned workers = std::max(1u, std::min<unsigned>(
      options.threads, static_cast<unsigned>(std::min<std::uint64_t>(n_segments, 1024))));

  auto segment_bounds = [&](std::uint64_t s) {
    const std::uint64_t low = 3 + s * span;
    const std::uint64_t high = std::min(n, low + span - 2);
    return std::pair{low, high};
  };

  if (workers == 1) {
    std::vector<std::uint8_t> mark(options.segment_bytes);
    for (std::uint64_t s = 0; s < n_segments; ++s) {
      auto [low, high] = segment_bounds(s);
      detail::sieve_odd_segment(low, high, base, mark, table.primes);
    }
    return table;
  }

  // Contiguous blocks of segments per worker, concatenated in order.
  std::vector<std::vector<std::uint64_t>> parts(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const std::uint64_t first = n_segments * w / workers;
        const std::uint64_t last = n_segments * (w + 1) / workers;
        std::vector<std::uint8_t> mark(options.segment_bytes);
        for (std::uint64_t s = first; s < last; ++s) {
          auto [low, high] = segment_bounds(s);
          detail::sieve_odd_segment(low, high, base, mark, parts[w]);
        }
      });
    }
  }
  for (auto& part : parts)
    table.primes.insert(table.primes.end(), part.begin(), part.end());
  return table;
}

/// Upper bound on the n-th prime: n (ln n + ln ln n) for n >= 6.
inline std::uint64_t nth_prime_upper_bound(std::uint64_t n) {
  require(n >= 1, "n must be positive");
  if (n < 6) return 13;
  const long double ln = std::log(static_cast<long double>(n));
  const long double bound = std::ceil(static_cast<long double>(n) * (ln + std::log(ln)));
  if (!(bound < static_cast<long double>(std::uint64_t{1} << 62)))
    throw DomainError("prime bound overflow");
  return static_cast<std::uint64_t>(bound);
}

/// Exactly the first n primes.
inline PrimeTable first_n_primes(std::uint64_t n, SieveOptions options = {}) {
  require(n >= 1, "n must be positive");
  std::uint64_t bound = nth_prime_upper_bound(n);
  for (;;) {
    PrimeTable table = sieve_upto(bound, options);
    if (table.count() >= n) {
      table.primes.resize(static_cast<std::size_t>(n));
      table.upper_bound = table.primes.back();
      return table;
    }
    if (bound > (std::uint64_t{1} << 61)) throw DomainError("prime bound overflow");
    bound *= 2;
  }
}

/// Offset logarithmic integral Li(x) = integral of dt / ln t from 2 to x.
///
/// Substituting t = e^u gives the smooth integrand e^u / u on [ln 2, ln x],
/// integrated with composite 10-point Gauss-Legendre on unit-width panels.
inline double logarithmic_integral(double x) {
  if (!(x >= 2.0)) throw DomainError("logarithmic integral needs x >= 2");
  static constexpr double nodes[5] = {0.1488743389816312, 0.4333953941292472,
                                      0.6794095682990244, 0.8650633666889845,
                                      0.9739065285171717};
  static constexpr double weights[5] = {0.2955242247147529, 0.2692667193099963,
                                        0.2190863625159820, 0.1494513491505806,
                                        0.0666713443086881};
  const double a = std::log(2.0);
  const double b = std::log(x);
  if (b <= a) return 0.0;
  const auto panels = static_cast<int>(std::ceil((b - a) * 4.0)) + 1;
  const double h = (b - a) / panels;
  long double total = 0.0L;
  for (int i = 0; i < panels; ++i) {
    const double mid = a + (i + 0.5) * h;
    long double panel = 0.0L;
    for (int j = 0; j < 5; ++j) {
      for (double sign : {-1.0, 1.0}) {
        const double u = mid + sign * nodes[j] * h / 2;
        panel += weights[j] * std::exp(u) / u;
      }
    }
    total += panel * h / 2;
  }
  return static_cast<double>(total);
}

}  // namespace primedyn
