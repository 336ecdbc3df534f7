#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

#include "primedyn/block_census.hpp"
#include "primedyn/error.hpp"
#include "primedyn/symbol_sequence.hpp"

namespace primedyn {

enum class Estimator {
  PlugIn,
  // Adds (K - 1) / (2N) to the Shannon (beta = 1) value only.
  MillerMadow,
};

struct RenyiEntry {
  int m = 0;
  double beta = 0.0;
  double H = 0.0;
  double rate = 0.0;  // H / m
};

struct RenyiResult {
  std::vector<RenyiEntry> entries;
  Estimator estimator = Estimator::PlugIn;
};

/// Default beta grid {0, 0.25, ..., 4}.
inline std::vector<double> default_beta_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 16; ++i) grid.push_back(0.25 * i);
  return grid;
}

/// Renyi block entropy H_m(beta) of the plug-in block distribution, in nats.
///   beta = 0: log of the number of observed blocks
///   beta = 1: Shannon entropy -sum P log P
///   otherwise: log(sum P^beta) / (1 - beta)
inline double renyi_block_entropy(const BlockCensus& census, double beta,
                                  Estimator estimator = Estimator::PlugIn) {
  if (!(beta >= 0.0)) throw DomainError("beta must be non-negative");
  require(!census.empty(), "census is empty");
  const auto total = static_cast<double>(census.total_windows());

  if (beta == 0.0) return std::log(static_cast<double>(census.distinct()));

  if (beta == 1.0) {
    double h = 0.0;
    for (const auto& [code, count] : census.entries()) {
      const double p = static_cast<double>(count) / total;
      h -= p * std::log(p);
    }
    if (estimator == Estimator::MillerMadow)
      h += (static_cast<double>(census.distinct()) - 1.0) / (2.0 * total);
    return std::max(h, 0.0);
  }

  double sum = 0.0;
  for (const auto& [code, count] : census.entries())
    sum += std::pow(static_cast<double>(count) / total, beta);
  return std::max(std::log(sum) / (1.0 - beta), 0.0);
}

/// Census for every m in 1..m_max (optionally one thread per m).
inline std::vector<BlockCensus> censuses_upto(const SymbolSequence& seq, int m_max, unsigned threads = 1) {
  require(m_max >= 1 && m_max <= 31, "m_max must be in [1, 31]");
  require(static_cast<std::size_t>(m_max) <= seq.size(), "m_max exceeds sequence length");
  block_space_size(seq.alphabet_size, m_max);
  std::vector<BlockCensus> out(static_cast<std::size_t>(m_max), BlockCensus(seq.alphabet_size, 1));
  if (threads <= 1) {
    for (int m = 1; m <= m_max; ++m) out[static_cast<std::size_t>(m - 1)] = count_blocks(seq, m);
    return out;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (int m = 1 + static_cast<int>(w); m <= m_max; m += static_cast<int>(threads))
        out[static_cast<std::size_t>(m - 1)] = count_blocks(seq, m);
    });
  }
  pool.clear();
  return out;
}

/// (m, H_m(beta) / m) for m = 1..m_max.
inline std::vector<std::pair<int, double>> entropy_rate_curve(const SymbolSequence& seq, int m_max, double beta,
                                                              unsigned threads = 1) {
  if (!(beta >= 0.0)) throw DomainError("beta must be non-negative");
  std::vector<std::pair<int, double>> curve;
  const auto censuses = censuses_upto(seq, m_max, threads);
  for (const auto& c : censuses)
    curve.emplace_back(c.block_length(), renyi_block_entropy(c, beta) / c.block_length());
  return curve;
}

/// Full (m, beta) grid of block entropies and rates.
inline RenyiResult renyi_grid(const SymbolSequence& seq, int m_max, const std::vector<double>& betas,
                              Estimator estimator = Estimator::PlugIn, unsigned threads = 1) {
  for (double b : betas)
    if (!(b >= 0.0)) throw DomainError("beta must be non-negative");
  RenyiResult result;
  result.estimator = estimator;
  for (const auto& c : censuses_upto(seq, m_max, threads)) {
    for (double b : betas) {
      const double h = renyi_block_entropy(c, b, estimator);
      result.entries.push_back({c.block_length(), b, h, h / c.block_length()});
    }
  }
  return result;
}

/// h(beta) approximated by H_m(beta) / m from a single census (default m = 10).
inline std::vector<std::pair<double, double>> spectrum_proxy(const SymbolSequence& seq,
                                                             const std::vector<double>& betas, int m = 10) {
  const auto census = count_blocks(seq, m);
  std::vector<std::pair<double, double>> out;
  for (double b : betas) out.emplace_back(b, renyi_block_entropy(census, b) / m);
  return out;
}

}  // namespace primedyn
