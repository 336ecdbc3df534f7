#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "primedyn/error.hpp"
#include "primedyn/symbol_sequence.hpp"

namespace primedyn {

/// Base-p encoding of an m-block, most significant symbol first.
using BlockCode = std::uint64_t;

/// p^m, or DomainError("block code overflow") if it does not fit in 64 bits.
inline BlockCode block_space_size(int p, int m) {
  require(p >= 2, "alphabet size must be >= 2");
  require(m >= 1, "block length must be positive");
  BlockCode size = 1;
  for (int i = 0; i < m; ++i) {
    if (size > ~BlockCode{0} / static_cast<BlockCode>(p)) throw DomainError("block code overflow");
    size *= static_cast<BlockCode>(p);
  }
  return size;
}

inline std::vector<Symbol> decode_block(BlockCode code, int p, int m) {
  std::vector<Symbol> out(static_cast<std::size_t>(m));
  for (int i = m - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<Symbol>(code % static_cast<BlockCode>(p));
    code /= static_cast<BlockCode>(p);
  }
  return out;
}

inline BlockCode encode_block(std::span<const Symbol> block, int p) {
  BlockCode code = 0;
  for (Symbol s : block) code = code * static_cast<BlockCode>(p) + s;
  return code;
}

/// Exact counts of all overlapping length-m windows of a sequence.
class BlockCensus {
 public:
  using Entry = std::pair<BlockCode, std::uint64_t>;

  BlockCensus(int p, int m) : p_(p), m_(m) {}

  // `entries` must be sorted by code with positive counts.
  BlockCensus(int p, int m, std::vector<Entry> entries) : p_(p), m_(m), entries_(std::move(entries)) {
    for (const auto& e : entries_) total_ += e.second;
  }

  int alphabet_size() const noexcept { return p_; }
  int block_length() const noexcept { return m_; }
  std::uint64_t total_windows() const noexcept { return total_; }
  std::size_t distinct() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return total_ == 0; }

  /// Observed blocks, ascending by code.
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  std::uint64_t count(BlockCode code) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), code,
                               [](const Entry& e, BlockCode c) { return e.first < c; });
    return (it != entries_.end() && it->first == code) ? it->second : 0;
  }

  std::uint64_t count(std::span<const Symbol> block) const { return count(encode_block(block, p_)); }

  /// Sum of two censuses of the same (p, m).
  BlockCensus merged(const BlockCensus& other) const {
    require(p_ == other.p_ && m_ == other.m_, "cannot merge censuses of different shape");
    std::vector<Entry> out;
    out.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
      if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
        out.push_back(*a++);
      } else if (a == entries_.end() || b->first < a->first) {
        out.push_back(*b++);
      } else {
        out.emplace_back(a->first, a->second + b->second);
        ++a;
        ++b;
      }
    }
    return BlockCensus(p_, m_, std::move(out));
  }

  bool operator==(const BlockCensus& other) const {
    return p_ == other.p_ && m_ == other.m_ && entries_ == other.entries_;
  }

 private:
  int p_;
  int m_;
  std::uint64_t total_ = 0;
  std::vector<Entry> entries_;
};

namespace detail {

// Dense counting arrays are used up to this many possible blocks.
inline constexpr BlockCode kDenseLimit = BlockCode{1} << 22;

// Census of the windows starting at positions [first, last) of `symbols`.
inline BlockCensus count_window_range(std::span<const Symbol> symbols, int p, int m,
                                      std::size_t first, std::size_t last) {
  const BlockCode space = block_space_size(p, m);
  const auto base = static_cast<BlockCode>(p);
  const BlockCode top = space / base;  // p^(m-1)
  std::vector<BlockCensus::Entry> entries;
  if (first >= last) return BlockCensus(p, m);

  BlockCode code = 0;
  for (std::size_t i = first; i + 1 < first + static_cast<std::size_t>(m); ++i) code = code * base + symbols[i];

  if (space <= kDenseLimit) {
    std::vector<std::uint64_t> dense(static_cast<std::size_t>(space), 0);
    for (std::size_t start = first; start < last; ++start) {
      code = (code % top) * base + symbols[start + static_cast<std::size_t>(m) - 1];
      ++dense[static_cast<std::size_t>(code)];
    }
    for (std::size_t c = 0; c < dense.size(); ++c)
      if (dense[c]) entries.emplace_back(static_cast<BlockCode>(c), dense[c]);
  } else {
    std::vector<BlockCode> codes;
    codes.reserve(last - first);
    for (std::size_t start = first; start < last; ++start) {
      code = (top == 0 ? 0 : code % top) * base + symbols[start + static_cast<std::size_t>(m) - 1];
      codes.push_back(code);
    }
    std::sort(codes.begin(), codes.end());
    for (std::size_t i = 0; i < codes.size();) {
      std::size_t j = i;
      while (j < codes.size() && codes[j] == codes[i]) ++j;
      entries.emplace_back(codes[i], static_cast<std::uint64_t>(j - i));
      i = j;
    }
  }
  return BlockCensus(p, m, std::move(entries));
}

}  // namespace detail

/// Census of the length-m windows (stride 1) of `seq`.
inline BlockCensus count_blocks(const SymbolSequence& seq, int m) {
  require(m >= 1, "block length must be positive");
  require(static_cast<std::size_t>(m) <= seq.size(), "block length exceeds sequence length");
  block_space_size(seq.alphabet_size, m);
  return detail::count_window_range(seq.symbols, seq.alphabet_size, m, 0, seq.size() - static_cast<std::size_t>(m) + 1);
}

/// Census computed over the window-start chunks delimited by `cuts`
/// (ascending positions strictly inside the window range), merged by addition.
/// Each chunk reads m - 1 symbols past its end, so the result equals
/// count_blocks for every choice of cuts.
inline BlockCensus count_blocks_chunked(const SymbolSequence& seq, int m,
                                        std::span<const std::size_t> cuts, unsigned threads = 1) {
  require(m >= 1, "block length must be positive");
  require(static_cast<std::size_t>(m) <= seq.size(), "block length exceeds sequence length");
  block_space_size(seq.alphabet_size, m);
  const std::size_t windows = seq.size() - static_cast<std::size_t>(m) + 1;

  std::vector<std::size_t> bounds{0};
  for (auto c : cuts) {
    require(c > bounds.back() && c < windows, "chunk cuts must be ascending inside the window range");
    bounds.push_back(c);
  }
  bounds.push_back(windows);
  const std::size_t chunks = bounds.size() - 1;

  std::vector<BlockCensus> parts(chunks, BlockCensus(seq.alphabet_size, m));
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
  if (workers == 1) {
    for (std::size_t c = 0; c < chunks; ++c)
      parts[c] = detail::count_window_range(seq.symbols, seq.alphabet_size, m, bounds[c], bounds[c + 1]);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t c = w; c < chunks; c += workers)
          parts[c] = detail::count_window_range(seq.symbols, seq.alphabet_size, m, bounds[c], bounds[c + 1]);
      });
    }
  }
  BlockCensus total(seq.alphabet_size, m);
  for (const auto& part : parts) total = total.merged(part);
  return total;
}

/// Parallel census over `threads` equal chunks; identical to count_blocks.
inline BlockCensus count_blocks_parallel(const SymbolSequence& seq, int m, unsigned threads) {
  require(static_cast<std::size_t>(m) <= seq.size() && m >= 1, "block length exceeds sequence length");
  const std::size_t windows = seq.size() - static_cast<std::size_t>(m) + 1;
  std::vector<std::size_t> cuts;
  const std::size_t n = std::max<std::size_t>(1, std::min<std::size_t>(threads, windows));
  for (std::size_t i = 1; i < n; ++i) cuts.push_back(windows * i / n);
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::erase(cuts, std::size_t{0});
  return count_blocks_chunked(seq, m, cuts, threads);
}

/// Blocks with a non-zero count.
inline std::vector<BlockCode> observed_block_set(const BlockCensus& census) {
  std::vector<BlockCode> out;
  out.reserve(census.distinct());
  for (const auto& e : census.entries()) out.push_back(e.first);
  return out;
}

/// Blocks of the full p^m space never observed. Unobserved is not forbidden.
inline std::vector<BlockCode> missing_blocks(const BlockCensus& census) {
  const BlockCode space = block_space_size(census.alphabet_size(), census.block_length());
  require(space <= (BlockCode{1} << 32), "block space too large to list missing blocks");
  std::vector<BlockCode> out;
  auto it = census.entries().begin();
  for (BlockCode c = 0; c < space; ++c) {
    if (it != census.entries().end() && it->first == c) {
      ++it;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

/// Hyphen-separated labels of a block, e.g. "A-B" or "AB-BA".
inline std::string block_label(const SymbolSequence& seq, BlockCode code, int m) {
  std::string out;
  for (Symbol s : decode_block(code, seq.alphabet_size, m)) {
    if (!out.empty()) out += '-';
    out += seq.label(s);
  }
  return out;
}

}  // namespace primedyn
