// Acceptance gate: one PASS/FAIL line per criterion, all tolerances fixed here.
// Exit status is the number of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "gap_tables.hpp"
#include "oracles.hpp"
#include "primedyn/primedyn.hpp"

namespace {

using namespace primedyn;

constexpr std::uint64_t kPrimes = 1'000'000;
constexpr std::uint64_t kSeed = 20240601;
const double kLog2 = std::numbers::ln2;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string misses;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      misses += (misses.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(double v, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

bool within(double value, double target, double tol) { return std::abs(value - target) <= tol; }
bool within_rel(double value, double target, double rel) { return std::abs(value - target) <= rel * std::abs(target); }

// Every census the gate computes is fed through this to check H_m(beta) is
// non-increasing in beta.
bool beta_monotone(const BlockCensus& c) {
  const auto betas = default_beta_grid();
  double prev = renyi_block_entropy(c, betas.front());
  for (std::size_t i = 1; i < betas.size(); ++i) {
    const double h = renyi_block_entropy(c, betas[i]);
    if (h > prev + 1e-12) return false;
    prev = h;
  }
  return true;
}
std::size_t g_censuses_checked = 0;
bool g_all_monotone = true;

BlockCensus census(const SymbolSequence& s, int m) {
  auto c = count_blocks(s, m);
  ++g_censuses_checked;
  g_all_monotone = g_all_monotone && beta_monotone(c);
  return c;
}

struct Data {
  PrimeTable primes;
  SymbolSequence mod4;
  SymbolSequence two_class;
  SymbolSequence transition;
  SymbolSequence gaps;
};

const Data& data() {
  static const Data d = [] {
    Data out;
    out.primes = first_n_primes(kPrimes);
    out.mod4 = prime_residues(out.primes, 4);
    out.two_class = two_class_sequence(out.primes, 4);
    out.transition = transition_sequence(out.two_class);
    out.gaps = gap_residues(out.primes, 6);
    return out;
  }();
  return d;
}

const HardyLittlewood& hl() {
  static const HardyLittlewood instance(1'000'000, 4);
  return instance;
}

// 1. Forbidden-block table and admissible counts.
void table_reproduction(Outcome& o) {
  const std::vector<std::uint64_t> expected{0, 1, 11, 49};
  std::string counts;
  for (int m = 1; m <= 4; ++m) {
    const auto e = enumerate_gap_blocks(m);
    counts += (m > 1 ? "," : "") + std::to_string(e.forbidden_count);
    o.expect(e.forbidden_count == expected[static_cast<std::size_t>(m - 1)], "|F(" + std::to_string(m) + ")|");
  }
  o.expect(enumerate_gap_blocks(1).forbidden.empty(), "F(1) empty");
  o.expect(enumerate_gap_blocks(2).forbidden == tables::kForbidden2, "F(2) set");
  o.expect(enumerate_gap_blocks(3).forbidden == tables::kForbidden3, "F(3) set");
  int identity_ok = 0;
  for (int m = 2; m <= 12; ++m) {
    const bool ok = enumerate_gap_blocks(m).admissible.size() == (std::size_t{1} << (m + 1));
    identity_ok += ok;
    o.expect(ok, "|A(" + std::to_string(m) + ")| = 2^(m+1)");
  }
  o.expect(enumerate_gap_blocks(1).admissible.size() == 3, "|A(1)| = 3");
  o.detail << "|F(1..4)|=" << counts << " |A(m)|=2^(m+1) for " << identity_ok << "/11 of m=2..12, |A(1)|=3";
}

// 2. Oracle against the empirical gap-residue census.
void oracle_vs_empirical(Outcome& o) {
  std::size_t violations = 0;
  std::size_t forbidden_seen = 0;
  std::size_t observed = 0;
  for (int m = 1; m <= 8; ++m) {
    const auto c = census(data().gaps, m);
    observed += c.distinct();
    for (const auto& [code, count] : c.entries()) {
      std::vector<int> block;
      for (Symbol s : decode_block(code, 3, m)) block.push_back(gap_residue_value(s));
      violations += !is_admissible_gap_block(block).admissible();
    }
    for (const auto& f : enumerate_gap_blocks(m).forbidden) {
      std::vector<Symbol> sym;
      for (int r : f) sym.push_back(static_cast<Symbol>(r / 2));
      forbidden_seen += c.count(sym) != 0;
    }
  }
  o.expect(violations == 0, "observed block judged forbidden");
  o.expect(forbidden_seen == 0, "forbidden block observed");
  o.detail << observed << " observed blocks (m<=8), violations=" << violations
           << ", forbidden with nonzero count=" << forbidden_seen;
}

// 3. Topological entropy of the transition sequence and its Type II null.
void transition_topological(Outcome& o) {
  const auto null = generate_symbol_null({nullspec::Type2Transition{0.5}, data().transition.size(), kSeed});
  double worst = 0.0;
  for (const auto* seq : {&data().transition, &null}) {
    for (int m = 2; m <= 10; ++m) {
      const double rate = renyi_block_entropy(census(*seq, m), 0.0) / m;
      const double err = std::abs(rate - (kLog2 + kLog2 / m));
      worst = std::max(worst, err);
      o.expect(err <= 0.01, (seq == &null ? "null m=" : "real m=") + std::to_string(m));
    }
  }
  o.detail << "max |H_m(0)/m - log2(1+1/m)| = " << fmt(worst, 8) << " (tol 0.01)";
}

// 4. Topological entropy of the gap residues.
void gap_topological(Outcome& o) {
  double worst = 0.0;
  for (int m = 2; m <= 10; ++m) {
    const double rate = renyi_block_entropy(census(data().gaps, m), 0.0) / m;
    const double err = std::abs(rate - (1.0 + 1.0 / m) * kLog2);
    worst = std::max(worst, err);
    o.expect(err <= 0.03, "m=" + std::to_string(m));
  }
  const double h1 = renyi_block_entropy(census(data().gaps, 1), 0.0);
  o.expect(h1 == std::log(3.0), "H_1(0) = log 3");
  o.detail << "max err = " << fmt(worst, 8) << " (tol 0.03), H_1(0) = " << fmt(h1, 15);
}

// 5. Primes mod 4: Shannon rate at m = 10 and the beta spectrum.
void mod4_ks(Outcome& o) {
  const auto c = census(data().mod4, 10);
  const double rate = renyi_block_entropy(c, 1.0) / 10;
  o.expect(within(rate, 0.685, 0.010), "H_10(1)/10");
  const auto spec = spectrum_proxy(data().mod4, default_beta_grid(), 10);
  bool monotone = true;
  for (std::size_t i = 1; i < spec.size(); ++i) monotone = monotone && spec[i].second <= spec[i - 1].second + 1e-12;
  const double spread = spec.front().second - spec.back().second;
  o.expect(monotone, "spectrum non-increasing");
  o.expect(spread > 0.02, "h(0) - h(4) > 0.02");
  o.detail << "H_10(1)/10 = " << fmt(rate) << " (0.685 +- 0.010), h(0)-h(4) = " << fmt(spread)
           << ", monotone=" << (monotone ? "yes" : "no");
}

// 6. Logistic-map controls.
void logistic_control(Outcome& o) {
  const auto orbit = iterate_map({ChaoticMapKind::Logistic, std::nullopt, kPrimes, kSeed});
  const auto p2 = symbolize_orbit(orbit, 2, "logistic");
  const auto c10 = census(p2, 10);
  double worst = 0.0;
  for (double beta : {0.0, 1.0, 2.0, 4.0}) {
    const double err = std::abs(renyi_block_entropy(c10, beta) / 10 - kLog2);
    worst = std::max(worst, err);
    o.expect(err <= 0.01, "p=2 beta=" + fmt(beta, 0));
  }
  const auto p4 = symbolize_orbit(orbit, 4, "logistic");
  std::string counts;
  for (int m = 1; m <= 8; ++m) {
    const auto n = census(p4, m).distinct();
    counts += (m > 1 ? "," : "") + std::to_string(n);
    o.expect(n == (std::size_t{1} << (m + 1)), "p=4 m=" + std::to_string(m));
  }
  o.detail << "p=2 max |H_10/10 - log2| = " << fmt(worst, 8) << ", p=4 counts " << counts;
}

// 7. Hardy-Littlewood constants.
void hl_values(Outcome& o) {
  const double c1 = hl().constant({1}).value;
  const double b = aux_products(hl()).b;
  o.expect(within(c1, 1.320324, 1e-6), "C(1)");
  o.expect(within_rel(hl().constant({2}).value / c1, 1.0, 1e-9), "C(2)/C(1)");
  o.expect(within_rel(hl().constant({3}).value / c1, 2.0, 1e-9), "C(3)/C(1)");
  const std::vector<std::pair<std::vector<std::uint64_t>, double>> pairs{
      {{3, 6}, 9.0}, {{3, 9}, 9.0}, {{6, 9}, 9.0}, {{6, 12}, 9.0},
      {{3, 4}, 4.5}, {{3, 7}, 45.0 / 8}, {{6, 7}, 45.0 / 8}, {{6, 10}, 27.0 / 4}};
  double worst = 0.0;
  for (const auto& [offsets, ratio] : pairs) {
    const double r = hl().constant(offsets).value / b;
    worst = std::max(worst, std::abs(r - ratio) / ratio);
    o.expect(within_rel(r, ratio, 1e-6), "C(" + std::to_string(offsets[0]) + "," + std::to_string(offsets[1]) + ")/b");
  }
  o.detail << "C(1) = " << fmt(c1, 10) << ", b = " << fmt(b, 10) << ", max pair rel err = " << worst;
}

// 8. Hardy-Littlewood densities.
void densities(Outcome& o) {
  const auto p3 = residue_densities(3, hl());
  const double p4 = residue_density(0, 4, hl());
  o.expect(within(p3[0], 0.479, 0.002), "p3(0)");
  o.expect(within(p3[1], 0.255, 0.002), "p3(2)");
  o.expect(within(p3[2], 0.266, 0.002), "p3(4)");
  o.expect(within(p4, 0.471, 0.002), "p4(0)");
  const double b = aux_products(hl()).b;
  const double n00 = block_density_numerator(std::vector<int>{0, 0}, 2, hl());
  const double n02 = block_density_numerator(std::vector<int>{0, 2}, 2, hl());
  o.expect(within_rel(n00, 36 * b, 1e-6), "numerator(0,0) = 36b");
  o.expect(within_rel(n02, 45 * b / 2, 1e-6), "numerator(0,2) = 45b/2");
  o.expect(n00 != n02, "p(0,0) != p(0,2)");
  o.detail << "order 3 = (" << fmt(p3[0], 4) << ", " << fmt(p3[1], 4) << ", " << fmt(p3[2], 4) << "), order 4 p(0) = "
           << fmt(p4, 4) << ", numerators/b = " << fmt(n00 / b, 6) << ", " << fmt(n02 / b, 6);
}

// 9. Empirical gap marginals.
void gap_marginals(Outcome& o) {
  const auto f = symbol_frequencies(data().gaps);
  const double h1 = renyi_block_entropy(census(data().gaps, 1), 1.0);
  o.expect(within(f[0], 0.43, 0.01), "p(0)");
  o.expect(within(f[1], 0.28, 0.01), "p(2)");
  o.expect(within(f[2], 0.28, 0.01), "p(4)");
  o.expect(within(h1, 1.075, 0.010), "H_1(1)");
  o.detail << "p = (" << fmt(f[0], 4) << ", " << fmt(f[1], 4) << ", " << fmt(f[2], 4) << "), H_1(1) = " << fmt(h1, 4);
}

// 10. Transition marginals.
void transition_marginals(Outcome& o) {
  const auto f = symbol_frequencies(data().transition);
  const double h1 = renyi_block_entropy(census(data().transition, 1), 1.0);
  o.expect(within(f[1], 0.30, 0.01), "freq(AB)");
  o.expect(within(f[2], 0.30, 0.01), "freq(BA)");
  const double lo = std::min(f[0], f[3]);
  const double hi = std::max(f[0], f[3]);
  o.expect(within(lo, 0.19, 0.01) && within(hi, 0.21, 0.01), "{AA, BB} = {0.21, 0.19}");
  o.expect(within(h1, 1.366, 0.005), "H_1(1)");
  o.detail << "AA=" << fmt(f[0], 4) << " AB=" << fmt(f[1], 4) << " BA=" << fmt(f[2], 4) << " BB=" << fmt(f[3], 4)
           << ", H_1(1) = " << fmt(h1, 4);
}

// 11. Chaos Game attractors.
void ifs_properties(Outcome& o) {
  const auto t1_3 = generate_symbol_null({nullspec::Type1Uniform{3}, kPrimes, kSeed});
  const auto sierpinski = chaos_game_render(t1_3, IFSConfig{.vertex_count = 3, .width = 1024});
  const double dim = box_counting_dimension(sierpinski, default_box_sizes(1024));
  o.expect(within(dim, 1.585, 0.05), "dimension");

  const auto t1_4 = generate_symbol_null({nullspec::Type1Uniform{4}, kPrimes, kSeed + 1});
  const auto square = chaos_game_render(t1_4, IFSConfig{.vertex_count = 4, .width = 256});
  const double fill = static_cast<double>(square.occupied_cells()) / (256.0 * 256.0);
  o.expect(fill >= 0.99, "p=4 fill");

  const auto t2 = generate_symbol_null({nullspec::Type2Transition{0.5}, kPrimes, kSeed + 2});
  const IFSConfig sq512{.vertex_count = 4, .width = 512};
  const double jaccard = grid_similarity(chaos_game_render(data().transition, sq512), chaos_game_render(t2, sq512));
  o.expect(jaccard >= 0.95, "transition vs Type II Jaccard");

  const IFSConfig tri512{.vertex_count = 3, .width = 512};
  const double strays =
      stray_fraction(chaos_game_render(data().gaps, tri512), chaos_game_render(t1_3, tri512));
  o.expect(strays <= 0.01, "gap strays");
  o.detail << "dim = " << fmt(dim, 4) << ", p=4 fill = " << fmt(fill, 5) << ", Jaccard = " << fmt(jaccard, 4)
           << ", gap strays = " << fmt(strays, 5);
}

// 12. Property suites.
void property_suites(Outcome& o) {
  Xoshiro256 rng(kSeed);

  std::size_t chunk_trials = 0;
  bool chunks_ok = true;
  for (int t = 0; t < 40; ++t, ++chunk_trials) {
    SymbolSequence s;
    s.alphabet_size = 2 + static_cast<int>(rng.below(4));
    s.symbols.resize(100 + rng.below(20'000));
    for (auto& x : s.symbols) x = static_cast<Symbol>(rng.below(static_cast<std::uint64_t>(s.alphabet_size)));
    const int m = 1 + static_cast<int>(rng.below(8));
    const std::size_t windows = s.size() - static_cast<std::size_t>(m) + 1;
    std::vector<std::size_t> cuts;
    for (std::size_t c = 1 + rng.below(50); c < windows; c += 1 + rng.below(windows / 4 + 1)) cuts.push_back(c);
    const auto serial = census(s, m);
    chunks_ok = chunks_ok && count_blocks_chunked(s, m, cuts, static_cast<unsigned>(1 + rng.below(4))) == serial;
  }
  o.expect(chunks_ok, "chunked census");

  bool seeds_ok = true;
  for (const NullSpec& spec : {NullSpec{nullspec::Type1Uniform{3}, 50'000, 7},
                               NullSpec{nullspec::Type1Weighted{{0.3, 0.7}}, 50'000, 8},
                               NullSpec{nullspec::Type2Transition{0.5}, 50'000, 9}})
    seeds_ok = seeds_ok && generate_symbol_null(spec).symbols == generate_symbol_null(spec).symbols;
  seeds_ok = seeds_ok && generate_cramer(1'000'000, 10).primes == generate_cramer(1'000'000, 10).primes;
  o.expect(seeds_ok, "seed determinism");

  double worst_iid = 0.0;
  for (const auto& w : std::vector<std::vector<double>>{{0.5, 0.5}, {0.3, 0.7}, {0.2, 0.3, 0.5}, {0.1, 0.2, 0.3, 0.4}}) {
    const auto s = generate_symbol_null({nullspec::Type1Weighted{w}, kPrimes, kSeed + w.size()});
    const double h1 = renyi_block_entropy(census(s, 1), 1.0);
    for (int m = 2; m <= 8; ++m) worst_iid = std::max(worst_iid, std::abs(renyi_block_entropy(census(s, m), 1.0) - m * h1) / m);
  }
  o.expect(worst_iid <= 0.01, "i.i.d. factorization");

  const bool sieve_ok = sieve_upto(100'000).primes == oracle::trial_division_upto(100'000);
  o.expect(sieve_ok, "sieve = trial division");

  o.expect(g_all_monotone, "beta monotonicity");
  o.detail << "monotone on " << g_censuses_checked << " censuses, " << chunk_trials
           << " chunkings, i.i.d. max dev = " << fmt(worst_iid, 5) << ", seeds " << (seeds_ok ? "ok" : "differ")
           << ", sieve " << (sieve_ok ? "ok" : "differs");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"forbidden-block table and |A(m)|", table_reproduction},
      {"gap oracle vs empirical census", oracle_vs_empirical},
      {"transition topological entropy", transition_topological},
      {"gap-residue topological entropy", gap_topological},
      {"primes mod 4 KS proxy and spectrum", mod4_ks},
      {"logistic-map control", logistic_control},
      {"Hardy-Littlewood constants", hl_values},
      {"Hardy-Littlewood densities", densities},
      {"empirical gap marginals", gap_marginals},
      {"transition marginals", transition_marginals},
      {"IFS attractor properties", ifs_properties},
      {"property suites", property_suites},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      check(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.misses += std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::string line = o.detail.str();
    if (!o.misses.empty()) line += " | out of tolerance: " + o.misses;
    std::printf("%s AC%02d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", index, name, line.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", index - failures, criteria.size());
  return failures;
}
