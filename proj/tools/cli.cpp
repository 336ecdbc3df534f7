#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "primedyn/primedyn.hpp"

namespace primedyn::cli {
namespace {

using nlohmann::json;

struct GlobalOptions {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
};

std::vector<std::string> split(const std::string& text, char sep = ',') {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> values;
  for (const auto& part : split(text)) {
    std::size_t used = 0;
    T v{};
    try {
      if constexpr (std::is_floating_point_v<T>) {
        v = static_cast<T>(std::stod(part, &used));
      } else if constexpr (std::is_signed_v<T>) {
        v = static_cast<T>(std::stoll(part, &used));
      } else {
        if (!part.empty() && part.front() == '-') throw std::invalid_argument(part);
        v = static_cast<T>(std::stoull(part, &used));
      }
    } catch (const std::exception&) {
      throw DomainError(std::string("malformed ") + what + " '" + text + "'");
    }
    if (used != part.size()) throw DomainError(std::string("malformed ") + what + " '" + text + "'");
    values.push_back(v);
  }
  if (values.empty()) throw DomainError(std::string("empty ") + what);
  return values;
}

// Writes to the declared output path, or to `out` when none was given.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) out << text;
  else write_file_atomic(path, text);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json sequence_summary(const SymbolSequence& seq) {
  json freq = json::object();
  const auto f = symbol_frequencies(seq);
  for (std::size_t i = 0; i < f.size(); ++i) freq[seq.label(static_cast<int>(i))] = f[i];
  return {{"p", seq.alphabet_size},
          {"length", seq.size()},
          {"provenance", provenance_json(seq.provenance)},
          {"frequencies", freq}};
}

json block_json(const GapResidueBlock& b) {
  json j = {{"block", b.residues}, {"verdict", to_string(b.verdict)}};
  if (b.witness_prime) j["witness_prime"] = *b.witness_prime;
  return j;
}

SymbolSequence derive_sequence(const PrimeTable& primes, const std::string& kind, int mod) {
  if (kind == "residues") return prime_residues(primes, mod);
  if (kind == "two-class") return two_class_sequence(primes, mod);
  if (kind == "transition") return transition_sequence(two_class_sequence(primes, mod));
  if (kind == "gaps") return gap_residues(primes, mod);
  throw DomainError("unknown sequence kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

class ArtifactWriter {
 public:
  ArtifactWriter(std::filesystem::path dir, std::ostream& log) : dir_(std::move(dir)), log_(log) {}

  void write(const std::string& name, const std::string& bytes) {
    write_file_atomic(dir_ / name, bytes);
    manifest_.push_back({{"file", name}, {"bytes", bytes.size()}, {"fnv1a64", fnv1a_hex(bytes)}});
    log_ << "wrote " << name << "\n";
  }

  const json& manifest() const { return manifest_; }

 private:
  std::filesystem::path dir_;
  std::ostream& log_;
  json manifest_ = json::array();
};

std::string spectrum_csv(const std::vector<std::pair<double, double>>& spectrum, int m) {
  std::string out = "beta,m,rate\n";
  for (auto [b, r] : spectrum) out += format_double(b) + ',' + std::to_string(m) + ',' + format_double(r) + '\n';
  return out;
}

}  // namespace

std::size_t write_report(std::uint64_t n_primes, const std::filesystem::path& out_dir, std::uint64_t seed,
                         unsigned threads, std::ostream& log) {
  require(n_primes >= 10'000, "report needs at least 10^4 primes");
  std::filesystem::create_directories(out_dir);
  ArtifactWriter writer(out_dir, log);
  const auto betas = default_beta_grid();
  const int proxy_m = 10;

  const auto primes = first_n_primes(n_primes, {.threads = threads});
  const auto two = two_class_sequence(primes, 4);
  const auto transition = transition_sequence(two);
  const auto gaps = gap_residues(primes, 6);

  auto curves = [&](const std::string& name, const SymbolSequence& seq, int m_max) {
    writer.write("entropy_" + name + ".csv", renyi_csv(renyi_grid(seq, m_max, betas, Estimator::PlugIn, threads)));
  };
  auto spectrum = [&](const std::string& name, const SymbolSequence& seq) {
    writer.write("spectrum_" + name + ".csv", spectrum_csv(spectrum_proxy(seq, betas, proxy_m), proxy_m));
  };

  for (int k : {3, 4, 6}) curves("residues_mod" + std::to_string(k), prime_residues(primes, k), 12);
  curves("transition", transition, 10);
  curves("gaps_mod6", gaps, 12);

  const auto f = symbol_frequencies(two);
  const auto t1w = generate_symbol_null({nullspec::Type1Weighted{{f[0], 1.0 - f[0]}}, two.size(), seed});
  const auto t1_p3 = generate_symbol_null({nullspec::Type1Uniform{3}, gaps.size(), seed});
  const auto t1_p4 = generate_symbol_null({nullspec::Type1Uniform{4}, transition.size(), seed});
  const auto t2 = generate_symbol_null({nullspec::Type2Transition{0.5}, transition.size(), seed});
  const auto cramer = generate_cramer(primes.primes.back(), seed);
  const auto logistic2 =
      symbolize_orbit(iterate_map({ChaoticMapKind::Logistic, std::nullopt, two.size(), seed}), 2, "logistic");

  curves("null_type1_weighted", t1w, 12);
  curves("null_type2", t2, 10);
  curves("cramer_two_class_mod4", two_class_sequence(cramer, 4), 12);
  curves("logistic_p2", logistic2, 12);

  spectrum("residues_mod4", prime_residues(primes, 4));
  spectrum("transition", transition);
  spectrum("gaps_mod6", gaps);
  spectrum("logistic_p2", logistic2);
  spectrum("null_type1_weighted", t1w);

  json table = json::array();
  for (int m = 1; m <= 4; ++m) {
    const auto e = enumerate_gap_blocks(m);
    table.push_back({{"m", m},
                     {"admissible_count", e.admissible.size()},
                     {"forbidden_count", e.forbidden_count},
                     {"forbidden", e.forbidden}});
  }
  writer.write("forbidden_blocks.json", dump(table));

  const HardyLittlewood hl(1'000'000, 4);
  std::string densities = "order,p0,p2,p4\n";
  for (int order = 1; order <= 4; ++order) {
    const auto p = residue_densities(order, hl);
    densities += std::to_string(order) + ',' + format_double(p[0]) + ',' + format_double(p[1]) + ',' +
                 format_double(p[2]) + '\n';
  }
  writer.write("hl_residue_densities.csv", densities);

  std::string pairs = "order,block,density\n";
  for (int order = 1; order <= 4; ++order)
    for (const auto& b : enumerate_gap_blocks(2).admissible)
      pairs += std::to_string(order) + ',' + std::to_string(b.residues[0]) + '-' + std::to_string(b.residues[1]) +
               ',' + format_double(block_density(b.residues, order, hl)) + '\n';
  writer.write("hl_pair_densities.csv", pairs);

  IFSConfig square{.vertex_count = 4, .width = 1024};
  IFSConfig triangle{.vertex_count = 3, .width = 1024};
  writer.write("ifs_transition.pgm", encode_pgm(chaos_game_render(transition, square)));
  writer.write("ifs_null_type2.pgm", encode_pgm(chaos_game_render(t2, square)));
  writer.write("ifs_null_type1_p4.pgm", encode_pgm(chaos_game_render(t1_p4, square)));
  writer.write("ifs_gaps_mod6.pgm", encode_pgm(chaos_game_render(gaps, triangle)));
  writer.write("ifs_null_type1_p3.pgm", encode_pgm(chaos_game_render(t1_p3, triangle)));

  const json manifest = {{"n_primes", n_primes}, {"seed", seed}, {"artifacts", writer.manifest()}};
  write_file_atomic(out_dir / "manifest.json", dump(manifest));
  return writer.manifest().size();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"primedyn: symbolic dynamics of prime sequences"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions global;
  app.add_option("--seed", global.seed, "PRNG seed for randomized subcommands");
  app.add_option("--threads", global.threads, "Worker threads (1 gives identical output)")->check(CLI::Range(1u, 256u));
  app.add_option("--out", global.out, "Output path (directory for report)");

  // primes
  auto* primes_cmd = app.add_subcommand("primes", "Generate primes");
  std::optional<std::uint64_t> upto;
  std::optional<std::uint64_t> count;
  auto* upto_opt = primes_cmd->add_option("--upto", upto, "All primes <= N");
  auto* count_opt = primes_cmd->add_option("--count", count, "The first N primes");
  upto_opt->excludes(count_opt);
  count_opt->excludes(upto_opt);

  // seq
  auto* seq_cmd = app.add_subcommand("seq", "Build a symbolic sequence");
  std::string seq_kind;
  std::optional<int> seq_mod;
  std::uint64_t n_primes = 1'000'000;
  std::string map = "logistic";
  int partition = 2;
  std::size_t map_length = 1'000'000;
  std::optional<double> x0;
  seq_cmd->add_option("--kind", seq_kind)->required()->check(
      CLI::IsMember({"residues", "two-class", "transition", "gaps", "map"}));
  seq_cmd->add_option("--mod", seq_mod, "Modulus (default 4; 6 for gaps)");
  seq_cmd->add_option("--n-primes", n_primes);
  seq_cmd->add_option("--map", map)->check(CLI::IsMember({"logistic", "tent", "shift", "gauss"}));
  seq_cmd->add_option("--p", partition, "Homogeneous partition size");
  seq_cmd->add_option("--length", map_length);
  seq_cmd->add_option("--x0", x0);

  // null
  auto* null_cmd = app.add_subcommand("null", "Generate a null-model sequence");
  std::string null_kind;
  int null_p = 2;
  std::string weights;
  std::size_t null_length = 1'000'000;
  std::uint64_t xmax = 15'485'863;
  std::string derive;
  int derive_mod = 4;
  null_cmd->add_option("--kind", null_kind)->required()->check(CLI::IsMember({"t1u", "t1w", "t2", "t3"}));
  null_cmd->add_option("--p", null_p);
  null_cmd->add_option("--weights", weights, "Comma-separated probabilities (t1w; t2 takes P(A),P(B))");
  null_cmd->add_option("--length", null_length);
  null_cmd->add_option("--xmax", xmax, "Largest candidate for t3");
  null_cmd->add_option("--derive", derive, "t3 only: emit this sequence instead of the pseudo-primes")
      ->check(CLI::IsMember({"residues", "two-class", "transition", "gaps"}));
  null_cmd->add_option("--mod", derive_mod);

  // entropy
  auto* entropy_cmd = app.add_subcommand("entropy", "Renyi block entropies of a sequence");
  std::string in_path;
  int m_max = 12;
  std::string beta_list;
  std::optional<int> proxy_m;
  bool miller_madow = false;
  bool base2 = false;
  std::optional<int> census_m;
  entropy_cmd->add_option("--in", in_path)->required();
  entropy_cmd->add_option("--m-max", m_max);
  entropy_cmd->add_option("--beta", beta_list, "Comma-separated beta values (default 0,0.25,...,4)");
  entropy_cmd->add_option("--proxy-m", proxy_m, "Also report H_m(beta)/m at this m");
  entropy_cmd->add_flag("--miller-madow", miller_madow);
  entropy_cmd->add_flag("--base2", base2, "Report entropies in bits");
  entropy_cmd->add_option("--census", census_m, "Emit the block census CSV for this m instead");

  // gaps
  auto* gaps_cmd = app.add_subcommand("gaps", "Gap-residue admissibility and Hardy-Littlewood densities");
  gaps_cmd->require_subcommand(1);
  std::string block_text;
  int enum_m = 0;
  std::string offsets_text;
  std::uint64_t cutoff = 1'000'000;
  int order = 1;
  auto* oracle_cmd = gaps_cmd->add_subcommand("oracle", "Verdict for one block");
  oracle_cmd->add_option("BLOCK", block_text)->required();
  auto* enum_cmd = gaps_cmd->add_subcommand("enumerate", "Classify all 3^M blocks");
  enum_cmd->add_option("M", enum_m)->required();
  auto* hl_cmd = gaps_cmd->add_subcommand("hl", "Hardy-Littlewood constant");
  hl_cmd->add_option("OFFSETS", offsets_text)->required();
  hl_cmd->add_option("--cutoff", cutoff);
  auto* density_cmd = gaps_cmd->add_subcommand("density", "Truncated density of a block");
  density_cmd->add_option("BLOCK", block_text)->required();
  density_cmd->add_option("--order", order)->required();
  density_cmd->add_option("--cutoff", cutoff);

  // ifs
  auto* ifs_cmd = app.add_subcommand("ifs", "Chaos Game attractor of a sequence");
  std::string ifs_in;
  int width = 1024;
  double factor = 0.5;
  std::size_t burn_in = 100;
  bool with_dim = false;
  std::string points_csv;
  ifs_cmd->add_option("--in", ifs_in)->required();
  ifs_cmd->add_option("--width", width);
  ifs_cmd->add_option("--factor", factor);
  ifs_cmd->add_option("--burn-in", burn_in);
  ifs_cmd->add_flag("--dim", with_dim, "Report the box-counting dimension");
  ifs_cmd->add_option("--points-csv", points_csv, "Also write the plotted points");

  // report
  auto* report_cmd = app.add_subcommand("report", "Regenerate all curves, tables and attractors");
  std::uint64_t report_primes = 1'000'000;
  report_cmd->add_option("--n-primes", report_primes);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << e.what() << "\n";
      return 0;
    }
    err << "primedyn: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*primes_cmd) {
      if (!upto && !count) throw CLI::RequiredError("--upto or --count");
      const auto table = upto ? sieve_upto(*upto, {.threads = global.threads})
                              : first_n_primes(*count, {.threads = global.threads});
      if (!global.out.empty()) write_prime_table(global.out, table);
      json summary = prime_sidecar(table);
      summary["last"] = table.primes.back();
      out << dump(summary);
    } else if (*seq_cmd) {
      require(!global.out.empty(), "seq needs --out");
      SymbolSequence seq;
      if (seq_kind == "map") {
        OrbitSpec spec{parse_map_kind(map), x0, map_length, global.seed};
        seq = symbolize_orbit(iterate_map(spec), partition, std::string(map_name(spec.map)));
      } else {
        const int mod = seq_mod.value_or(seq_kind == "gaps" ? 6 : 4);
        seq = derive_sequence(first_n_primes(n_primes, {.threads = global.threads}), seq_kind, mod);
      }
      write_symbol_sequence(global.out, seq);
      out << dump(sequence_summary(seq));
    } else if (*null_cmd) {
      require(!global.out.empty(), "null needs --out");
      NullSpec spec;
      spec.length = null_length;
      spec.seed = global.seed;
      if (null_kind == "t1u") {
        spec.kind = nullspec::Type1Uniform{null_p};
      } else if (null_kind == "t1w") {
        spec.kind = nullspec::Type1Weighted{parse_list<double>(weights, "weights")};
      } else if (null_kind == "t2") {
        const double a = weights.empty() ? 0.5 : parse_list<double>(weights, "weights").front();
        spec.kind = nullspec::Type2Transition{a};
      } else {
        spec.kind = nullspec::Type3Cramer{xmax};
      }
      const auto result = generate_null(spec);
      if (const auto* seq = std::get_if<SymbolSequence>(&result)) {
        write_symbol_sequence(global.out, *seq);
        out << dump(sequence_summary(*seq));
      } else {
        const auto& table = std::get<PrimeTable>(result);
        json summary = prime_sidecar(table);
        summary["seed"] = global.seed;
        if (derive.empty()) {
          write_prime_table(global.out, table);
        } else {
          auto seq = derive_sequence(table, derive, derive == "gaps" && derive_mod == 4 ? 6 : derive_mod);
          seq.provenance = provenance::NullModel{"t3-" + derive, global.seed};
          write_symbol_sequence(global.out, seq);
          summary["sequence"] = sequence_summary(seq);
        }
        out << dump(summary);
      }
    } else if (*entropy_cmd) {
      const auto seq = read_symbol_sequence(in_path);
      if (census_m) {
        emit(global.out, census_csv(count_blocks_parallel(seq, *census_m, global.threads), seq), out);
        return 0;
      }
      const auto betas = beta_list.empty() ? default_beta_grid() : parse_list<double>(beta_list, "beta list");
      auto result = renyi_grid(seq, m_max, betas, miller_madow ? Estimator::MillerMadow : Estimator::PlugIn,
                               global.threads);
      if (proxy_m && *proxy_m > m_max) {
        for (auto [b, rate] : spectrum_proxy(seq, betas, *proxy_m))
          result.entries.push_back({*proxy_m, b, rate * *proxy_m, rate});
      }
      if (base2) {
        for (auto& e : result.entries) {
          e.H /= std::numbers::ln2;
          e.rate /= std::numbers::ln2;
        }
      }
      emit(global.out, renyi_csv(result), out);
    } else if (*gaps_cmd) {
      json result;
      if (*oracle_cmd) {
        result = block_json(is_admissible_gap_block(parse_list<int>(block_text, "block")));
      } else if (*enum_cmd) {
        const auto e = enumerate_gap_blocks(enum_m);
        json admissible = json::array();
        for (const auto& b : e.admissible) admissible.push_back(block_json(b));
        result = {{"m", e.m},
                  {"admissible_count", e.admissible.size()},
                  {"forbidden_count", e.forbidden_count},
                  {"admissible", admissible},
                  {"forbidden", e.forbidden}};
        for (auto& f : result["forbidden"]) f = json{{"block", f}, {"verdict", "forbidden"}, {"witness_prime", 3}};
        // Keep the plain list form too, for quick inspection.
        result["forbidden_blocks"] = e.forbidden;
      } else if (*hl_cmd) {
        const auto offsets = parse_list<std::uint64_t>(offsets_text, "offsets");
        const auto v = hl_constant(offsets, cutoff);
        result = {{"offsets", v.offsets},
                  {"value", v.value},
                  {"prime_cutoff", v.prime_cutoff},
                  {"tail_error_bound", v.tail_error_bound}};
      } else if (*density_cmd) {
        const auto block = parse_list<int>(block_text, "block");
        const HardyLittlewood hl(cutoff, static_cast<int>(block.size()) + 1);
        result = {{"block", block},
                  {"order", order},
                  {"prime_cutoff", cutoff},
                  {"numerator", block_density_numerator(block, order, hl)},
                  {"density", block_density(block, order, hl)}};
      }
      emit(global.out, dump(result), out);
    } else if (*ifs_cmd) {
      require(!global.out.empty(), "ifs needs --out");
      const auto seq = read_symbol_sequence(ifs_in);
      IFSConfig config{.vertex_count = seq.alphabet_size, .contraction = factor, .width = width, .burn_in = burn_in};
      std::string points = "x,y\n";
      const bool want_points = !points_csv.empty();
      const auto grid = chaos_game_render(seq, config, [&](Point p) {
        if (want_points) points += format_double(p.x) + ',' + format_double(p.y) + '\n';
      });
      write_file_atomic(global.out, encode_pgm(grid));
      if (want_points) write_file_atomic(points_csv, points);
      json summary = {{"width", grid.width()},
                      {"points_plotted", grid.points_plotted()},
                      {"occupied_cells", grid.occupied_cells()}};
      if (with_dim) summary["box_counting_dimension"] = box_counting_dimension(grid, default_box_sizes(width));
      out << dump(summary);
    } else if (*report_cmd) {
      require(!global.out.empty(), "report needs --out DIR");
      const auto n = write_report(report_primes, global.out, global.seed, global.threads, out);
      out << "artifacts: " << n << "\n";
    }
  } catch (const CLI::ParseError& e) {
    err << "primedyn: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "primedyn: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace primedyn::cli
