#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "primedyn/block_census.hpp"
#include "primedyn/entropy.hpp"
#include "primedyn/ifs.hpp"
#include "primedyn/primes.hpp"
#include "primedyn/symbol_sequence.hpp"

namespace primedyn {

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::string_view kSymMagic = "PDSYMSEQ";

/// Locale-independent "%.17g".
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Writes to a sibling temporary file and renames it over `path`.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("cannot write " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot write " + path.string());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// FNV-1a 64-bit digest as 16 hex digits.
inline std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Provenance <-> JSON
// ---------------------------------------------------------------------------

inline nlohmann::json provenance_json(const Provenance& prov) {
  using nlohmann::json;
  return std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, provenance::PrimeResidues>)
          return {{"kind", "prime-residues"}, {"modulus", p.modulus}};
        else if constexpr (std::is_same_v<T, provenance::TwoClass>)
          return {{"kind", "two-class"}, {"modulus", p.modulus}};
        else if constexpr (std::is_same_v<T, provenance::Transition>)
          return {{"kind", "transition"}};
        else if constexpr (std::is_same_v<T, provenance::GapResidues>)
          return {{"kind", "gap-residues"}, {"modulus", p.modulus}};
        else if constexpr (std::is_same_v<T, provenance::NullModel>)
          return {{"kind", "null-model"}, {"model", p.kind}, {"seed", p.seed}};
        else if constexpr (std::is_same_v<T, provenance::ChaoticMap>)
          return {{"kind", "chaotic-map"}, {"map", p.name}, {"partition", p.partition}};
        else
          return {{"kind", "external"}};
      },
      prov);
}

inline Provenance provenance_from_json(const nlohmann::json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "prime-residues") return provenance::PrimeResidues{j.at("modulus").get<int>()};
  if (kind == "two-class") return provenance::TwoClass{j.at("modulus").get<int>()};
  if (kind == "transition") return provenance::Transition{};
  if (kind == "gap-residues") return provenance::GapResidues{j.at("modulus").get<int>()};
  if (kind == "null-model")
    return provenance::NullModel{j.at("model").get<std::string>(), j.at("seed").get<std::uint64_t>()};
  if (kind == "chaotic-map")
    return provenance::ChaoticMap{j.at("map").get<std::string>(), j.at("partition").get<int>()};
  return provenance::External{};
}

// ---------------------------------------------------------------------------
// .sym files: magic, one-line JSON header, one byte per symbol
// ---------------------------------------------------------------------------

inline std::string encode_symbol_sequence(const SymbolSequence& seq) {
  seq.validate();
  nlohmann::json labels = nlohmann::json::object();
  for (const auto& [k, v] : seq.labels) labels[std::to_string(k)] = v;
  const nlohmann::json header = {{"p", seq.alphabet_size},
                                 {"length", seq.size()},
                                 {"provenance", provenance_json(seq.provenance)},
                                 {"labels", labels}};
  std::string out(kSymMagic);
  out += header.dump();
  out += '\n';
  out.append(reinterpret_cast<const char*>(seq.symbols.data()), seq.symbols.size());
  return out;
}

inline SymbolSequence decode_symbol_sequence(std::string_view bytes) {
  if (bytes.substr(0, kSymMagic.size()) != kSymMagic) throw IoError("not a symbol sequence file");
  const auto eol = bytes.find('\n', kSymMagic.size());
  if (eol == std::string_view::npos) throw IoError("truncated symbol sequence header");
  SymbolSequence seq;
  std::size_t length = 0;
  try {
    const auto header = nlohmann::json::parse(bytes.substr(kSymMagic.size(), eol - kSymMagic.size()));
    seq.alphabet_size = header.at("p").get<int>();
    length = header.at("length").get<std::size_t>();
    seq.provenance = provenance_from_json(header.at("provenance"));
    for (const auto& [k, v] : header.at("labels").items()) seq.labels[std::stoi(k)] = v.get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("bad symbol sequence header: ") + e.what());
  }
  const auto body = bytes.substr(eol + 1);
  if (body.size() != length) throw IoError("symbol payload length does not match header");
  seq.symbols.assign(body.begin(), body.end());
  try {
    seq.validate();
  } catch (const DomainError& e) {
    throw IoError(std::string("invalid symbol sequence: ") + e.what());
  }
  return seq;
}

inline void write_symbol_sequence(const std::filesystem::path& path, const SymbolSequence& seq) {
  write_file_atomic(path, encode_symbol_sequence(seq));
}

inline SymbolSequence read_symbol_sequence(const std::filesystem::path& path) {
  std::string bytes;
  try {
    bytes = read_file(path);
  } catch (const IoError&) {
    throw IoError("cannot read sequence " + path.string());
  }
  return decode_symbol_sequence(bytes);
}

// ---------------------------------------------------------------------------
// Prime tables: little-endian u64 payload plus a JSON sidecar
// ---------------------------------------------------------------------------

inline std::string encode_primes_le(const PrimeTable& table) {
  std::string out;
  out.reserve(table.count() * 8);
  for (auto p : table.primes)
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((p >> (8 * b)) & 0xff));
  return out;
}

inline nlohmann::json prime_sidecar(const PrimeTable& table) {
  return {{"upper_bound", table.upper_bound}, {"count", table.count()}};
}

inline void write_prime_table(const std::filesystem::path& path, const PrimeTable& table) {
  write_file_atomic(path, encode_primes_le(table));
  auto sidecar = path;
  sidecar += ".json";
  write_file_atomic(sidecar, prime_sidecar(table).dump(2) + "\n");
}

inline PrimeTable read_prime_table(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  if (bytes.size() % 8 != 0) throw IoError("prime file size is not a multiple of 8");
  PrimeTable table;
  for (std::size_t i = 0; i < bytes.size(); i += 8) {
    std::uint64_t v = 0;
    for (int b = 7; b >= 0; --b) v = (v << 8) | static_cast<unsigned char>(bytes[i + static_cast<std::size_t>(b)]);
    table.primes.push_back(v);
  }
  auto sidecar = path;
  sidecar += ".json";
  if (std::filesystem::exists(sidecar)) {
    table.upper_bound = nlohmann::json::parse(read_file(sidecar)).at("upper_bound").get<std::uint64_t>();
  } else {
    table.upper_bound = table.primes.empty() ? 0 : table.primes.back();
  }
  return table;
}

// ---------------------------------------------------------------------------
// CSV and PGM
// ---------------------------------------------------------------------------

/// Columns: block, count, frequency.
inline std::string census_csv(const BlockCensus& census, const SymbolSequence& seq) {
  std::string out = "block,count,frequency\n";
  const auto total = static_cast<double>(census.total_windows());
  for (const auto& [code, count] : census.entries()) {
    out += block_label(seq, code, census.block_length());
    out += ',' + std::to_string(count) + ',' + format_double(static_cast<double>(count) / total) + '\n';
  }
  return out;
}

/// Columns: m, beta, H, rate.
inline std::string renyi_csv(const RenyiResult& result) {
  std::string out = "m,beta,H,rate\n";
  for (const auto& e : result.entries)
    out += std::to_string(e.m) + ',' + format_double(e.beta) + ',' + format_double(e.H) + ',' +
           format_double(e.rate) + '\n';
  return out;
}

/// Binary PGM (P5, maxval 255).
inline std::string encode_pgm(const OccupancyGrid& grid) {
  const auto pixels = grayscale_raster(grid);
  std::string out = "P5\n" + std::to_string(grid.width()) + " " + std::to_string(grid.width()) + "\n255\n";
  out.append(reinterpret_cast<const char*>(pixels.data()), pixels.size());
  return out;
}

}  // namespace primedyn
