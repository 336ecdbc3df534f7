#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "primedyn/error.hpp"

namespace primedyn {

using Symbol = std::uint8_t;

namespace provenance {
struct PrimeResidues { int modulus = 0; };
struct TwoClass { int modulus = 0; };
struct Transition {};
struct GapResidues { int modulus = 0; };
struct NullModel { std::string kind; std::uint64_t seed = 0; };
struct ChaoticMap { std::string name; int partition = 0; };
struct External {};
}  // namespace provenance

using Provenance =
    std::variant<provenance::External, provenance::PrimeResidues, provenance::TwoClass,
                 provenance::Transition, provenance::GapResidues, provenance::NullModel,
                 provenance::ChaoticMap>;

/// A finite sequence over the alphabet {0, ..., alphabet_size - 1}.
struct SymbolSequence {
  int alphabet_size = 2;
  std::vector<Symbol> symbols;
  std::map<int, std::string> labels;
  Provenance provenance;

  std::size_t size() const noexcept { return symbols.size(); }

  std::string label(int symbol) const {
    if (auto it = labels.find(symbol); it != labels.end()) return it->second;
    return std::to_string(symbol);
  }

  // Throws DomainError unless the alphabet/symbol invariants hold.
  void validate() const {
    require(alphabet_size >= 2 && alphabet_size <= 256, "alphabet size must be in [2, 256]");
    require(!symbols.empty(), "symbol sequence is empty");
    for (Symbol s : symbols)
      require(s < alphabet_size, "symbol outside alphabet");
  }
};

/// Relative frequency of each symbol.
inline std::vector<double> symbol_frequencies(const SymbolSequence& seq) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(seq.alphabet_size), 0);
  for (Symbol s : seq.symbols) ++counts[s];
  std::vector<double> out(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    out[i] = static_cast<double>(counts[i]) / static_cast<double>(seq.size());
  return out;
}

}  // namespace primedyn
