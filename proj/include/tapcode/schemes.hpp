#pragma once

// Cost models for the codes the Tap code is compared against: Morse (binary
// timeline and ternary symbol count), the Polybius square (classic and
// frequency-optimized), binary Huffman and fixed-width. Costs are in
// sixteenth slots per character unless noted.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tapcode/code_core.hpp"
#include "tapcode/codec.hpp"
#include "tapcode/error.hpp"
#include "tapcode/utf8.hpp"

namespace tapcode {

/// Symbol -> probability, in insertion order. Built by the analysis module;
/// the schemes only read it.
struct SymbolWeight {
  Symbol symbol;
  double weight;
};
using Weights = std::vector<SymbolWeight>;

/// ä -> ae, ö -> oe, ü -> ue, ß -> ss; other symbols map to themselves.
inline std::u32string expand_digraph(Symbol s) {
  switch (s) {
    case U'ä': return U"ae";
    case U'ö': return U"oe";
    case U'ü': return U"ue";
    case U'ß': return U"ss";
    default: return std::u32string(1, s);
  }
}

// ---------------------------------------------------------------------------
// Morse

class MorseTable {
 public:
  MorseTable() {
    static constexpr std::string_view kCodes[26] = {
        ".-",   "-...", "-.-.", "-..",  ".",   "..-.", "--.",  "....", "..",   ".---", "-.-",  ".-..", "--",
        "-.",   "---",  ".--.", "--.-", ".-.", "...",  "-",    "..-",  "...-", ".--",  "-..-", "-.--", "--..",
    };
    for (int i = 0; i < 26; ++i) codes_.emplace(static_cast<Symbol>(U'a' + i), std::string(kCodes[i]));
  }

  /// Elements of a letter, '.' for dit and '-' for dah. Umlauts come back expanded.
  std::string elements(Symbol s) const {
    std::string out;
    for (Symbol c : expand_digraph(s)) {
      const auto it = codes_.find(c);
      if (it == codes_.end()) throw Error(Errc::unknown_symbol, "no Morse code for '" + utf8_encode(s) + "'");
      if (!out.empty()) out.push_back(' ');
      out += it->second;
    }
    return out;
  }

  bool contains(Symbol s) const {
    const auto expanded = expand_digraph(s);
    return std::all_of(expanded.begin(), expanded.end(), [&](Symbol c) { return codes_.count(c) > 0; });
  }

 private:
  std::unordered_map<Symbol, std::string> codes_;
};

inline const MorseTable& morse_table() {
  static const MorseTable table;
  return table;
}

inline constexpr std::size_t kMorseDit = 1;
inline constexpr std::size_t kMorseDah = 3;
inline constexpr std::size_t kMorseElementGap = 1;
inline constexpr std::size_t kMorseLetterGap = 3;
inline constexpr std::size_t kMorseWordGap = 7;

/// dit 1, dah 3, 1 between elements, 3 after the letter. A space completes the
/// 7-slot word gap, i.e. adds 4 slots to the preceding letter gap.
inline std::size_t morse_binary_cost(Symbol s) {
  if (s == U' ') return kMorseWordGap - kMorseLetterGap;
  std::size_t cost = 0;
  for (Symbol c : expand_digraph(s)) {
    const std::string el = morse_table().elements(c);
    for (char e : el) cost += e == '.' ? kMorseDit : kMorseDah;
    cost += (el.size() - 1) * kMorseElementGap + kMorseLetterGap;
  }
  return cost;
}

/// Elements plus one letter separator; a space is one separator symbol.
inline std::size_t morse_ternary_cost(Symbol s) {
  if (s == U' ') return 1;
  std::size_t cost = 0;
  for (Symbol c : expand_digraph(s)) cost += morse_table().elements(c).size() + 1;
  return cost;
}

// ---------------------------------------------------------------------------
// Polybius square

struct Cell {
  unsigned row;
  unsigned col;
  friend bool operator==(const Cell&, const Cell&) = default;
};

enum class PolybiusLayout { original, optimized };

class PolybiusSquare {
 public:
  PolybiusSquare(std::vector<std::pair<Symbol, Cell>> cells, PolybiusLayout kind,
                 std::map<Symbol, Symbol> aliases = {})
      : kind_(kind), aliases_(std::move(aliases)) {
    for (const auto& [s, c] : cells) {
      if (c.row < 1 || c.col < 1) throw Error(Errc::invalid_argument, "coordinates start at 1");
      for (const auto& [other, oc] : grid_) {
        if (oc == c) throw Error(Errc::invalid_argument, "duplicate cell");
      }
      if (!grid_.emplace(s, c).second) throw Error(Errc::invalid_argument, "duplicate symbol");
    }
  }

  PolybiusLayout kind() const noexcept { return kind_; }
  const std::map<Symbol, Cell>& grid() const noexcept { return grid_; }

  /// Cell of a plain letter, resolving aliases such as j -> i.
  Cell cell(Symbol s) const {
    if (const auto a = aliases_.find(s); a != aliases_.end()) s = a->second;
    const auto it = grid_.find(s);
    if (it == grid_.end()) throw Error(Errc::unknown_symbol, "'" + utf8_encode(s) + "' not in square");
    return it->second;
  }

  bool contains(Symbol s) const {
    const auto expanded = expand_digraph(s);
    return std::all_of(expanded.begin(), expanded.end(), [&](Symbol c) {
      return grid_.count(c) > 0 || aliases_.count(c) > 0;
    });
  }

 private:
  PolybiusLayout kind_;
  std::map<Symbol, Cell> grid_;
  std::map<Symbol, Symbol> aliases_;
};

/// Classic 5x5 square, alphabetical, i and j share a cell.
inline const PolybiusSquare& original_polybius() {
  static const PolybiusSquare square = [] {
    std::vector<std::pair<Symbol, Cell>> cells;
    constexpr std::u32string_view kLetters = U"abcdefghiklmnopqrstuvwxyz";
    for (unsigned i = 0; i < kLetters.size(); ++i) cells.push_back({kLetters[i], Cell{i / 5 + 1, i % 5 + 1}});
    return PolybiusSquare(std::move(cells), PolybiusLayout::original, {{U'j', U'i'}});
  }();
  return square;
}

inline constexpr std::size_t kPolybiusGroupGap = 1;
inline constexpr std::size_t kPolybiusLetterGap = 2;

inline std::size_t polybius_cell_cost(Cell c) noexcept {
  return c.row + kPolybiusGroupGap + c.col + kPolybiusLetterGap;
}

/// Row taps, one silent slot, column taps, two silent slots. Digraph symbols
/// cost both letters; a space adds two more silent slots.
inline std::size_t polybius_cost(const PolybiusSquare& square, Symbol s) {
  if (s == U' ') return 2;
  std::size_t cost = 0;
  for (Symbol c : expand_digraph(s)) cost += polybius_cell_cost(square.cell(c));
  return cost;
}

/// Fills anti-diagonals (row + col constant, i.e. constant code length) in
/// descending frequency. Umlaut weight goes to the letters of its digraph;
/// every letter a-z gets a cell.
inline PolybiusSquare build_optimized_polybius(const Weights& freqs) {
  if (freqs.empty()) throw Error(Errc::invalid_argument, "empty frequency table");
  std::map<Symbol, double> letter_weight;
  for (Symbol c = U'a'; c <= U'z'; ++c) letter_weight[c] = 0.0;
  for (const auto& [s, w] : freqs) {
    if (s == U' ') continue;
    const auto expanded = expand_digraph(s);
    for (Symbol c : expanded) {
      if (letter_weight.count(c) == 0) letter_weight[c] = 0.0;
      letter_weight[c] += w;
    }
  }
  std::vector<std::pair<Symbol, double>> ranked(letter_weight.begin(), letter_weight.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });

  std::vector<std::pair<Symbol, Cell>> cells;
  unsigned diagonal = 2;
  unsigned row = 1;
  for (const auto& [s, w] : ranked) {
    cells.push_back({s, Cell{row, diagonal - row}});
    if (++row == diagonal) {
      ++diagonal;
      row = 1;
    }
  }
  return PolybiusSquare(std::move(cells), PolybiusLayout::optimized);
}

// ---------------------------------------------------------------------------
// Huffman, fixed width, Tap

/// Binary Huffman code lengths. Equal weights merge the earliest-created node
/// first; leaves are created in input order.
inline std::vector<std::pair<Symbol, std::size_t>> huffman_lengths(const Weights& freqs) {
  if (freqs.size() < 2) throw Error(Errc::degenerate_alphabet, "need at least two symbols");
  for (const auto& [s, w] : freqs) {
    if (!(w > 0.0)) throw Error(Errc::invalid_argument, "weights must be positive");
  }

  struct Node {
    double weight;
    std::size_t id;
    bool operator>(const Node& o) const { return std::tie(weight, id) > std::tie(o.weight, o.id); }
  };
  std::vector<std::size_t> parent(freqs.size(), 0);
  std::priority_queue<Node, std::vector<Node>, std::greater<>> heap;
  for (std::size_t i = 0; i < freqs.size(); ++i) heap.push({freqs[i].weight, i});
  std::size_t next_id = freqs.size();
  while (heap.size() > 1) {
    const Node a = heap.top();
    heap.pop();
    const Node b = heap.top();
    heap.pop();
    parent.push_back(0);
    parent[a.id] = next_id;
    parent[b.id] = next_id;
    heap.push({a.weight + b.weight, next_id++});
  }
  const std::size_t root = next_id - 1;

  std::vector<std::pair<Symbol, std::size_t>> out;
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    std::size_t depth = 0;
    for (std::size_t n = i; n != root; n = parent[n]) ++depth;
    out.push_back({freqs[i].symbol, depth});
  }
  return out;
}

inline std::size_t fixed_width_cost(std::size_t alphabet_size) {
  if (alphabet_size < 1) throw Error(Errc::invalid_argument, "alphabet_size must be >= 1");
  return static_cast<std::size_t>(std::bit_width(std::max<std::size_t>(alphabet_size, 2) - 1));
}

/// Framed length; a space costs the default word gap.
inline std::size_t tap_cost(const TapTable& table, Symbol s) {
  if (s == U' ') return EncodeOptions{}.word_gap_zeros;
  return table.at(s).framed().size();
}

// ---------------------------------------------------------------------------

struct CodeLength {
  Symbol symbol;
  std::size_t bits;
  std::optional<std::size_t> ternary;
};
using CodeLengthTable = std::vector<CodeLength>;

/// symbol TAB cost_bits [TAB cost_ternary]; a space is written as "space".
inline std::string export_costs(const CodeLengthTable& table) {
  std::string out;
  for (const auto& c : table) {
    out += c.symbol == U' ' ? std::string("space") : utf8_encode(c.symbol);
    out += '\t';
    out += std::to_string(c.bits);
    if (c.ternary) {
      out += '\t';
      out += std::to_string(*c.ternary);
    }
    out += '\n';
  }
  return out;
}

inline CodeLengthTable morse_cost_table(std::u32string_view symbols) {
  CodeLengthTable out;
  for (Symbol s : symbols) out.push_back({s, morse_binary_cost(s), morse_ternary_cost(s)});
  return out;
}

}  // namespace tapcode
