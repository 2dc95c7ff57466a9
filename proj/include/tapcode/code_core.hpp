#pragma once

// Construction of the Tap code: payload enumeration, table assembly, the
// canonical German assignment, group (run-length) notation and the Morse
// collision derivation.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "tapcode/bits.hpp"
#include "tapcode/error.hpp"
#include "tapcode/utf8.hpp"

namespace tapcode {

/// Information-bearing core of a codeword: starts and ends with a tap and
/// never holds two silent slots in a row.
class Payload {
 public:
  explicit Payload(Bits bits) : bits_(std::move(bits)) {
    if (!is_valid(bits_)) throw Error(Errc::malformed, "not a payload: \"" + bits_.str() + "\"");
  }
  explicit Payload(std::string_view digits) : Payload(Bits(digits)) {}

  static bool is_valid(const Bits& b) noexcept {
    return !b.empty() && b[0] && b[b.size() - 1] && !b.contains("00");
  }

  const Bits& bits() const noexcept { return bits_; }
  std::size_t size() const noexcept { return bits_.size(); }
  std::size_t popcount() const noexcept { return bits_.popcount(); }

  friend bool operator==(const Payload&, const Payload&) = default;
  friend auto operator<=>(const Payload&, const Payload&) = default;

 private:
  Bits bits_;
};

/// A payload together with its padded (even) and terminated forms.
class CodeWord {
 public:
  explicit CodeWord(Payload payload) : payload_(std::move(payload)), written_(payload_.bits()) {
    if (written_.size() % 2 == 1) written_.append_zeros(1);
    framed_ = written_;
    framed_.append_zeros(2);
  }

  /// Inverse of written(): accepts "payload" (even) or "payload0" (payload odd).
  static CodeWord from_written(const Bits& written) {
    if (written.size() % 2 == 1 || written.empty()) {
      throw Error(Errc::invalid_table, "written form must have even length: \"" + written.str() + "\"");
    }
    if (!written[written.size() - 1]) {
      Bits payload(std::string_view(written.str()).substr(0, written.size() - 1));
      if (!Payload::is_valid(payload)) {
        throw Error(Errc::invalid_table, "not a written form: \"" + written.str() + "\"");
      }
      return CodeWord(Payload(std::move(payload)));
    }
    if (!Payload::is_valid(written)) {
      throw Error(Errc::invalid_table, "not a written form: \"" + written.str() + "\"");
    }
    return CodeWord(Payload(written));
  }

  const Payload& payload() const noexcept { return payload_; }
  const Bits& written() const noexcept { return written_; }
  const Bits& framed() const noexcept { return framed_; }

  friend bool operator==(const CodeWord& a, const CodeWord& b) noexcept { return a.payload_ == b.payload_; }

 private:
  Payload payload_;
  Bits written_;
  Bits framed_;
};

/// Consecutive-tap counts, e.g. "m" = 1,2,1.
class GroupPattern {
 public:
  explicit GroupPattern(std::vector<unsigned> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) throw Error(Errc::invalid_argument, "group pattern must not be empty");
    if (std::find(counts_.begin(), counts_.end(), 0u) != counts_.end()) {
      throw Error(Errc::invalid_argument, "group counts must be positive");
    }
  }

  /// Parses "1,2,1".
  static GroupPattern parse(std::string_view text) {
    std::vector<unsigned> counts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto comma = text.find(',', pos);
      const auto field = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
      if (field.empty() || field.size() > 6 ||
          !std::all_of(field.begin(), field.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw Error(Errc::invalid_argument, "bad group pattern: \"" + std::string(text) + "\"");
      }
      counts.push_back(static_cast<unsigned>(std::stoul(std::string(field))));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return GroupPattern(std::move(counts));
  }

  const std::vector<unsigned>& counts() const noexcept { return counts_; }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      if (i) out.push_back(',');
      out += std::to_string(counts_[i]);
    }
    return out;
  }

  friend bool operator==(const GroupPattern&, const GroupPattern&) = default;

 private:
  std::vector<unsigned> counts_;
};

inline GroupPattern to_groups(const Payload& p) {
  std::vector<unsigned> counts;
  unsigned run = 0;
  for (char c : p.bits().str()) {
    if (c == '1') {
      ++run;
    } else {
      counts.push_back(run);
      run = 0;
    }
  }
  counts.push_back(run);
  return GroupPattern(std::move(counts));
}

inline Payload from_groups(const GroupPattern& g) {
  std::string digits;
  for (std::size_t i = 0; i < g.counts().size(); ++i) {
    if (i) digits.push_back('0');
    digits.append(g.counts()[i], '1');
  }
  return Payload(digits);
}

namespace detail {

inline std::size_t written_length(std::size_t payload_length) noexcept {
  return payload_length + payload_length % 2;
}

// (framed length asc, popcount asc, written value desc)
inline auto enumeration_key(const Payload& p) {
  const CodeWord cw(p);
  return std::make_tuple(cw.framed().size(), p.popcount(), ~cw.written().value());
}

// Every "00"-free string of the given length that starts and ends with 1.
inline void payloads_of_length(std::size_t length, std::string& prefix, std::vector<Payload>& out) {
  if (prefix.size() == length) {
    if (prefix.back() == '1') out.emplace_back(prefix);
    return;
  }
  prefix.push_back('1');
  payloads_of_length(length, prefix, out);
  prefix.back() = '0';
  if (prefix[prefix.size() - 2] == '1') payloads_of_length(length, prefix, out);
  prefix.pop_back();
}

}  // namespace detail

/// All payloads of length 1..max_payload_len in assignment order.
inline std::vector<Payload> enumerate_payloads(std::size_t max_payload_len) {
  if (max_payload_len < 1) throw Error(Errc::invalid_argument, "max_payload_len must be >= 1");
  if (max_payload_len > 40) throw Error(Errc::invalid_argument, "max_payload_len too large");
  std::vector<Payload> out;
  for (std::size_t n = 1; n <= max_payload_len; ++n) {
    std::string prefix = "1";
    detail::payloads_of_length(n, prefix, out);
  }
  std::stable_sort(out.begin(), out.end(), [](const Payload& a, const Payload& b) {
    return detail::enumeration_key(a) < detail::enumeration_key(b);
  });
  return out;
}

/// Payloads of the unpadded computer-data variant, ordered by raw length then popcount.
inline std::vector<Bits> construct_data_variant(std::size_t k) {
  if (k < 1) throw Error(Errc::invalid_argument, "k must be >= 1");
  std::vector<Bits> out{Bits("0")};
  for (std::size_t max_len = 1; out.size() < k; ++max_len) {
    std::vector<Payload> payloads;
    std::string prefix = "1";
    detail::payloads_of_length(max_len, prefix, payloads);
    std::stable_sort(payloads.begin(), payloads.end(), [](const Payload& a, const Payload& b) {
      return std::make_tuple(a.popcount(), ~a.bits().value()) < std::make_tuple(b.popcount(), ~b.bits().value());
    });
    for (const auto& p : payloads) {
      if (out.size() == k) break;
      out.push_back(p.bits() + Bits("00"));
    }
  }
  return out;
}

enum class TieBreak { canonical, deterministic };

struct TableEntry {
  Symbol symbol;
  CodeWord code;
};

/// Ordered symbol -> codeword map. Immutable once built.
class TapTable {
 public:
  explicit TapTable(std::vector<TableEntry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw Error(Errc::invalid_table, "table is empty");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const auto& e = entries_[i];
      if (!by_symbol_.emplace(e.symbol, i).second) {
        throw Error(Errc::invalid_table, "duplicate symbol '" + utf8_encode(e.symbol) + "'");
      }
      if (!by_written_.emplace(e.code.written().str(), i).second) {
        throw Error(Errc::invalid_table, "duplicate written form " + e.code.written().str());
      }
      if (e.symbol == U' ' || e.symbol == U'\t' || e.symbol == U'\n') {
        throw Error(Errc::invalid_table, "whitespace cannot be a table symbol");
      }
      if (i > 0) {
        const auto& prev = entries_[i - 1].code;
        if (std::make_pair(prev.framed().size(), prev.payload().popcount()) >
            std::make_pair(e.code.framed().size(), e.code.payload().popcount())) {
          throw Error(Errc::invalid_table, "entries must be ordered by framed length, then popcount");
        }
      }
    }
  }

  const std::vector<TableEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  const TableEntry* find(Symbol s) const noexcept {
    const auto it = by_symbol_.find(s);
    return it == by_symbol_.end() ? nullptr : &entries_[it->second];
  }

  const CodeWord& at(Symbol s) const {
    if (const auto* e = find(s)) return e->code;
    throw Error(Errc::unknown_symbol, "'" + utf8_encode(s) + "'");
  }

  std::optional<Symbol> symbol_for(const Bits& written) const {
    const auto it = by_written_.find(written.str());
    if (it == by_written_.end()) return std::nullopt;
    return entries_[it->second].symbol;
  }

 private:
  std::vector<TableEntry> entries_;
  std::unordered_map<Symbol, std::size_t> by_symbol_;
  std::unordered_map<std::string, std::size_t> by_written_;
};

/// German letters in descending frequency, as used by the canonical table.
inline constexpr std::u32string_view kGermanOrder = U"enirstahdlucmgobfwkzpväüßöjxyq.?";

/// Written forms of the canonical table in assignment order. Inside an equal
/// (framed length, popcount) class the order is fixed data, not derived.
inline constexpr std::array<std::string_view, 32> kCanonicalWritten = {
    "10",       "11",       "1010",     "1110",     "1101",     "1011",     "1111",     "101010",
    "111010",   "110110",   "101110",   "110101",   "101101",   "101011",   "111110",   "111101",
    "111011",   "110111",   "101111",   "111111",   "10101010", "10110110", "11101010", "10111010",
    "10101110", "10101011", "11011010", "10101101", "10110101", "11010110", "10111110", "11101011",
};

/// Five-tap payload left out of the canonical table.
inline constexpr std::string_view kCanonicalExcluded = "11010101";

inline constexpr std::size_t kMaxPayloadLength = 8;

inline TapTable construct_table(std::u32string_view symbols_by_frequency, TieBreak tiebreak) {
  if (symbols_by_frequency.empty()) throw Error(Errc::invalid_argument, "alphabet is empty");

  std::vector<CodeWord> sequence;
  std::set<Bits> used;
  if (tiebreak == TieBreak::canonical) {
    for (auto w : kCanonicalWritten) {
      sequence.push_back(CodeWord::from_written(Bits(w)));
      used.insert(sequence.back().written());
    }
    used.insert(Bits(kCanonicalExcluded));
  }
  for (const auto& p : enumerate_payloads(kMaxPayloadLength)) {
    CodeWord cw(p);
    if (used.insert(cw.written()).second) sequence.push_back(std::move(cw));
  }

  if (symbols_by_frequency.size() > sequence.size()) {
    throw Error(Errc::alphabet_too_large, std::to_string(symbols_by_frequency.size()) + " symbols, " +
                                              std::to_string(sequence.size()) + " payloads available");
  }
  std::vector<TableEntry> entries;
  entries.reserve(symbols_by_frequency.size());
  for (std::size_t i = 0; i < symbols_by_frequency.size(); ++i) {
    entries.push_back({symbols_by_frequency[i], sequence[i]});
  }
  return TapTable(std::move(entries));
}

inline const TapTable& canonical_german_table() {
  static const TapTable table = construct_table(kGermanOrder, TieBreak::canonical);
  return table;
}

/// One line per entry: symbol TAB written TAB groups.
inline std::string export_table(const TapTable& table) {
  std::string out;
  for (const auto& e : table.entries()) {
    out += utf8_encode(e.symbol);
    out += '\t';
    out += e.code.written().str();
    out += '\t';
    out += to_groups(e.code.payload()).str();
    out += '\n';
  }
  return out;
}

/// Reads the export format back. The groups column is optional but checked when present.
inline TapTable parse_table(std::string_view text) {
  std::vector<TableEntry> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    for (;;) {
      const auto tab = line.find('\t', pos);
      fields.push_back(line.substr(pos, tab == std::string::npos ? std::string::npos : tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    const auto where = "line " + std::to_string(lineno);
    if (fields.size() < 2 || fields.size() > 3) throw Error(Errc::invalid_table, where + ": expected 2 or 3 fields");
    const auto sym = utf8_decode(fields[0]);
    if (sym.size() != 1) throw Error(Errc::invalid_table, where + ": symbol must be one character");
    CodeWord cw = [&] {
      try {
        return CodeWord::from_written(Bits(fields[1]));
      } catch (const Error& e) {
        throw Error(Errc::invalid_table, where + ": " + e.what());
      }
    }();
    if (fields.size() == 3 && GroupPattern::parse(fields[2]) != to_groups(cw.payload())) {
      throw Error(Errc::invalid_table, where + ": groups column disagrees with written form");
    }
    entries.push_back({sym[0], std::move(cw)});
  }
  return TapTable(std::move(entries));
}

// ---------------------------------------------------------------------------
// Morse derivation: knock every dit/dah sequence (dit = "1", dah = "10"),
// group the renderings that produce the same onsets, keep the even one.

struct MorseRendering {
  std::string morse;  // '.' and '-'
  Bits bits;
};

struct MorseCollisionClass {
  Bits onsets;  // rendering with trailing silence stripped
  std::vector<MorseRendering> members;
  MorseRendering kept;
};

inline std::vector<MorseCollisionClass> morse_collisions(std::size_t max_elements) {
  if (max_elements < 1) throw Error(Errc::invalid_argument, "max_elements must be >= 1");
  if (max_elements > 24) throw Error(Errc::invalid_argument, "max_elements too large");

  std::map<Bits, std::vector<MorseRendering>> classes;
  for (std::size_t n = 1; n <= max_elements; ++n) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      MorseRendering r;
      for (std::size_t i = 0; i < n; ++i) {
        const bool dah = (mask >> (n - 1 - i)) & 1u;
        r.morse.push_back(dah ? '-' : '.');
        r.bits += Bits(dah ? "10" : "1");
      }
      std::string onsets = r.bits.str();
      onsets.erase(onsets.find_last_of('1') + 1);
      classes[Bits(onsets)].push_back(std::move(r));
    }
  }

  std::vector<MorseCollisionClass> out;
  for (auto& [onsets, members] : classes) {
    const auto even = std::find_if(members.begin(), members.end(),
                                   [](const MorseRendering& r) { return r.bits.size() % 2 == 0; });
    // Each class is exactly {..dit, ..dah}; their lengths differ by one.
    if (even == members.end()) continue;
    MorseRendering kept = *even;
    out.push_back({onsets, std::move(members), std::move(kept)});
  }
  return out;
}

inline std::set<Bits> derive_from_morse(std::size_t max_elements) {
  std::set<Bits> kept;
  for (const auto& c : morse_collisions(max_elements)) kept.insert(c.kept.bits);
  return kept;
}

}  // namespace tapcode
