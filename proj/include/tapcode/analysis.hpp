#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tapcode/code_core.hpp"
#include "tapcode/error.hpp"
#include "tapcode/schemes.hpp"
#include "tapcode/utf8.hpp"

namespace tapcode {

/// The 31 analysed characters: a-z, the umlauts, sharp s and space.
inline constexpr std::u32string_view kAnalysisAlphabet = U"abcdefghijklmnopqrstuvwxyzäöüß ";

class FrequencyTable {
 public:
  /// counts[i] belongs to kAnalysisAlphabet[i].
  explicit FrequencyTable(std::vector<std::uint64_t> counts) : counts_(std::move(counts)) {
    if (counts_.size() != kAnalysisAlphabet.size()) {
      throw Error(Errc::invalid_argument, "expected one count per analysis symbol");
    }
    for (auto c : counts_) total_ += c;
    if (total_ == 0) throw Error(Errc::empty_corpus, "no retained characters");
  }

  static FrequencyTable from_text(std::string_view text);

  std::uint64_t total() const noexcept { return total_; }

  std::uint64_t count(Symbol s) const {
    const auto i = kAnalysisAlphabet.find(s);
    if (i == std::u32string_view::npos) throw Error(Errc::unknown_symbol, "'" + utf8_encode(s) + "'");
    return counts_[i];
  }

  double probability(Symbol s) const { return static_cast<double>(count(s)) / static_cast<double>(total_); }

  /// Symbols with non-zero probability, in alphabet order.
  Weights weights() const {
    Weights out;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      if (counts_[i] > 0) {
        out.push_back({kAnalysisAlphabet[i], static_cast<double>(counts_[i]) / static_cast<double>(total_)});
      }
    }
    return out;
  }

  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// Lowercases, keeps a-z, äöüß and whitespace; whitespace runs count as one
/// space and everything else is dropped before runs are collapsed.
inline FrequencyTable ingest_corpus(std::string_view text) {
  std::vector<std::uint64_t> counts(kAnalysisAlphabet.size(), 0);
  const std::size_t space = kAnalysisAlphabet.size() - 1;
  bool pending_space = false;
  bool seen_letter = false;
  for (char32_t c : utf8_decode(text)) {
    if (is_space(c)) {
      pending_space = seen_letter;
      continue;
    }
    c = to_lower(c);
    const auto i = kAnalysisAlphabet.find(c);
    if (i == std::u32string_view::npos || i == space) continue;
    if (pending_space) ++counts[space];
    pending_space = false;
    seen_letter = true;
    ++counts[i];
  }
  return FrequencyTable(std::move(counts));
}

inline FrequencyTable FrequencyTable::from_text(std::string_view text) { return ingest_corpus(text); }

struct SchemeFigure {
  std::string scheme;
  double avg_bits;
};

struct EfficiencyReport {
  std::vector<SchemeFigure> binary;  // huffman, fixed_width, tap, polybius_optimized, polybius_original, morse_binary
  double morse_ternary = 0.0;        // ternary symbols per character
  double morse_ternary_as_bits = 0.0;

  double at(std::string_view scheme) const {
    for (const auto& f : binary) {
      if (f.scheme == scheme) return f.avg_bits;
    }
    throw Error(Errc::invalid_argument, "no scheme " + std::string(scheme));
  }
};

/// Bits carrying the same information as t ternary symbols: 2^x = 3^t.
inline double ternary_to_binary(double ternary_symbols) {
  if (!(ternary_symbols > 0.0)) throw Error(Errc::invalid_argument, "ternary count must be positive");
  return ternary_symbols * std::log2(3.0);
}

template <typename CostFn>
double weighted_average(const Weights& w, CostFn&& cost) {
  double sum = 0.0;
  for (const auto& [s, p] : w) sum += p * static_cast<double>(cost(s));
  return sum;
}

inline EfficiencyReport efficiency_report(const FrequencyTable& freqs, const TapTable& table = canonical_german_table()) {
  const Weights w = freqs.weights();
  EfficiencyReport r;

  if (w.size() >= 2) {
    const auto lengths = huffman_lengths(w);
    double avg = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) avg += w[i].weight * static_cast<double>(lengths[i].second);
    r.binary.push_back({"huffman", avg});
  } else {
    // One symbol carries no information but still occupies a slot per character.
    r.binary.push_back({"huffman", 1.0});
  }
  r.binary.push_back({"fixed_width", static_cast<double>(fixed_width_cost(kAnalysisAlphabet.size()))});
  r.binary.push_back({"tap", weighted_average(w, [&](Symbol s) { return tap_cost(table, s); })});
  const PolybiusSquare optimized = build_optimized_polybius(w);
  r.binary.push_back({"polybius_optimized", weighted_average(w, [&](Symbol s) { return polybius_cost(optimized, s); })});
  r.binary.push_back(
      {"polybius_original", weighted_average(w, [&](Symbol s) { return polybius_cost(original_polybius(), s); })});
  r.binary.push_back({"morse_binary", weighted_average(w, [](Symbol s) { return morse_binary_cost(s); })});

  r.morse_ternary = weighted_average(w, [](Symbol s) { return morse_ternary_cost(s); });
  r.morse_ternary_as_bits = ternary_to_binary(r.morse_ternary);
  return r;
}

inline std::string format_report(const EfficiencyReport& r) {
  std::string out;
  char buf[96];
  for (const auto& f : r.binary) {
    std::snprintf(buf, sizeof buf, "%s\t%.3f\n", f.scheme.c_str(), f.avg_bits);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "morse_ternary\t%.3f\t%.3f\n", r.morse_ternary, r.morse_ternary_as_bits);
  out += buf;
  return out;
}

/// One JSON object per line.
inline std::string format_report_jsonl(const EfficiencyReport& r) {
  std::string out;
  for (const auto& f : r.binary) {
    out += nlohmann::json{{"scheme", f.scheme}, {"avg_bits", f.avg_bits}}.dump();
    out += '\n';
  }
  out += nlohmann::json{{"scheme", "morse_ternary"},
                        {"avg_symbols", r.morse_ternary},
                        {"avg_bits_equivalent", r.morse_ternary_as_bits}}
             .dump();
  out += '\n';
  return out;
}

struct Speed {
  double chars_per_second;
  double words_per_minute;
};

/// A word is five letters plus a space.
inline Speed speed_estimate(double bits_per_char, double unit_seconds) {
  if (!(bits_per_char > 0.0) || !(unit_seconds > 0.0)) {
    throw Error(Errc::invalid_argument, "bits per char and unit must be positive");
  }
  const double cps = 1.0 / (bits_per_char * unit_seconds);
  return {cps, cps * 60.0 / 6.0};
}

}  // namespace tapcode
