#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "tapcode/bits.hpp"
#include "tapcode/code_core.hpp"
#include "tapcode/error.hpp"
#include "tapcode/utf8.hpp"

namespace tapcode {

struct EncodeOptions {
  bool digit_mode = false;
  /// Extra silent slots per space, on top of the letter terminator. Even, >= 2.
  std::size_t word_gap_zeros = 2;
};

/// 1-6 -> e,n,r,a,o,z; 7 -> s, 8 -> t, 9 -> h, 0 -> i. Not reversed on decode.
constexpr char32_t substitute_digit(char32_t c) noexcept {
  constexpr std::u32string_view kDigitLetters = U"ienraozsth";
  if (c >= U'0' && c <= U'9') return kDigitLetters[c - U'0'];
  return c;
}

inline Bits encode(std::string_view text, const TapTable& table, const EncodeOptions& opts = {}) {
  if (opts.word_gap_zeros < 2 || opts.word_gap_zeros % 2 != 0) {
    throw Error(Errc::invalid_argument, "word_gap_zeros must be even and >= 2");
  }
  Bits out;
  bool after_space = false;
  for (char32_t c : utf8_decode(text)) {
    c = to_lower(c);
    if (opts.digit_mode) c = substitute_digit(c);
    if (c == U' ') {
      // A stream always opens with a tap; silence before the first letter has no encoding.
      if (out.empty()) throw Error(Errc::malformed, "text may not start with a space");
      // A longer pause still reads as a single word gap.
      if (after_space) throw Error(Errc::malformed, "consecutive spaces");
      out.append_zeros(opts.word_gap_zeros);
      after_space = true;
      continue;
    }
    const auto* entry = table.find(c);
    if (entry == nullptr) throw Error(Errc::unknown_symbol, "'" + utf8_encode(c) + "'");
    out += entry->code.framed();
    after_space = false;
  }
  return out;
}

inline std::string decode(const Bits& stream, const TapTable& table) {
  const std::string& s = stream.str();
  std::string text;
  std::size_t pos = 0;
  if (!s.empty() && s[0] == '0') throw Error(Errc::malformed, "stream starts with silence");
  while (pos < s.size()) {
    const auto end = s.find("00", pos);
    if (end == std::string::npos) {
      throw Error(Errc::truncated_stream, "no terminator after slot " + std::to_string(pos));
    }
    Bits payload(std::string_view(s).substr(pos, end - pos));
    Bits written = payload;
    if (written.size() % 2 == 1) written.append_zeros(1);
    const auto symbol = table.symbol_for(written);
    if (!symbol) throw Error(Errc::unknown_codeword, payload.str());
    utf8_append(text, *symbol);

    std::size_t next = s.find('1', end);
    if (next == std::string::npos) next = s.size();
    // Two or three zeros close the letter; any longer run is one word gap.
    if (next - end >= 4) text.push_back(' ');
    pos = next;
  }
  return text;
}

}  // namespace tapcode
