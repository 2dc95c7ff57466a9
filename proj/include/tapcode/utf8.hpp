#pragma once

#include <string>
#include <string_view>

#include "tapcode/error.hpp"

namespace tapcode {

using Symbol = char32_t;

inline std::u32string utf8_decode(std::string_view in) {
  std::u32string out;
  out.reserve(in.size());
  for (std::size_t i = 0; i < in.size();) {
    const auto lead = static_cast<unsigned char>(in[i]);
    std::size_t extra = 0;
    char32_t cp = 0;
    if (lead < 0x80) {
      cp = lead;
    } else if ((lead & 0xE0) == 0xC0) {
      extra = 1;
      cp = lead & 0x1F;
    } else if ((lead & 0xF0) == 0xE0) {
      extra = 2;
      cp = lead & 0x0F;
    } else if ((lead & 0xF8) == 0xF0) {
      extra = 3;
      cp = lead & 0x07;
    } else {
      throw Error(Errc::invalid_utf8, "bad lead byte at offset " + std::to_string(i));
    }
    for (std::size_t k = 1; k <= extra; ++k) {
      if (i + k >= in.size()) throw Error(Errc::invalid_utf8, "truncated sequence at offset " + std::to_string(i));
      const auto cont = static_cast<unsigned char>(in[i + k]);
      if ((cont & 0xC0) != 0x80) throw Error(Errc::invalid_utf8, "bad continuation at offset " + std::to_string(i + k));
      cp = (cp << 6) | (cont & 0x3F);
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

inline void utf8_append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string utf8_encode(std::u32string_view in) {
  std::string out;
  out.reserve(in.size());
  for (char32_t cp : in) utf8_append(out, cp);
  return out;
}

inline std::string utf8_encode(char32_t cp) {
  std::string out;
  utf8_append(out, cp);
  return out;
}

// Lowercasing restricted to the letters the code covers: ASCII, the German umlauts, capital sharp s.
constexpr char32_t to_lower(char32_t c) noexcept {
  if (c >= U'A' && c <= U'Z') return c - U'A' + U'a';
  switch (c) {
    case U'Ä': return U'ä';
    case U'Ö': return U'ö';
    case U'Ü': return U'ü';
    case U'ẞ': return U'ß';
    default: return c;
  }
}

constexpr bool is_space(char32_t c) noexcept {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\v' || c == U'\f' ||
         c == U' ';
}

}  // namespace tapcode
