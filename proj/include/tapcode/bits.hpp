#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "tapcode/error.hpp"

namespace tapcode {

/// An ordered sequence of sixteenth slots: '1' is a tap, '0' a silent slot.
/// Serialized as the ASCII string of digits.
class Bits {
 public:
  Bits() = default;

  explicit Bits(std::string_view digits) : digits_(digits) {
    if (!std::all_of(digits_.begin(), digits_.end(), [](char c) { return c == '0' || c == '1'; })) {
      throw Error(Errc::malformed, "bit string may only contain '0' and '1': \"" + digits_ + "\"");
    }
  }

  static Bits zeros(std::size_t n) { return Bits(std::string(n, '0')); }

  std::size_t size() const noexcept { return digits_.size(); }
  bool empty() const noexcept { return digits_.empty(); }
  bool operator[](std::size_t i) const noexcept { return digits_[i] == '1'; }
  const std::string& str() const noexcept { return digits_; }

  std::size_t popcount() const noexcept {
    return static_cast<std::size_t>(std::count(digits_.begin(), digits_.end(), '1'));
  }

  /// Numeric value, most significant slot first. Only meaningful for size() <= 64.
  std::uint64_t value() const noexcept {
    std::uint64_t v = 0;
    for (char c : digits_) v = (v << 1) | static_cast<std::uint64_t>(c == '1');
    return v;
  }

  bool contains(std::string_view pattern) const noexcept {
    return digits_.find(pattern) != std::string::npos;
  }

  Bits& operator+=(const Bits& rhs) {
    digits_ += rhs.digits_;
    return *this;
  }
  friend Bits operator+(Bits lhs, const Bits& rhs) { return lhs += rhs; }

  void push_back(bool bit) { digits_.push_back(bit ? '1' : '0'); }
  void append_zeros(std::size_t n) { digits_.append(n, '0'); }

  friend bool operator==(const Bits&, const Bits&) = default;
  friend auto operator<=>(const Bits&, const Bits&) = default;

 private:
  std::string digits_;
};

/// Eighth-beat display: a separator after every second slot ("10 00 11 00").
inline std::string render_grouped(const Bits& bits, char separator = ' ') {
  std::string out;
  out.reserve(bits.size() + bits.size() / 2);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (i > 0 && i % 2 == 0) out.push_back(separator);
    out.push_back(bits.str()[i]);
  }
  return out;
}

}  // namespace tapcode
