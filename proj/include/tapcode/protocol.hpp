#pragma once

// Line protocol spoken by `tapcode serve`, one instance per connection:
//
//   TAP <onset_ms>   MODE strict|relaxed   TEMPO <unit_ms>   RESET   END <ms>
//
// END answers "TEXT <decoded>" or "ERR <error-name>" and clears the taps.
// In relaxed mode every completed letter gap answers "PARTIAL <text so far>".
// Malformed lines answer "ERR protocol-error".

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tapcode/code_core.hpp"
#include "tapcode/error.hpp"
#include "tapcode/timing.hpp"

namespace tapcode {

class ProtocolSession {
 public:
  explicit ProtocolSession(const TapTable& table = canonical_german_table(), RelaxedOptions relaxed = {})
      : table_(&table), relaxed_(relaxed) {}

  std::vector<std::string> handle(std::string_view line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.remove_suffix(1);
    const auto space = line.find(' ');
    const auto verb = line.substr(0, space);
    const auto arg = space == std::string_view::npos ? std::string_view{} : line.substr(space + 1);

    if (verb == "TAP") return on_tap(arg);
    if (verb == "END") return on_end(arg);
    if (verb == "MODE" && arg == "strict") {
      mode_ = DecodeMode::strict;
      return {};
    }
    if (verb == "MODE" && arg == "relaxed") {
      mode_ = DecodeMode::relaxed;
      return {};
    }
    if (verb == "TEMPO") {
      const auto unit = parse_number(arg);
      if (!unit || *unit <= 0.0) return {error_line(Errc::protocol_error)};
      unit_ms_ = *unit;
      return {};
    }
    if (verb == "RESET" && arg.empty()) {
      *this = ProtocolSession(*table_, relaxed_);
      return {};
    }
    return {error_line(Errc::protocol_error)};
  }

  DecodeMode mode() const noexcept { return mode_; }
  std::size_t pending_taps() const noexcept { return onsets_.size(); }

 private:
  static std::optional<double> parse_number(std::string_view s) {
    double v = 0.0;
    if (s.empty()) return std::nullopt;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !(v >= 0.0)) return std::nullopt;
    return v;
  }

  static std::string error_line(Errc code) { return "ERR " + std::string(errc_name(code)); }

  std::vector<std::string> on_tap(std::string_view arg) {
    const auto t = parse_number(arg);
    if (!t || (!onsets_.empty() && *t <= onsets_.back())) return {error_line(Errc::protocol_error)};
    onsets_.push_back(*t);
    if (mode_ != DecodeMode::relaxed || onsets_.size() < 2) return {};

    // Everything before the newest tap is settled once the newest gap closed a letter.
    try {
      const TapSession so_far = TapSession::from_onsets(onsets_, onsets_.back(), unit_ms_);
      auto letters = segment_relaxed(so_far, relaxed_);
      letters.pop_back();
      if (letters.size() <= reported_letters_) return {};
      reported_letters_ = letters.size();
      return {"PARTIAL " + decode_groups(letters, *table_)};
    } catch (const Error&) {
      // Partial output is advisory; END reports the error.
      return {};
    }
  }

  std::vector<std::string> on_end(std::string_view arg) {
    const auto end = parse_number(arg);
    if (!end) return {error_line(Errc::protocol_error)};
    std::string reply;
    try {
      if (onsets_.empty()) {
        reply = "TEXT ";
      } else {
        const TapSession session = TapSession::from_onsets(onsets_, *end, unit_ms_);
        reply = "TEXT " + decode_session(session, *table_, mode_, relaxed_);
      }
    } catch (const Error& e) {
      reply = error_line(e.code());
    }
    onsets_.clear();
    reported_letters_ = 0;
    return {reply};
  }

  const TapTable* table_;
  RelaxedOptions relaxed_;
  DecodeMode mode_ = DecodeMode::relaxed;
  std::optional<double> unit_ms_;
  std::vector<double> onsets_;
  std::size_t reported_letters_ = 0;
};

}  // namespace tapcode
