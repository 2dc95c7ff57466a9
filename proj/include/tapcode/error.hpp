#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tapcode {

enum class Errc {
  unknown_symbol,
  unknown_codeword,
  unknown_pattern,
  truncated_stream,
  malformed,
  alphabet_too_large,
  insufficient_events,
  collision,
  degenerate_alphabet,
  empty_corpus,
  invalid_argument,
  invalid_table,
  invalid_session,
  invalid_utf8,
  protocol_error,
};

/// Stable kebab-case name, used on diagnostics streams and in protocol replies.
constexpr std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::unknown_symbol: return "unknown-symbol";
    case Errc::unknown_codeword: return "unknown-codeword";
    case Errc::unknown_pattern: return "unknown-pattern";
    case Errc::truncated_stream: return "truncated-stream";
    case Errc::malformed: return "malformed";
    case Errc::alphabet_too_large: return "alphabet-too-large";
    case Errc::insufficient_events: return "insufficient-events";
    case Errc::collision: return "collision";
    case Errc::degenerate_alphabet: return "degenerate-alphabet";
    case Errc::empty_corpus: return "empty-corpus";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::invalid_table: return "invalid-table";
    case Errc::invalid_session: return "invalid-session";
    case Errc::invalid_utf8: return "invalid-utf8";
    case Errc::protocol_error: return "protocol-error";
  }
  return "unknown-error";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + (detail.empty() ? "" : ": " + detail)),
        code_(code) {}

  Errc code() const noexcept { return code_; }
  std::string_view name() const noexcept { return errc_name(code_); }

 private:
  Errc code_;
};

}  // namespace tapcode
