#pragma once

// Tap onsets -> bitstreams (strict grid) or tap-group patterns (relaxed,
// rhythm-free), and from there to text.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tapcode/bits.hpp"
#include "tapcode/code_core.hpp"
#include "tapcode/codec.hpp"
#include "tapcode/error.hpp"

namespace tapcode {

struct TapEvent {
  double onset_ms = 0.0;
};

class TapSession {
 public:
  TapSession() = default;
  TapSession(std::vector<TapEvent> events, double end_ms, std::optional<double> unit_ms = std::nullopt)
      : events_(std::move(events)), end_ms_(end_ms), unit_ms_(unit_ms) {
    for (std::size_t i = 0; i < events_.size(); ++i) {
      if (!(events_[i].onset_ms >= 0.0) || !std::isfinite(events_[i].onset_ms)) {
        throw Error(Errc::invalid_session, "onsets must be finite and non-negative");
      }
      if (i > 0 && !(events_[i].onset_ms > events_[i - 1].onset_ms)) {
        throw Error(Errc::invalid_session, "onsets must be strictly increasing");
      }
    }
    if (!events_.empty() && end_ms_ < events_.back().onset_ms) {
      throw Error(Errc::invalid_session, "end precedes last onset");
    }
    if (unit_ms_ && !(*unit_ms_ > 0.0)) throw Error(Errc::invalid_session, "unit_ms must be positive");
  }

  static TapSession from_onsets(const std::vector<double>& onsets, double end_ms,
                                std::optional<double> unit_ms = std::nullopt) {
    std::vector<TapEvent> events;
    events.reserve(onsets.size());
    for (double t : onsets) events.push_back({t});
    return TapSession(std::move(events), end_ms, unit_ms);
  }

  const std::vector<TapEvent>& events() const noexcept { return events_; }
  double end_ms() const noexcept { return end_ms_; }
  std::optional<double> unit_ms() const noexcept { return unit_ms_; }

  /// Uniform tempo change: onsets, end and unit all scale together.
  TapSession scaled(double factor) const {
    std::vector<TapEvent> events = events_;
    for (auto& e : events) e.onset_ms *= factor;
    std::optional<double> unit;
    if (unit_ms_) unit = *unit_ms_ * factor;
    return TapSession(std::move(events), end_ms_ * factor, unit);
  }

 private:
  std::vector<TapEvent> events_;
  double end_ms_ = 0.0;
  std::optional<double> unit_ms_;
};

/// Onsets at the tap slots of `bits`, end just after the last slot.
inline TapSession session_from_bits(const Bits& bits, double unit_ms, bool with_unit = true) {
  std::vector<double> onsets;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) onsets.push_back(static_cast<double>(i) * unit_ms);
  }
  return TapSession::from_onsets(onsets, static_cast<double>(bits.size()) * unit_ms,
                                 with_unit ? std::optional<double>(unit_ms) : std::nullopt);
}

/// Mean of the smallest cluster of inter-onset intervals. A sorted interval
/// joins the cluster while it stays below 1.5x the running cluster mean.
inline double estimate_unit(const TapSession& session) {
  const auto& ev = session.events();
  if (ev.size() < 2) throw Error(Errc::insufficient_events, "need at least two taps to estimate the unit");
  std::vector<double> intervals;
  for (std::size_t i = 1; i < ev.size(); ++i) intervals.push_back(ev[i].onset_ms - ev[i - 1].onset_ms);
  std::sort(intervals.begin(), intervals.end());
  double sum = intervals.front();
  std::size_t n = 1;
  for (std::size_t i = 1; i < intervals.size(); ++i) {
    if (intervals[i] >= 1.5 * (sum / static_cast<double>(n))) break;
    sum += intervals[i];
    ++n;
  }
  return sum / static_cast<double>(n);
}

inline double resolve_unit(const TapSession& session) {
  return session.unit_ms() ? *session.unit_ms() : estimate_unit(session);
}

/// Slot of each onset is onset/unit rounded half-to-even, so a tap exactly
/// half a slot after slot 0 still lands in slot 0.
inline Bits quantize(const TapSession& session, double unit_ms) {
  if (!(unit_ms > 0.0)) throw Error(Errc::invalid_argument, "unit_ms must be positive");
  const auto slot_of = [unit_ms](double ms) { return static_cast<std::size_t>(std::nearbyint(ms / unit_ms)); };
  std::vector<std::size_t> slots;
  for (const auto& e : session.events()) {
    const auto slot = slot_of(e.onset_ms);
    if (!slots.empty() && slot == slots.back()) {
      throw Error(Errc::collision, "two taps in slot " + std::to_string(slot));
    }
    slots.push_back(slot);
  }
  std::size_t length = slot_of(session.end_ms());
  if (!slots.empty()) length = std::max(length, slots.back() + 1);
  Bits out = Bits::zeros(length);
  std::string digits = out.str();
  for (auto s : slots) digits[s] = '1';
  return Bits(digits);
}

struct RelaxedOptions {
  double group_gap_ratio = 1.5;
  double letter_gap_ratio = 2.5;
};

struct SegmentedLetter {
  GroupPattern groups;
  bool space_before = false;
};

/// Classifies each inter-onset interval against the unit: tap, group gap,
/// letter gap, or (at twice the letter ratio) word gap.
inline std::vector<SegmentedLetter> segment_relaxed(const TapSession& session, const RelaxedOptions& opts = {}) {
  if (!(opts.group_gap_ratio > 1.0 && opts.group_gap_ratio < opts.letter_gap_ratio)) {
    throw Error(Errc::invalid_argument, "need 1 < group_gap_ratio < letter_gap_ratio");
  }
  const auto& ev = session.events();
  if (ev.empty()) throw Error(Errc::insufficient_events, "no taps");

  std::vector<SegmentedLetter> letters;
  if (ev.size() == 1) {
    letters.push_back({GroupPattern({1}), false});
    return letters;
  }
  const double unit = resolve_unit(session);
  const double group_gap = opts.group_gap_ratio * unit;
  const double letter_gap = opts.letter_gap_ratio * unit;
  const double word_gap = 2.0 * opts.letter_gap_ratio * unit;

  std::vector<unsigned> counts{1};
  bool space_before = false;
  for (std::size_t i = 1; i < ev.size(); ++i) {
    const double gap = ev[i].onset_ms - ev[i - 1].onset_ms;
    if (gap < group_gap) {
      ++counts.back();
    } else if (gap < letter_gap) {
      counts.push_back(1);
    } else {
      letters.push_back({GroupPattern(std::move(counts)), space_before});
      counts = {1};
      space_before = gap >= word_gap;
    }
  }
  letters.push_back({GroupPattern(std::move(counts)), space_before});
  return letters;
}

enum class DecodeMode { strict, relaxed };

inline std::string decode_groups(const std::vector<SegmentedLetter>& letters, const TapTable& table) {
  std::string text;
  for (const auto& l : letters) {
    const CodeWord cw(from_groups(l.groups));
    const auto symbol = table.symbol_for(cw.written());
    if (!symbol) throw Error(Errc::unknown_pattern, l.groups.str());
    if (l.space_before) text.push_back(' ');
    utf8_append(text, *symbol);
  }
  return text;
}

inline std::string decode_session(const TapSession& session, const TapTable& table, DecodeMode mode,
                                  const RelaxedOptions& opts = {}) {
  if (session.events().empty()) throw Error(Errc::insufficient_events, "no taps");
  if (mode == DecodeMode::strict) return decode(quantize(session, resolve_unit(session)), table);
  return decode_groups(segment_relaxed(session, opts), table);
}

/// One integer onset (ms) per line, then "END <ms>".
inline std::string export_session(const TapSession& session) {
  std::ostringstream out;
  for (const auto& e : session.events()) out << std::llround(e.onset_ms) << '\n';
  out << "END " << std::llround(session.end_ms()) << '\n';
  return out.str();
}

inline TapSession parse_session(std::string_view text, std::optional<double> unit_ms = std::nullopt) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<double> onsets;
  std::optional<double> end;
  std::size_t lineno = 0;
  const auto parse_ms = [&](const std::string& field) {
    if (field.empty() || !std::all_of(field.begin(), field.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
        field.size() > 12) {
      throw Error(Errc::invalid_session, "line " + std::to_string(lineno) + ": expected integer ms");
    }
    return static_cast<double>(std::stoll(field));
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (end) throw Error(Errc::invalid_session, "content after END line");
    if (line.rfind("END ", 0) == 0) {
      end = parse_ms(line.substr(4));
    } else {
      onsets.push_back(parse_ms(line));
    }
  }
  if (!end) throw Error(Errc::invalid_session, "missing END line");
  return TapSession::from_onsets(onsets, *end, unit_ms);
}

}  // namespace tapcode
