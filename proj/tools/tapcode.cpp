// tapcode: command-line front end.
//
//   tapcode table   [--format bits|groups] [--table FILE]
//   tapcode encode  TEXT [--digit-mode] [--grouped] [--table FILE]
//   tapcode decode  BITS | --session FILE [--mode strict|relaxed] [--unit MS]
//   tapcode groups  BITS|COUNTS [--from-groups]
//   tapcode analyze FILE | --corpus FILE [--json]
//   tapcode derive  [--max-elements N]
//   tapcode estimate [--bits B | --corpus FILE] [--unit-seconds S]
//   tapcode serve   [--port N] [--letter-gap-ratio R] [--group-gap-ratio R]
//
// Exit status: 0 ok, 1 operation error (error name on stderr), 2 usage error.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tapcode/server.hpp"
#include "tapcode/tapcode.hpp"

namespace {

using namespace tapcode;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::invalid_argument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const TapTable& load_table(const std::string& path, std::optional<TapTable>& storage) {
  if (path.empty()) return canonical_german_table();
  storage.emplace(parse_table(read_file(path)));
  return *storage;
}

int cmd_table(const TapTable& table, const std::string& format) {
  if (format.empty()) {
    std::cout << export_table(table);
    return 0;
  }
  for (const auto& e : table.entries()) {
    std::cout << utf8_encode(e.symbol) << '\t'
              << (format == "bits" ? e.code.written().str() : to_groups(e.code.payload()).str()) << '\n';
  }
  return 0;
}

int cmd_groups(const std::string& value, bool force_groups) {
  const bool looks_binary = value.find_first_not_of("01") == std::string::npos;
  if (looks_binary && !force_groups) {
    // Accepts a payload or a padded written form.
    Bits bits(value);
    const CodeWord cw = Payload::is_valid(bits) ? CodeWord(Payload(bits)) : CodeWord::from_written(bits);
    std::cout << to_groups(cw.payload()).str() << '\n';
  } else {
    const Payload p = from_groups(GroupPattern::parse(value));
    std::cout << p.bits().str() << '\t' << CodeWord(p).written().str() << '\n';
  }
  return 0;
}

int cmd_derive(std::size_t max_elements) {
  const auto derived = derive_from_morse(max_elements);
  std::set<Bits> enumerated;
  for (const auto& p : enumerate_payloads(max_elements)) enumerated.insert(CodeWord(p).written());

  bool ok = true;
  std::cout << "written_length\tfrom_morse\tenumerated\tequal\n";
  for (std::size_t len = 2; len <= max_elements; len += 2) {
    std::set<Bits> a, b;
    for (const auto& w : derived) {
      if (w.size() == len) a.insert(w);
    }
    for (const auto& w : enumerated) {
      if (w.size() == len) b.insert(w);
    }
    ok = ok && a == b;
    std::cout << len << '\t' << a.size() << '\t' << b.size() << '\t' << (a == b ? "yes" : "no") << '\n';
  }
  std::cout << "\ncollisions (kept <- dropped):\n";
  for (const auto& c : morse_collisions(std::min<std::size_t>(max_elements, 3))) {
    for (const auto& m : c.members) {
      if (m.bits == c.kept.bits) continue;
      std::cout << c.kept.morse << " " << c.kept.bits.str() << "\t<- " << m.morse << " " << m.bits.str() << '\n';
    }
  }
  return ok ? 0 : 1;
}

int run(int argc, char** argv) {
  CLI::App app{"Tap code toolkit: construct, encode, decode and analyze the binary Tap code"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string table_path;
  app.add_option("--table", table_path, "Custom table file (symbol<TAB>written[<TAB>groups])")->check(CLI::ExistingFile);

  std::string format;
  auto* table_cmd = app.add_subcommand("table", "Print the code table");
  table_cmd->add_option("--format", format, "bits or groups (default: both)")->check(CLI::IsMember({"bits", "groups"}));

  std::string text;
  bool digit_mode = false;
  bool grouped = false;
  auto* encode_cmd = app.add_subcommand("encode", "Encode text to a bitstream");
  encode_cmd->add_option("text", text, "Text to encode")->required();
  encode_cmd->add_flag("--digit-mode", digit_mode, "Map digits 1-6,7,8,9,0 to e,n,r,a,o,z,s,t,h,i");
  encode_cmd->add_flag("--grouped", grouped, "Separate every two slots with a space");

  std::string bits_arg;
  std::string session_path;
  std::string mode = "strict";
  std::optional<double> unit_ms;
  double group_ratio = RelaxedOptions{}.group_gap_ratio;
  double letter_ratio = RelaxedOptions{}.letter_gap_ratio;
  auto* decode_cmd = app.add_subcommand("decode", "Decode a bitstream or a tap session file");
  auto* bits_opt = decode_cmd->add_option("bits", bits_arg, "Bitstream of 0/1 (spaces ignored)");
  auto* session_opt = decode_cmd->add_option("--session", session_path, "Session file (onset ms per line, END <ms>)")
                          ->check(CLI::ExistingFile);
  bits_opt->excludes(session_opt);
  decode_cmd->add_option("--mode", mode, "strict or relaxed")->check(CLI::IsMember({"strict", "relaxed"}));
  decode_cmd->add_option("--unit", unit_ms, "Sixteenth duration in ms (estimated when omitted)");
  decode_cmd->add_option("--group-gap-ratio", group_ratio);
  decode_cmd->add_option("--letter-gap-ratio", letter_ratio);

  std::string groups_value;
  bool from_groups_flag = false;
  auto* groups_cmd = app.add_subcommand("groups", "Convert between bit and group notation");
  groups_cmd->add_option("value", groups_value, "Bits (e.g. 101101) or counts (e.g. 1,2,1)")->required();
  groups_cmd->add_flag("--from-groups", from_groups_flag, "Treat the value as counts even if it is all 0/1");

  std::string corpus;
  bool json = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "Efficiency report for a corpus");
  auto* file_opt = analyze_cmd->add_option("file", corpus, "UTF-8 corpus")->check(CLI::ExistingFile);
  analyze_cmd->add_option("--corpus", corpus, "UTF-8 corpus")->check(CLI::ExistingFile)->excludes(file_opt);
  analyze_cmd->add_flag("--json", json, "Line-delimited JSON output");

  std::size_t max_elements = 8;
  auto* derive_cmd = app.add_subcommand("derive", "Verify the Morse-collision derivation");
  derive_cmd->add_option("--max-elements", max_elements)->check(CLI::Range(1, 20));

  std::optional<double> bits_per_char;
  std::string estimate_corpus;
  double unit_seconds = 1.0 / 6.0;
  auto* estimate_cmd = app.add_subcommand("estimate", "Speed estimate from bits per character and tempo");
  auto* bpc_opt = estimate_cmd->add_option("--bits", bits_per_char, "Average slots per character");
  estimate_cmd->add_option("--corpus", estimate_corpus, "Take the Tap average from this corpus")
      ->check(CLI::ExistingFile)
      ->excludes(bpc_opt);
  estimate_cmd->add_option("--unit-seconds", unit_seconds, "Duration of one slot in seconds");

  int port = 7373;
  auto* serve_cmd = app.add_subcommand("serve", "Run the line-protocol session endpoint on 127.0.0.1");
  serve_cmd->add_option("--port", port)->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--group-gap-ratio", group_ratio);
  serve_cmd->add_option("--letter-gap-ratio", letter_ratio);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    std::optional<TapTable> custom;
    const TapTable& table = load_table(table_path, custom);
    const RelaxedOptions relaxed{group_ratio, letter_ratio};

    if (*table_cmd) return cmd_table(table, format);
    if (*encode_cmd) {
      const Bits out = encode(text, table, EncodeOptions{digit_mode});
      std::cout << (grouped ? render_grouped(out) : out.str()) << '\n';
      return 0;
    }
    if (*decode_cmd) {
      if (!session_path.empty()) {
        const TapSession session = parse_session(read_file(session_path), unit_ms);
        std::cout << decode_session(session, table, mode == "relaxed" ? DecodeMode::relaxed : DecodeMode::strict, relaxed)
                  << '\n';
        return 0;
      }
      std::erase(bits_arg, ' ');
      std::cout << decode(Bits(bits_arg), table) << '\n';
      return 0;
    }
    if (*groups_cmd) return cmd_groups(groups_value, from_groups_flag);
    if (*analyze_cmd) {
      if (corpus.empty()) {
        std::cerr << "analyze: a corpus file is required\n";
        return 2;
      }
      const auto report = efficiency_report(ingest_corpus(read_file(corpus)), table);
      std::cout << (json ? format_report_jsonl(report) : format_report(report));
      return 0;
    }
    if (*derive_cmd) return cmd_derive(max_elements);
    if (*estimate_cmd) {
      double bpc = bits_per_char.value_or(6.0);
      if (!estimate_corpus.empty()) bpc = efficiency_report(ingest_corpus(read_file(estimate_corpus)), table).at("tap");
      const Speed s = speed_estimate(bpc, unit_seconds);
      std::printf("bits_per_char\t%.3f\nunit_seconds\t%.4f\nchars_per_second\t%.3f\nwords_per_minute\t%.2f\n", bpc,
                  unit_seconds, s.chars_per_second, s.words_per_minute);
      return 0;
    }
    if (*serve_cmd) {
      LineServer server(static_cast<std::uint16_t>(port), table, relaxed);
      std::cerr << "listening on 127.0.0.1:" << server.port() << std::endl;
      server.run();
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << e.name() << '\n' << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error\n" << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
