#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>

#include <json.hpp>

#include "oracles.hpp"
#include "tapcode/analysis.hpp"

using namespace tapcode;

namespace {

std::string corpus(const char* name) { return oracle::read_file(std::string(TAPCODE_DATA_DIR) + "/" + name); }

std::string error_name(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return std::string(e.name());
  }
  return "no error";
}

}  // namespace

TEST(Ingest, MixedCaseAndPunctuation) {
  const auto f = ingest_corpus("Ab  cd.");
  EXPECT_EQ(f.total(), 5u);
  EXPECT_EQ(f.count(U'a'), 1u);
  EXPECT_EQ(f.count(U'b'), 1u);
  EXPECT_EQ(f.count(U'c'), 1u);
  EXPECT_EQ(f.count(U'd'), 1u);
  EXPECT_EQ(f.count(U' '), 1u);
  EXPECT_DOUBLE_EQ(f.probability(U' '), 0.2);
  EXPECT_EQ(f.count(U'z'), 0u);
}

TEST(Ingest, Umlauts) {
  const auto f = ingest_corpus("ÄÖÜ");
  EXPECT_EQ(f.total(), 3u);
  EXPECT_EQ(f.count(U'ä'), 1u);
  EXPECT_EQ(f.count(U'ö'), 1u);
  EXPECT_EQ(f.count(U'ü'), 1u);
  EXPECT_EQ(ingest_corpus("Straße").count(U'ß'), 1u);
}

TEST(Ingest, EmptyCorpus) {
  EXPECT_EQ(error_name([] { ingest_corpus("123"); }), "empty-corpus");
  EXPECT_EQ(error_name([] { ingest_corpus(""); }), "empty-corpus");
  EXPECT_EQ(error_name([] { ingest_corpus("  \n\t "); }), "empty-corpus");
}

TEST(Ingest, WhitespaceRunsCollapseBetweenWords) {
  const auto f = ingest_corpus("  ab \n\t cd , ef  ");
  EXPECT_EQ(f.count(U' '), 2u);
  EXPECT_EQ(f.total(), 8u);
  // Punctuation between spaces does not create a second space.
  EXPECT_EQ(ingest_corpus("a - b").count(U' '), 1u);
}

TEST(Ingest, ProbabilitiesSumToOne) {
  const auto f = ingest_corpus(corpus("corpus_de.txt"));
  double sum = 0.0;
  for (Symbol s : kAnalysisAlphabet) sum += f.probability(s);
  EXPECT_NEAR(sum, 1.0, 1e-9);
  EXPECT_EQ(f.counts().size(), 31u);
  EXPECT_EQ(error_name([&] { f.count(U'.'); }), "unknown-symbol");
}

TEST(TernaryToBinary, Examples) {
  EXPECT_NEAR(ternary_to_binary(4.13), 6.546, 0.001);
  EXPECT_NEAR(ternary_to_binary(1.0), 1.585, 0.001);
  EXPECT_NEAR(ternary_to_binary(0.5), 0.792, 0.001);
  EXPECT_EQ(error_name([] { ternary_to_binary(0.0); }), "invalid-argument");
}

TEST(SpeedEstimate, Examples) {
  auto s = speed_estimate(6.0, 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(s.chars_per_second, 1.0);
  EXPECT_DOUBLE_EQ(s.words_per_minute, 10.0);
  s = speed_estimate(6.0, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.chars_per_second, 0.5);
  EXPECT_DOUBLE_EQ(s.words_per_minute, 5.0);
  s = speed_estimate(4.0, 0.25);
  EXPECT_DOUBLE_EQ(s.chars_per_second, 1.0);
  EXPECT_DOUBLE_EQ(s.words_per_minute, 10.0);
  EXPECT_EQ(error_name([] { speed_estimate(0.0, 1.0); }), "invalid-argument");
  EXPECT_EQ(error_name([] { speed_estimate(6.0, -1.0); }), "invalid-argument");
}

TEST(Report, OrderingOnBothCorpora) {
  for (const char* name : {"corpus_de.txt", "corpus_en.txt"}) {
    const auto r = efficiency_report(ingest_corpus(corpus(name)));
    SCOPED_TRACE(name);
    EXPECT_LT(r.at("huffman"), r.at("fixed_width"));
    EXPECT_EQ(r.at("fixed_width"), 5.0);
    EXPECT_LT(r.at("fixed_width"), r.at("tap"));
    EXPECT_LT(r.at("tap"), r.at("polybius_optimized"));
    EXPECT_LE(r.at("polybius_optimized"), r.at("polybius_original"));
    EXPECT_LT(r.at("polybius_original"), r.at("morse_binary"));
    EXPECT_LT(r.morse_ternary, r.at("fixed_width"));
    for (const auto& f : r.binary) EXPECT_GT(f.avg_bits, 0.0) << f.scheme;
    for (const auto& f : r.binary) EXPECT_LE(r.at("huffman"), f.avg_bits) << f.scheme;
    EXPECT_NEAR(r.morse_ternary_as_bits, ternary_to_binary(r.morse_ternary), 1e-12);
  }
}

TEST(Report, TapAverageMatchesDirectEncoding) {
  // Encoding the ingested text and counting slots gives the same average.
  const std::string text = "der wolf und das rotkäppchen gingen in den wald";
  const auto r = efficiency_report(ingest_corpus(text));
  const double slots = static_cast<double>(encode(text, canonical_german_table()).size());
  EXPECT_NEAR(r.at("tap"), slots / static_cast<double>(utf8_decode(text).size()), 1e-12);
}

TEST(Report, ScaleInvariance) {
  const auto freqs = ingest_corpus(corpus("corpus_de.txt"));
  auto doubled = freqs.counts();
  for (auto& c : doubled) c *= 2;
  const auto once = efficiency_report(freqs);
  const auto twice = efficiency_report(FrequencyTable(doubled));
  for (std::size_t i = 0; i < once.binary.size(); ++i) {
    EXPECT_NEAR(once.binary[i].avg_bits, twice.binary[i].avg_bits, 1e-9) << once.binary[i].scheme;
  }
  EXPECT_NEAR(once.morse_ternary, twice.morse_ternary, 1e-9);
}

TEST(Report, LanguageSwapIsSmall) {
  const auto de = efficiency_report(ingest_corpus(corpus("corpus_de.txt")));
  const auto en = efficiency_report(ingest_corpus(corpus("corpus_en.txt")));
  for (std::size_t i = 0; i < de.binary.size(); ++i) {
    EXPECT_LT(std::abs(de.binary[i].avg_bits - en.binary[i].avg_bits), 0.5) << de.binary[i].scheme;
  }
  EXPECT_LT(std::abs(de.morse_ternary - en.morse_ternary), 0.5);
}

TEST(Report, DominantSymbol) {
  std::vector<std::uint64_t> counts(kAnalysisAlphabet.size(), 0);
  counts[kAnalysisAlphabet.find(U'e')] = 1'000'000;
  counts[kAnalysisAlphabet.find(U' ')] = 1;
  const auto r = efficiency_report(FrequencyTable(counts));
  EXPECT_NEAR(r.at("tap"), 4.0, 1e-5);
  counts[kAnalysisAlphabet.find(U' ')] = 0;
  const auto only_e = efficiency_report(FrequencyTable(counts));
  EXPECT_DOUBLE_EQ(only_e.at("tap"), 4.0);
  EXPECT_DOUBLE_EQ(only_e.at("huffman"), 1.0);
}

TEST(Report, Formats) {
  const auto r = efficiency_report(ingest_corpus(corpus("corpus_de.txt")));
  const std::string text = format_report(r);
  std::istringstream lines(text);
  std::string line;
  std::vector<std::string> names;
  while (std::getline(lines, line)) names.push_back(line.substr(0, line.find('\t')));
  EXPECT_EQ(names, (std::vector<std::string>{"huffman", "fixed_width", "tap", "polybius_optimized",
                                              "polybius_original", "morse_binary", "morse_ternary"}));
  EXPECT_NE(text.find("fixed_width\t5.000\n"), std::string::npos);

  std::istringstream jsonl(format_report_jsonl(r));
  std::size_t n = 0;
  while (std::getline(jsonl, line)) {
    const auto j = nlohmann::json::parse(line);
    if (j["scheme"] == "morse_ternary") {
      EXPECT_NEAR(j["avg_symbols"].get<double>(), r.morse_ternary, 1e-12);
      EXPECT_NEAR(j["avg_bits_equivalent"].get<double>(), r.morse_ternary_as_bits, 1e-12);
    } else {
      EXPECT_NEAR(j["avg_bits"].get<double>(), r.at(j["scheme"].get<std::string>()), 1e-12);
    }
    ++n;
  }
  EXPECT_EQ(n, 7u);
  EXPECT_EQ(error_name([&] { r.at("nope"); }), "invalid-argument");
}
