#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tapcode/analysis.hpp"
#include "tapcode/schemes.hpp"

using namespace tapcode;

namespace {

std::string error_name(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return std::string(e.name());
  }
  return "no error";
}

double huffman_average(const Weights& w) {
  const auto lengths = huffman_lengths(w);
  double avg = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) avg += w[i].weight * static_cast<double>(lengths[i].second);
  return avg;
}

// Oracle: the Huffman average equals the sum of all merged weights.
double merge_sum_oracle(std::vector<double> w) {
  double total = 0.0;
  while (w.size() > 1) {
    std::sort(w.begin(), w.end(), std::greater<>());
    const double merged = w[w.size() - 1] + w[w.size() - 2];
    w.resize(w.size() - 2);
    w.push_back(merged);
    total += merged;
  }
  return total;
}

Weights uniform(std::u32string_view symbols) {
  Weights w;
  for (Symbol s : symbols) w.push_back({s, 1.0 / static_cast<double>(symbols.size())});
  return w;
}

double weighted(const Weights& w, const PolybiusSquare& sq) {
  return weighted_average(w, [&](Symbol s) { return polybius_cost(sq, s); });
}

}  // namespace

TEST(Morse, BinaryCost) {
  EXPECT_EQ(morse_binary_cost(U'e'), 4u);
  EXPECT_EQ(morse_binary_cost(U's'), 8u);
  EXPECT_EQ(morse_binary_cost(U'o'), 14u);
  EXPECT_EQ(morse_binary_cost(U't'), 6u);
  EXPECT_EQ(morse_binary_cost(U'ä'), morse_binary_cost(U'a') + morse_binary_cost(U'e'));
  EXPECT_EQ(morse_binary_cost(U'ß'), 2 * morse_binary_cost(U's'));
  EXPECT_EQ(morse_binary_cost(U' '), 4u);
  EXPECT_EQ(error_name([] { morse_binary_cost(U'?'); }), "unknown-symbol");
}

TEST(Morse, BinaryCostMatchesHandSumForEveryLetter) {
  for (Symbol c = U'a'; c <= U'z'; ++c) {
    const std::string el = morse_table().elements(c);
    std::size_t expected = 3;  // letter gap
    for (std::size_t i = 0; i < el.size(); ++i) expected += (el[i] == '.' ? 1 : 3) + (i + 1 < el.size() ? 1 : 0);
    EXPECT_EQ(morse_binary_cost(c), expected) << static_cast<char>(c);
  }
}

TEST(Morse, TernaryCost) {
  EXPECT_EQ(morse_ternary_cost(U'e'), 2u);
  EXPECT_EQ(morse_ternary_cost(U'q'), 5u);
  EXPECT_EQ(morse_ternary_cost(U't'), 2u);
  EXPECT_EQ(morse_ternary_cost(U'ö'), morse_ternary_cost(U'o') + morse_ternary_cost(U'e'));
  EXPECT_EQ(morse_ternary_cost(U' '), 1u);
}

TEST(Morse, TableSpotChecks) {
  EXPECT_EQ(morse_table().elements(U'q'), "--.-");
  EXPECT_EQ(morse_table().elements(U'ü'), "..- .");
  EXPECT_TRUE(morse_table().contains(U'ß'));
  EXPECT_FALSE(morse_table().contains(U'.'));
}

TEST(Polybius, CellCosts) {
  EXPECT_EQ(polybius_cell_cost({1, 1}), 5u);
  EXPECT_EQ(polybius_cell_cost({1, 5}), 9u);
  EXPECT_EQ(polybius_cell_cost({5, 5}), 13u);
}

TEST(Polybius, OriginalSquare) {
  const auto& sq = original_polybius();
  EXPECT_EQ(sq.cell(U'a'), (Cell{1, 1}));
  EXPECT_EQ(sq.cell(U'e'), (Cell{1, 5}));
  EXPECT_EQ(sq.cell(U'j'), sq.cell(U'i'));
  EXPECT_EQ(sq.cell(U'k'), (Cell{2, 5}));
  EXPECT_EQ(sq.cell(U'z'), (Cell{5, 5}));
  EXPECT_EQ(polybius_cost(sq, U'z'), 13u);
  EXPECT_EQ(polybius_cost(sq, U'ü'), polybius_cost(sq, U'u') + polybius_cost(sq, U'e'));
  EXPECT_EQ(polybius_cost(sq, U' '), 2u);
  EXPECT_EQ(error_name([&] { polybius_cost(sq, U'?'); }), "unknown-symbol");
}

TEST(Polybius, OptimizedLayout) {
  const Weights w{{U'x', 0.1}, {U'e', 0.5}, {U'n', 0.3}, {U' ', 0.1}};
  const auto sq = build_optimized_polybius(w);
  EXPECT_EQ(sq.cell(U'e'), (Cell{1, 1}));
  EXPECT_EQ(sq.cell(U'n'), (Cell{1, 2}));
  EXPECT_EQ(sq.cell(U'x'), (Cell{2, 1}));
  EXPECT_EQ(sq.grid().size(), 26u);
  for (Symbol c = U'a'; c <= U'z'; ++c) EXPECT_TRUE(sq.contains(c));
}

TEST(Polybius, OptimizedSpreadsUmlautWeight) {
  // ä alone outweighs everything else, so both a and e get the cheapest cells.
  const Weights w{{U'ä', 0.6}, {U't', 0.4}};
  const auto sq = build_optimized_polybius(w);
  const std::vector<Cell> top{{1, 1}, {1, 2}};
  EXPECT_NE(std::find(top.begin(), top.end(), sq.cell(U'a')), top.end());
  EXPECT_NE(std::find(top.begin(), top.end(), sq.cell(U'e')), top.end());
  EXPECT_EQ(sq.cell(U't'), (Cell{2, 1}));
}

TEST(Polybius, OptimizedNoWorseOnRealCorpora) {
  for (const char* name : {"corpus_de.txt", "corpus_en.txt"}) {
    const auto freqs = ingest_corpus(oracle::read_file(std::string(TAPCODE_DATA_DIR) + "/" + name));
    const Weights w = freqs.weights();
    EXPECT_LE(weighted(w, build_optimized_polybius(w)), weighted(w, original_polybius())) << name;
  }
}

TEST(Polybius, OptimizedNoWorseWhenJIsUnused) {
  // With j absent the classic square is just one injective placement, so
  // the diagonal fill can only match or beat it.
  std::mt19937 rng(23);
  std::exponential_distribution<double> draw(1.0);
  for (int iter = 0; iter < 500; ++iter) {
    Weights w;
    double total = 0.0;
    for (Symbol s : kAnalysisAlphabet) {
      if (s == U'j') continue;
      const double x = draw(rng) * (iter % 2 ? 1.0 : std::pow(draw(rng), 3.0));
      w.push_back({s, x});
      total += x;
    }
    for (auto& sw : w) sw.weight /= total;
    ASSERT_LE(weighted(w, build_optimized_polybius(w)), weighted(w, original_polybius()) + 1e-12) << iter;
  }
}

TEST(Polybius, SharedIJCellCanBeatTheDiagonalFill) {
  // The classic square fits 16 letters (i and j share a cell) into cells of
  // cost <= 9; injective placement fits only 15, so uniform weight on exactly
  // those 16 letters favors the classic square.
  const std::u32string cheap = U"abcdefghijlmnqrv";
  for (Symbol s : cheap) EXPECT_LE(polybius_cost(original_polybius(), s), 9u) << static_cast<char>(s);
  const Weights w = uniform(cheap);
  const double original = weighted(w, original_polybius());
  const double optimized = weighted(w, build_optimized_polybius(w));
  EXPECT_NEAR(original, (1 * 5 + 2 * 6 + 3 * 7 + 4 * 8 + 6 * 9) / 16.0, 1e-12);
  EXPECT_NEAR(optimized, (1 * 5 + 2 * 6 + 3 * 7 + 4 * 8 + 5 * 9 + 1 * 10) / 16.0, 1e-12);
  EXPECT_GT(optimized, original);
}

TEST(Huffman, Examples) {
  const auto three = huffman_lengths({{U'a', 0.5}, {U'b', 0.25}, {U'c', 0.25}});
  EXPECT_EQ(three[0].second, 1u);
  EXPECT_EQ(three[1].second, 2u);
  EXPECT_EQ(three[2].second, 2u);
  EXPECT_DOUBLE_EQ(huffman_average({{U'a', 0.5}, {U'b', 0.25}, {U'c', 0.25}}), 1.5);

  EXPECT_DOUBLE_EQ(huffman_average(uniform(U"abcd")), 2.0);
  const double avg31 = huffman_average(uniform(kAnalysisAlphabet));
  EXPECT_GE(avg31, std::log2(31.0));
  EXPECT_LE(avg31, 5.0);
}

TEST(Huffman, Errors) {
  EXPECT_EQ(error_name([] { huffman_lengths({{U'a', 1.0}}); }), "degenerate-alphabet");
  EXPECT_EQ(error_name([] { huffman_lengths({}); }), "degenerate-alphabet");
  EXPECT_EQ(error_name([] { huffman_lengths({{U'a', 1.0}, {U'b', 0.0}}); }), "invalid-argument");
}

TEST(Huffman, KraftEqualityAndMergeOracle) {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> draw(0.001, 1.0);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, kAnalysisAlphabet.size())(rng);
    Weights w;
    std::vector<double> raw;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = draw(rng);
      w.push_back({kAnalysisAlphabet[i], x});
      raw.push_back(x);
    }
    double kraft = 0.0;
    for (const auto& [s, len] : huffman_lengths(w)) kraft += std::ldexp(1.0, -static_cast<int>(len));
    ASSERT_NEAR(kraft, 1.0, 1e-12);
    ASSERT_NEAR(huffman_average(w), merge_sum_oracle(raw), 1e-9);
  }
}

TEST(Huffman, DeterministicTies) {
  const auto a = huffman_lengths(uniform(U"abcde"));
  const auto b = huffman_lengths(uniform(U"abcde"));
  EXPECT_EQ(a, b);
}

TEST(FixedWidth, Examples) {
  EXPECT_EQ(fixed_width_cost(31), 5u);
  EXPECT_EQ(fixed_width_cost(32), 5u);
  EXPECT_EQ(fixed_width_cost(33), 6u);
  EXPECT_EQ(fixed_width_cost(2), 1u);
  EXPECT_EQ(fixed_width_cost(1), 1u);
  EXPECT_EQ(error_name([] { fixed_width_cost(0); }), "invalid-argument");
}

TEST(TapCost, Examples) {
  const auto& t = canonical_german_table();
  EXPECT_EQ(tap_cost(t, U'e'), 4u);
  EXPECT_EQ(tap_cost(t, U'z'), 8u);
  EXPECT_EQ(tap_cost(t, U'p'), 10u);
  EXPECT_EQ(tap_cost(t, U' '), 2u);
  EXPECT_EQ(error_name([&] { tap_cost(t, U'7'); }), "unknown-symbol");
}

TEST(TapCost, EvenWithinFourToTen) {
  std::size_t lo = 100, hi = 0;
  for (const auto& e : canonical_german_table().entries()) {
    const auto c = tap_cost(canonical_german_table(), e.symbol);
    EXPECT_EQ(c % 2, 0u);
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  EXPECT_EQ(lo, 4u);
  EXPECT_EQ(hi, 10u);
}

TEST(CostExport, Format) {
  const std::string text = export_costs(morse_cost_table(U"eq "));
  EXPECT_EQ(text, "e\t4\t2\nq\t16\t5\nspace\t4\t1\n");
  EXPECT_EQ(export_costs({{U'ä', 6, std::nullopt}}), "ä\t6\n");
}
