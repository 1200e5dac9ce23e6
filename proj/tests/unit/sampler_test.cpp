#include <gtest/gtest.h>

#include <cctype>
#include <cmath>
#include <numeric>

#include "stlcorpus/error.hpp"
#include "stlcorpus/known_words.hpp"
#include "stlcorpus/sampler.hpp"
#include "stlcorpus/surface.hpp"

namespace stlcorpus {
namespace {

TEST(Config, SerializeParseRoundTrip) {
  GeneratorConfig c;
  c.weights.temporal[5] = 7.5;
  c.identifier_length_weights = {1, 2, 3};
  c.untimed_probability = 0.125;
  c.seed = 99;
  EXPECT_EQ(GeneratorConfig::parse(c.serialize()), c);
  EXPECT_EQ(GeneratorConfig::parse(c.serialize()).hash(), c.hash());
  EXPECT_NE(GeneratorConfig{}.hash(), c.hash());
  EXPECT_EQ(GeneratorConfig{}.hash().size(), 16u);
}

TEST(Config, ParsesCommentsAndPartialFiles) {
  const auto c = GeneratorConfig::parse("# weights\n temporal.S = 8  # as counted\n\nseed=3\n");
  EXPECT_EQ(c.weights.temporal[5], 8);
  EXPECT_EQ(c.seed, 3u);
  EXPECT_EQ(c.weights.category, GeneratorConfig{}.weights.category);
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(GeneratorConfig::parse("nope = 1"), ConfigError);
  EXPECT_THROW(GeneratorConfig::parse("seed"), ConfigError);
  EXPECT_THROW(GeneratorConfig::parse("seed = -1"), ConfigError);
  EXPECT_THROW(GeneratorConfig::parse("temporal.F = abc"), ConfigError);
  EXPECT_THROW(GeneratorConfig::parse("interval.untimed_probability = 1.5"), ConfigError);
  EXPECT_THROW(GeneratorConfig::parse("interval.max = 0"), ConfigError);
  EXPECT_THROW(GeneratorConfig::parse("temporal.F = 0\ntemporal.G = 0"), ConfigError);
  EXPECT_THROW(GeneratorConfig::parse("comparison.lt = 0\ncomparison.le = 0\ncomparison.eq = 0\n"
                                      "comparison.ge = 0\ncomparison.gt = 0"),
               ConfigError);
  EXPECT_THROW(GeneratorConfig::load("/nonexistent/config.txt"), IoError);
}

TEST(Sampler, DeterministicPerDrawIndex) {
  const Sampler a(GeneratorConfig{});
  const Sampler b(GeneratorConfig{});
  for (std::uint64_t i = 0; i < 200; ++i) EXPECT_EQ(a.sample_at(i), b.sample_at(i));
  GeneratorConfig other;
  other.seed = 1;
  int differing = 0;
  for (std::uint64_t i = 0; i < 50; ++i) differing += Sampler(other).sample_at(i) == a.sample_at(i) ? 0 : 1;
  EXPECT_GT(differing, 45);
}

TEST(Sampler, IdentifiersAreWellFormedAndUnknown) {
  const Sampler s(GeneratorConfig{});
  const auto& known = KnownWordSet::builtin();
  Rng rng(8);
  std::vector<std::size_t> lengths(11, 0);
  for (int k = 0; k < 20000; ++k) {
    const std::string id = s.sample_identifier(rng);
    ASSERT_GE(id.size(), 1u);
    ASSERT_LE(id.size(), 10u);
    ASSERT_TRUE(std::isalpha(static_cast<unsigned char>(id[0]))) << id;
    ASSERT_NE(id.back(), '_') << id;
    for (char c : id) ASSERT_TRUE(std::isalnum(static_cast<unsigned char>(c)) || c == '_') << id;
    ASSERT_FALSE(known.contains(id)) << id;
    ASSERT_FALSE(is_structural_token(id)) << id;
    ++lengths[id.size()];
  }
  // Uniform length weights: every length close to 1/10.
  for (std::size_t len = 1; len <= 10; ++len) EXPECT_NEAR(lengths[len] / 20000.0, 0.1, 0.012) << len;
}

TEST(Sampler, ModeNamesAreCapitalized) {
  const Sampler s(GeneratorConfig{});
  Rng rng(9);
  for (int k = 0; k < 2000; ++k) {
    const auto m = s.sample_mode_name(rng);
    ASSERT_TRUE(std::isupper(static_cast<unsigned char>(m[0]))) << m;
  }
}

TEST(Sampler, ConstantsFollowDigitWeights) {
  const GeneratorConfig config;
  const Sampler s(config);
  Rng rng(10);
  double digits = 0;
  const int n = 40000;
  for (int k = 0; k < n; ++k) {
    const auto c = s.sample_constant(rng);
    ASSERT_TRUE(Rational::from_decimal(c).has_value()) << c;
    if (c.find('.') != std::string::npos) {
      ASSERT_NE(c.back(), '0') << c;
    }
    if (c.size() > 1 && c[1] != '.') {
      ASSERT_NE(c[0], '0') << c;
    }
    digits += static_cast<double>(std::count_if(c.begin(), c.end(), [](char ch) { return std::isdigit(ch); }));
  }
  const auto& w = config.constant_digit_weights;
  double expected = 0;
  for (std::size_t k = 0; k < w.size(); ++k) expected += static_cast<double>(k + 1) * w[k];
  expected /= std::accumulate(w.begin(), w.end(), 0.0);
  EXPECT_NEAR(expected, 2.31, 1e-12);
  EXPECT_NEAR(digits / n, expected, 0.02);
}

TEST(Sampler, IntervalsAreValidAndBounded) {
  GeneratorConfig config;
  config.interval_max = 20;
  const Sampler s(config);
  Rng rng(11);
  int untimed = 0, zero = 0;
  const int n = 20000;
  for (int k = 0; k < n; ++k) {
    const Interval iv = s.sample_interval(rng);
    ASSERT_TRUE(iv.is_valid());
    if (iv.is_untimed()) {
      ++untimed;
      continue;
    }
    ASSERT_TRUE(iv.hi.has_value());
    ASSERT_LE(*iv.hi, Rational(20));
    zero += iv.lo == Rational(0) ? 1 : 0;
  }
  EXPECT_NEAR(untimed / double(n), config.untimed_probability, 0.015);
  // lo = 0 either by the zero draw or by the uniform draw landing on 0.
  const double expected_zero = config.zero_lower_bound_probability + (1 - config.zero_lower_bound_probability) / 20;
  EXPECT_NEAR(zero / double(n - untimed), expected_zero, 0.015);
}

TEST(Sampler, RespectsSubformulaCap) {
  GeneratorConfig config;
  config.max_subformulas = 9;
  const Sampler s(config);
  Rng rng(12);
  for (int k = 0; k < 3000; ++k) ASSERT_LE(node_count(*to_node(s.sample_formula(rng))), 9u);
}

TEST(Sampler, CategorySharesFollowWeights) {
  const GeneratorConfig config;
  const Sampler s(config);
  Rng rng(13);
  std::array<int, 4> counts{};
  const int n = 20000;
  for (int k = 0; k < n; ++k) ++counts[static_cast<std::size_t>(s.sample_formula(rng).category())];
  const auto& w = config.weights.category;
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (std::size_t c = 0; c < 4; ++c) EXPECT_NEAR(counts[c] / double(n), w[c] / total, 0.012) << c;
}

// Expected operator counts checked by hand for the simplest consequences of
// the grammar: one `->` per response formula and one comparison per atom.
TEST(Expectations, HandDerivedCounts) {
  GeneratorConfig config;
  config.max_subformulas = 1000;  // no rejection
  const auto counts = expected_operator_counts(config);
  const auto& w = config.weights;
  const double total_cat = std::accumulate(w.category.begin(), w.category.end(), 0.0);
  EXPECT_NEAR(counts[index_of(Operator::Implies)], 1 - w.category[0] / total_cat, 1e-9);

  const auto shape = expected_shape(config);
  EXPECT_NEAR(shape.acceptance_probability, 1.0, 1e-12);
  const double comparisons = counts[index_of(Operator::Eq)] + counts[index_of(Operator::Gt)] +
                             counts[index_of(Operator::Ge)] + counts[index_of(Operator::Lt)] +
                             counts[index_of(Operator::Le)];
  EXPECT_NEAR(comparisons, shape.atoms_per_formula, 1e-9);
  const double total_cmp = std::accumulate(w.comparison.begin(), w.comparison.end(), 0.0);
  EXPECT_NEAR(counts[index_of(Operator::Eq)], shape.atoms_per_formula * w.comparison[2] / total_cmp, 1e-9);

  // Invariance/reachability: one G or F head over a simple phrase.
  GeneratorConfig ir = config;
  ir.weights.category = {1, 0, 0, 0};
  const auto c = expected_operator_counts(ir);
  const double fg = w.temporal[0] + w.temporal[1];
  EXPECT_NEAR(c[index_of(Operator::G)], w.temporal[1] / fg, 1e-9);
  EXPECT_NEAR(c[index_of(Operator::F)], w.temporal[0] / fg, 1e-9);
  const double total_bool = std::accumulate(w.boolean.begin(), w.boolean.end(), 0.0);
  EXPECT_NEAR(c[index_of(Operator::And)], w.boolean[1] / total_bool, 1e-9);
  EXPECT_NEAR(expected_shape(ir).atoms_per_formula, 1 + (w.boolean[1] + w.boolean[2]) / total_bool, 1e-9);
}

TEST(Expectations, MatchMonteCarlo) {
  const GeneratorConfig config;
  const Sampler s(config);
  const auto expected = expected_operator_counts(config);
  PerOperator<double> observed{};
  Rng rng(14);
  const int n = 20000;
  for (int k = 0; k < n; ++k) {
    const auto ops = count_operators(*to_node(s.sample_formula(rng)));
    for (std::size_t i = 0; i < kOperatorCount; ++i) observed[i] += static_cast<double>(ops[i]);
  }
  for (std::size_t i = 0; i < kOperatorCount; ++i) {
    // Counts are sums of small bounded integers; 5 standard errors of a
    // Poisson-like count is a loose but stable bound.
    const double mean = expected[i] * n;
    EXPECT_NEAR(observed[i], mean, 5 * std::sqrt(mean) + 5) << to_string(static_cast<Operator>(i));
  }
}

TEST(Expectations, CapLowersAcceptance) {
  GeneratorConfig config;
  config.max_subformulas = 8;
  const auto shape = expected_shape(config);
  EXPECT_GT(shape.acceptance_probability, 0.0);
  EXPECT_LT(shape.acceptance_probability, 1.0);
  EXPECT_NEAR(std::accumulate(shape.category_share.begin(), shape.category_share.end(), 0.0), 1.0, 1e-9);
}

}  // namespace
}  // namespace stlcorpus
