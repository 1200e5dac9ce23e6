// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances are pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bpe_oracle.hpp"
#include "generators.hpp"
#include "stlcorpus/corpus.hpp"
#include "stlcorpus/metrics.hpp"
#include "stlcorpus/nlgen.hpp"
#include "stlcorpus/sampler.hpp"
#include "stlcorpus/semantics.hpp"
#include "stlcorpus/stats.hpp"
#include "stlcorpus/surface.hpp"
#include "stlcorpus/tokenizer.hpp"

namespace stlcorpus {
namespace {

constexpr std::size_t kCorpusSize = 120000;

constexpr double kCategoryTolerance = 2.0;  // percentage points
constexpr double kLargeOperatorTolerance = 0.05;
constexpr double kSmallOperatorTolerance = 0.15;
constexpr double kLargeOperatorThreshold = 10000;
constexpr double kCharsPerIdentifier = 5.50, kCharsTolerance = 0.1;
constexpr double kDigitsPerConstant = 2.31, kDigitsTolerance = 0.05;
constexpr double kRoundTripSeconds = 10.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* format, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, a);
  return buf;
}

std::size_t jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

const Corpus& big_corpus() {
  static const Corpus corpus = generate_corpus(GeneratorConfig{}, kCorpusSize, jobs());
  return corpus;
}

const CorpusStats& big_stats() {
  static const CorpusStats stats = corpus_stats(big_corpus(), jobs());
  return stats;
}

Outcome metric_oracles() {
  const Tokens ref = split_words("always ( x > 0 )");
  const Tokens hyp = split_words("always ( y > 0 )");
  const double af = formula_accuracy(ref, hyp);
  const double at = template_accuracy(ref, hyp);
  std::vector<Tokens> corpus;
  for (const auto& p : generate_corpus(GeneratorConfig{}, 200)) corpus.push_back(p.stl);
  const double b = bleu(corpus, corpus);
  std::ostringstream d;
  d << "A_F=" << af << " A_T=" << at << " BLEU=" << b;
  return {af == 5.0 / 6.0 && at == 1.0 && b == 1.0, d.str()};
}

Outcome round_trip() {
  const Sampler sampler(GeneratorConfig{});
  std::size_t failures = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const NodePtr node = to_node(sampler.sample_at(i));
    if (!structurally_equal(parse(render(*node)), node)) ++failures;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {failures == 0 && seconds < kRoundTripSeconds,
          std::to_string(failures) + " failures in " + fmt("%.2f s", seconds)};
}

struct Identity {
  const char* lhs;
  const char* rhs;
};

constexpr Identity kIdentities[] = {
    {"always I ( A )", "not ( eventually I ( not ( A ) ) )"},
    {"historically I ( A )", "not ( once I ( not ( A ) ) )"},
    {"eventually I ( A )", "( true ) until I ( A )"},
    {"once I ( A )", "( true ) since I ( A )"},
    {"A -> B", "not ( A ) or B"},
};

std::string instantiate(std::string text, const std::string& interval, const std::string& a,
                        const std::string& b) {
  auto replace = [&](const std::string& from, const std::string& to) {
    for (std::size_t pos = text.find(from); pos != std::string::npos; pos = text.find(from, pos + to.size())) {
      text.replace(pos, from.size(), to);
    }
  };
  replace(" I ", interval.empty() ? " " : " " + interval + " ");
  replace("A", "( " + a + " )");
  replace("B", "( " + b + " )");
  return text;
}

Outcome semantic_identities() {
  std::size_t checks = 0, counterexamples = 0;
  auto check = [&](const std::string& l, const std::string& r, const Trace& t) {
    ++checks;
    if (evaluate_all(*parse(l), t) != evaluate_all(*parse(r), t)) ++counterexamples;
  };

  const std::vector<std::string> intervals{"", "[ 0 : 1 ]", "[ 1 : 3 ]", "[ 2 : inf ]", "[ 0 : 7 ]"};
  const std::vector<std::string> operands{"x > 0", "rise ( x > 0 )", "eventually [ 1 : 2 ] ( x < 1 )"};
  for (std::size_t length = 1; length <= 8; ++length) {
    for (std::uint64_t mask = 0; mask < (1ULL << length); ++mask) {
      const Trace t = testing::bit_trace(mask, length);
      for (const auto& id : kIdentities) {
        for (const auto& iv : intervals) {
          for (const auto& a : operands) check(instantiate(id.lhs, iv, a, "x < 1"), instantiate(id.rhs, iv, a, "x < 1"), t);
        }
      }
    }
  }

  Rng rng(12);
  const std::vector<std::string> signals{"x", "y"};
  for (int k = 0; k < 500; ++k) {
    const Trace t = testing::random_boolean_trace(rng, 12, signals);
    for (int draw = 0; draw < 4; ++draw) {
      const std::string a = render_string(*testing::random_node(rng, 2, signals));
      const std::string b = render_string(*testing::random_node(rng, 2, signals));
      const Interval iv = testing::random_interval(rng);
      std::string ivs;
      if (!iv.is_untimed()) {
        ivs = "[ " + iv.lo.to_string() + " : " + (iv.hi ? iv.hi->to_string() : "inf") + " ]";
      }
      for (const auto& id : kIdentities) check(instantiate(id.lhs, ivs, a, b), instantiate(id.rhs, ivs, a, b), t);
    }
  }
  return {counterexamples == 0, std::to_string(counterexamples) + " counterexamples in " + std::to_string(checks) + " checks"};
}

Outcome distribution() {
  const auto& stats = big_stats();
  const double n = static_cast<double>(stats.pairs);
  const double targets[4] = {30.0, 20.8, 25.4, 23.8};
  Outcome out;
  std::ostringstream d;
  d << "categories";
  for (std::size_t c = 0; c < 4; ++c) {
    const double share = 100.0 * static_cast<double>(stats.category_counts[c]) / n;
    d << ' ' << fmt("%.2f", share);
    if (std::abs(share - targets[c]) > kCategoryTolerance) out.pass = false;
  }

  const auto expected = expected_operator_counts(GeneratorConfig{});
  double worst = 0;
  std::string worst_name;
  for (std::size_t i = 0; i < kOperatorCount; ++i) {
    const double e = expected[i] * n;
    const double o = static_cast<double>(stats.operator_counts[i]);
    if (e == 0) {
      if (o != 0) out.pass = false;
      continue;
    }
    const double rel = std::abs(o - e) / e;
    const double tol = e >= kLargeOperatorThreshold ? kLargeOperatorTolerance : kSmallOperatorTolerance;
    if (rel > tol) out.pass = false;
    if (rel / tol > worst) {
      worst = rel / tol;
      worst_name = std::string(to_string(static_cast<Operator>(i)));
    }
  }
  d << "; worst operator " << worst_name << " at " << fmt("%.2f", worst) << " of tolerance";

  const auto& counts = stats.operator_counts;
  const auto g = counts[index_of(Operator::G)];
  for (std::size_t i = 0; i < kOperatorCount; ++i) {
    if (i != index_of(Operator::G) && counts[i] >= g) out.pass = false;
  }
  const auto s = counts[index_of(Operator::S)];
  for (Operator op : {Operator::F, Operator::G, Operator::U, Operator::O, Operator::H}) {
    if (counts[index_of(op)] <= s) out.pass = false;
  }
  d << "; G=" << g << " S=" << s;
  out.detail = d.str();
  return out;
}

Outcome corpus_shape() {
  const auto& stats = big_stats();
  Outcome out;
  auto require = [&](bool ok) { out.pass = out.pass && ok; };
  require(std::abs(stats.chars_per_identifier - kCharsPerIdentifier) <= kCharsTolerance);
  require(std::abs(stats.digits_per_constant - kDigitsPerConstant) <= kDigitsTolerance);
  require(stats.identifiers_per_formula.mean >= 2.2 && stats.identifiers_per_formula.mean <= 3.0);
  require(stats.subformulas_per_formula.min >= 2 && stats.subformulas_per_formula.max <= 18);
  require(stats.subformulas_per_formula.mean >= 6.0 && stats.subformulas_per_formula.mean <= 8.0);
  require(stats.words_per_sentence.mean >= 25 && stats.words_per_sentence.mean <= 55);
  require(stats.unique_effective_words <= 350);
  std::ostringstream d;
  d << "chars/id " << fmt("%.3f", stats.chars_per_identifier) << ", digits/const "
    << fmt("%.3f", stats.digits_per_constant) << ", ids/formula " << fmt("%.3f", stats.identifiers_per_formula.mean)
    << ", subformulas " << stats.subformulas_per_formula.min << ".." << stats.subformulas_per_formula.max << " mean "
    << fmt("%.2f", stats.subformulas_per_formula.mean) << ", words/sentence "
    << fmt("%.2f", stats.words_per_sentence.mean) << ", vocab " << stats.unique_effective_words
    << ", unique templates " << stats.unique_templates << " (reported)";
  out.detail = d.str();
  return out;
}

Outcome tokenizer() {
  const auto& corpus = big_corpus();
  Outcome out;
  std::ostringstream d;

  const bool examples = presplit("PWM") == "P W M" && presplit("12.5") == "1 2 . 5";
  out.pass = examples;
  d << "examples " << (examples ? "ok" : "wrong");

  std::vector<std::string> english, stl;
  english.reserve(corpus.size());
  stl.reserve(corpus.size());
  for (const auto& p : corpus) {
    english.push_back(presplit(p.english));
    stl.push_back(presplit(join(p.stl)));
  }
  const std::size_t train = 5000;
  const auto en_vocab = train_bpe({english.begin(), english.begin() + train}, 1000);
  const auto stl_vocab = train_bpe({stl.begin(), stl.begin() + train}, 200);
  std::size_t unknown = 0, mismatches = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto en = encode(english[i], en_vocab);
    const auto st = encode(stl[i], stl_vocab);
    const Decoded de = decode(en);
    unknown += de.unknown_count + decode(st).unknown_count;
    if (i < 10000 && de.text != english[i]) ++mismatches;
  }
  out.pass = out.pass && unknown == 0 && mismatches == 0;
  d << "; unk " << unknown << " over " << corpus.size() << " pairs; decode(encode) mismatches " << mismatches
    << " of 10000";

  std::vector<std::string> sample(english.begin(), english.begin() + 100);
  const std::size_t base = train_bpe(sample, 0).base_tokens().size();
  const std::size_t merges = 150;
  const auto oracle = testing::oracle_merges(sample, merges);
  const auto vocab = train_bpe(sample, base + merges);
  bool same = vocab.merges().size() == oracle.size();
  for (std::size_t i = 0; same && i < oracle.size(); ++i) same = vocab.merges()[i] == oracle[i].merge;
  out.pass = out.pass && same;
  d << "; merge order vs oracle " << (same ? "identical" : "differs") << " (" << oracle.size() << " merges)";
  out.detail = d.str();
  return out;
}

Outcome split_sizes() {
  const auto& corpus = big_corpus();
  const SplitResult base = split(corpus);
  Outcome out;
  out.pass = base.train.size() == 97200 && base.val.size() == 10800 && base.test.size() == 12000;
  auto ids = [](const Corpus& part) {
    std::vector<std::uint64_t> v;
    for (const auto& p : part) v.push_back(p.id);
    return v;
  };
  const auto test_ids = ids(base.test);
  bool invariant = true, resampled = false;
  for (std::uint64_t seed : {1, 2, 3}) {
    SplitSpec spec;
    spec.trainval_seed = seed;
    const SplitResult r = split(corpus, spec);
    invariant = invariant && ids(r.test) == test_ids;
    resampled = resampled || ids(r.val) != ids(base.val);
  }
  out.pass = out.pass && invariant && resampled;
  std::ostringstream d;
  d << base.train.size() << '/' << base.val.size() << '/' << base.test.size() << "; test ids "
    << (invariant ? "invariant" : "changed") << " under 3 train/val reseeds";
  out.detail = d.str();
  return out;
}

Outcome faithfulness() {
  const auto& corpus = big_corpus();
  std::size_t failures = 0;
  for (std::size_t i = 0; i < 10000; ++i) {
    const auto formula = match_fragment(*parse(corpus[i].stl));
    if (!formula || !is_faithful(*formula, corpus[i].english)) ++failures;
  }
  return {failures == 0, std::to_string(failures) + " failures in 10000 pairs"};
}

}  // namespace
}  // namespace stlcorpus

int main() {
  using namespace stlcorpus;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"metric oracles", metric_oracles},
      {"round trip", round_trip},
      {"semantic identities", semantic_identities},
      {"distribution at 120k", distribution},
      {"corpus shape", corpus_shape},
      {"tokenizer", tokenizer},
      {"split", split_sizes},
      {"faithfulness", faithfulness},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
