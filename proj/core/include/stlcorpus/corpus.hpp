#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stlcorpus/fragment.hpp"
#include "stlcorpus/lexicon.hpp"
#include "stlcorpus/nlgen.hpp"
#include "stlcorpus/sampler.hpp"
#include "stlcorpus/surface.hpp"

namespace stlcorpus {

struct PairMeta {
  std::string config_hash;
  std::uint64_t draw_index = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const PairMeta&, const PairMeta&) = default;
};

struct CorpusPair {
  std::uint64_t id = 0;
  Tokens stl;
  std::string english;
  Tokens templ;
  Category category = Category::InvarianceReachability;
  PairMeta meta;

  friend bool operator==(const CorpusPair&, const CorpusPair&) = default;
};

using Corpus = std::vector<CorpusPair>;

/// The pair for one draw index: a formula and one of its translations, both
/// drawn from the stream (config.seed, draw_index).
CorpusPair generate_pair(const Sampler& sampler, const Translator& translator, std::uint64_t draw_index);

/// Pairs with ids 0..n-1. Work is split across `jobs` threads; the result
/// does not depend on `jobs`.
Corpus generate_corpus(const GeneratorConfig& config, std::size_t n, std::size_t jobs = 1,
                       const Lexicon& lexicon = Lexicon::builtin());

/// Throws CorpusError unless the formula parses, lies in the fragment under
/// the recorded category, and matches the recorded template.
void validate_pair(const CorpusPair& pair);

/// One JSON object per line:
/// {id, stl, english, template, category, meta{configHash, drawIndex, seed}}.
std::string to_json_line(const CorpusPair& pair);
/// Parses and validates one record. Throws CorpusError.
CorpusPair from_json_line(std::string_view line);

void write_corpus(std::ostream& out, const Corpus& corpus);
void write_corpus(const std::string& path, const Corpus& corpus);
/// Blank lines are skipped; errors name the 1-based line.
Corpus read_corpus(std::istream& in);
Corpus read_corpus(const std::string& path);

struct SplitSpec {
  double test_fraction = 0.10;
  /// Share of the non-test pairs that goes to validation.
  double val_fraction = 0.10;
  /// Fixes the test set.
  std::uint64_t split_seed = 0;
  /// Reshuffles train/validation only.
  std::uint64_t trainval_seed = 0;

  void validate() const;
};

struct SplitResult {
  Corpus train;
  Corpus val;
  Corpus test;
};

/// |test| = round(test_fraction * n), chosen by a hash of (id, split_seed);
/// |train| = round((1 - val_fraction) * (n - |test|)); the rest is validation.
/// Each part keeps corpus order. Throws CorpusError when n < 10.
SplitResult split(const Corpus& corpus, const SplitSpec& spec = {});

}  // namespace stlcorpus
