#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>

#include "stlcorpus/corpus.hpp"
#include "stlcorpus/operators.hpp"

namespace stlcorpus {

struct Summary {
  double min = 0;
  double max = 0;
  double mean = 0;
  double median = 0;
};

/// Summary of a histogram mapping value -> frequency.
Summary summarize(const std::map<std::uint64_t, std::uint64_t>& histogram);

struct CorpusStats {
  std::size_t pairs = 0;
  std::size_t unique_formulas = 0;
  std::size_t unique_templates = 0;
  std::array<std::size_t, 4> category_counts{};

  /// Distinct subtrees per formula.
  Summary subformulas_per_formula;
  PerOperator<std::uint64_t> operator_counts{};
  /// Operator occurrences per formula.
  Summary operators_per_formula;
  /// For each of the operator kinds, the number of formulas containing it.
  Summary formulas_per_operator;

  /// Signal occurrences per formula.
  Summary identifiers_per_formula;
  double chars_per_identifier = 0;
  /// Numeric comparison constants only (not interval bounds).
  double digits_per_constant = 0;

  std::size_t unique_sentences = 0;
  /// Distinct lowercased words without punctuation, identifiers and numerals.
  std::size_t unique_effective_words = 0;
  Summary words_per_sentence;
  /// For each effective word, the number of sentences using it.
  Summary sentences_per_word;
};

/// The words of `sentence` that count toward the vocabulary: lowercased,
/// trailing punctuation removed, skipping numerals and the formula's
/// identifiers (signals and mode names).
std::vector<std::string> effective_words(const CorpusPair& pair);

/// Throws CorpusError on an empty corpus. Result does not depend on corpus
/// order or `jobs`.
CorpusStats corpus_stats(const Corpus& corpus, std::size_t jobs = 1);

std::string stats_table(const CorpusStats& stats);
std::string stats_json(const CorpusStats& stats);

}  // namespace stlcorpus
