#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stlcorpus/surface.hpp"

namespace stlcorpus {

/// Matching positions over the longer length. Throws MetricError on an
/// empty reference.
double formula_accuracy(const Tokens& ref, const Tokens& hyp);

/// formula_accuracy of the two templates (see template_tokens).
double template_accuracy(const Tokens& ref, const Tokens& hyp);

/// Corpus BLEU with clipped n-gram precisions up to `max_order` and the
/// brevity penalty, unsmoothed. Throws MetricError on empty or mismatched lists.
double bleu(const std::vector<Tokens>& refs, const std::vector<Tokens>& hyps, int max_order = 4);

/// BLEU of one pair; an n-gram order with no match counts `epsilon` matches.
double sentence_bleu(const Tokens& ref, const Tokens& hyp, int max_order = 4, double epsilon = 0.1);

/// Sum of per-step log-probabilities divided by L^alpha.
double decode_confidence(const std::vector<double>& log_probs, double alpha = 0.75);

struct EvalRecord {
  Tokens reference;
  Tokens hypothesis;
  std::optional<std::vector<double>> log_probs;
};

struct Scores {
  std::size_t count = 0;
  double formula_accuracy = 0;
  double template_accuracy = 0;
  double bleu = 0;
  double sentence_bleu = 0;
  /// Mean decode confidence over records that carry log-probabilities.
  std::optional<double> confidence;
};

Scores score(const std::vector<EvalRecord>& records);

struct MeanStd {
  double mean = 0;
  double std = 0;
};

/// Mean and sample standard deviation over repeated runs.
struct ScoreSummary {
  std::size_t runs = 0;
  MeanStd formula_accuracy;
  MeanStd template_accuracy;
  MeanStd bleu;
  MeanStd sentence_bleu;
  std::optional<MeanStd> confidence;
};

ScoreSummary summarize(const std::vector<Scores>& runs);

}  // namespace stlcorpus
