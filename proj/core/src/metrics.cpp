#include "stlcorpus/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "stlcorpus/error.hpp"

namespace stlcorpus {

namespace {

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts ngrams(const Tokens& tokens, std::size_t n) {
  NgramCounts counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                      tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

std::size_t clipped_matches(const Tokens& ref, const Tokens& hyp, std::size_t n) {
  const auto ref_counts = ngrams(ref, n);
  std::size_t matches = 0;
  for (const auto& [gram, count] : ngrams(hyp, n)) {
    const auto it = ref_counts.find(gram);
    if (it != ref_counts.end()) matches += std::min(count, it->second);
  }
  return matches;
}

double brevity_penalty(double ref_len, double hyp_len) {
  if (hyp_len <= 0) return 0;
  return hyp_len > ref_len ? 1.0 : std::exp(1.0 - ref_len / hyp_len);
}

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd out;
  if (xs.empty()) return out;
  for (double x : xs) out.mean += x;
  out.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return out;
}

}  // namespace

double formula_accuracy(const Tokens& ref, const Tokens& hyp) {
  if (ref.empty()) throw MetricError("empty reference");
  const std::size_t common = std::min(ref.size(), hyp.size());
  std::size_t matches = 0;
  for (std::size_t i = 0; i < common; ++i) matches += ref[i] == hyp[i] ? 1 : 0;
  return static_cast<double>(matches) / static_cast<double>(std::max(ref.size(), hyp.size()));
}

double template_accuracy(const Tokens& ref, const Tokens& hyp) {
  if (ref.empty()) throw MetricError("empty reference");
  return formula_accuracy(template_tokens(ref), template_tokens(hyp));
}

double bleu(const std::vector<Tokens>& refs, const std::vector<Tokens>& hyps, int max_order) {
  if (refs.empty()) throw MetricError("empty corpus");
  if (refs.size() != hyps.size()) throw MetricError("reference and hypothesis counts differ");
  if (max_order < 1) throw MetricError("BLEU order must be positive");
  const auto orders = static_cast<std::size_t>(max_order);
  std::vector<double> matches(orders, 0), totals(orders, 0);
  double ref_len = 0, hyp_len = 0;
  for (std::size_t k = 0; k < refs.size(); ++k) {
    ref_len += static_cast<double>(refs[k].size());
    hyp_len += static_cast<double>(hyps[k].size());
    for (std::size_t n = 1; n <= orders; ++n) {
      matches[n - 1] += static_cast<double>(clipped_matches(refs[k], hyps[k], n));
      if (hyps[k].size() >= n) totals[n - 1] += static_cast<double>(hyps[k].size() - n + 1);
    }
  }
  double log_sum = 0;
  for (std::size_t n = 0; n < orders; ++n) {
    if (matches[n] == 0 || totals[n] == 0) return 0;
    log_sum += std::log(matches[n] / totals[n]);
  }
  return brevity_penalty(ref_len, hyp_len) * std::exp(log_sum / static_cast<double>(orders));
}

double sentence_bleu(const Tokens& ref, const Tokens& hyp, int max_order, double epsilon) {
  if (max_order < 1) throw MetricError("BLEU order must be positive");
  if (hyp.empty()) return 0;
  const auto orders = static_cast<std::size_t>(max_order);
  double log_sum = 0;
  for (std::size_t n = 1; n <= orders; ++n) {
    double m = static_cast<double>(clipped_matches(ref, hyp, n));
    const double total = hyp.size() >= n ? static_cast<double>(hyp.size() - n + 1) : 0;
    if (m == 0) m = epsilon;
    log_sum += std::log(total == 0 ? epsilon : m / total);
  }
  const double value = brevity_penalty(static_cast<double>(ref.size()), static_cast<double>(hyp.size())) *
                       std::exp(log_sum / static_cast<double>(orders));
  return std::min(value, 1.0);
}

double decode_confidence(const std::vector<double>& log_probs, double alpha) {
  if (log_probs.empty()) throw MetricError("empty log-probability sequence");
  double sum = 0;
  for (double lp : log_probs) {
    if (!(lp <= 0)) throw MetricError("log-probabilities must be <= 0");
    sum += lp;
  }
  return sum / std::pow(static_cast<double>(log_probs.size()), alpha);
}

Scores score(const std::vector<EvalRecord>& records) {
  if (records.empty()) throw MetricError("empty corpus");
  Scores s;
  s.count = records.size();
  std::vector<Tokens> refs, hyps;
  refs.reserve(records.size());
  hyps.reserve(records.size());
  double conf_sum = 0;
  std::size_t conf_n = 0;
  for (const auto& r : records) {
    s.formula_accuracy += formula_accuracy(r.reference, r.hypothesis);
    s.template_accuracy += template_accuracy(r.reference, r.hypothesis);
    s.sentence_bleu += sentence_bleu(r.reference, r.hypothesis);
    refs.push_back(r.reference);
    hyps.push_back(r.hypothesis);
    if (r.log_probs && !r.log_probs->empty()) {
      conf_sum += decode_confidence(*r.log_probs);
      ++conf_n;
    }
  }
  const auto n = static_cast<double>(records.size());
  s.formula_accuracy /= n;
  s.template_accuracy /= n;
  s.sentence_bleu /= n;
  s.bleu = bleu(refs, hyps);
  if (conf_n > 0) s.confidence = conf_sum / static_cast<double>(conf_n);
  return s;
}

ScoreSummary summarize(const std::vector<Scores>& runs) {
  ScoreSummary out;
  out.runs = runs.size();
  std::vector<double> fa, ta, b, sb, conf;
  for (const auto& r : runs) {
    fa.push_back(r.formula_accuracy);
    ta.push_back(r.template_accuracy);
    b.push_back(r.bleu);
    sb.push_back(r.sentence_bleu);
    if (r.confidence) conf.push_back(*r.confidence);
  }
  out.formula_accuracy = mean_std(fa);
  out.template_accuracy = mean_std(ta);
  out.bleu = mean_std(b);
  out.sentence_bleu = mean_std(sb);
  if (!conf.empty()) out.confidence = mean_std(conf);
  return out;
}

}  // namespace stlcorpus
