#include "stlcorpus/stats.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "stlcorpus/error.hpp"

namespace stlcorpus {

namespace {

using Histogram = std::map<std::uint64_t, std::uint64_t>;

bool is_numeral(std::string_view w) {
  if (w.empty()) return false;
  bool digit = false;
  for (char c : w) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else if (c != '.') {
      return false;
    }
  }
  return digit;
}

std::string strip(std::string_view w) {
  while (!w.empty() && std::ispunct(static_cast<unsigned char>(w.back())) && w.back() != '_') w.remove_suffix(1);
  return std::string(w);
}

// Associative partial result over a slice of the corpus.
struct Partial {
  std::size_t pairs = 0;
  std::unordered_set<std::string> formulas;
  std::unordered_set<std::string> templates;
  std::array<std::size_t, 4> categories{};
  Histogram subformulas;
  PerOperator<std::uint64_t> operators{};
  Histogram operators_per_formula;
  PerOperator<std::uint64_t> formulas_with{};
  Histogram identifiers;
  std::uint64_t identifier_chars = 0;
  std::uint64_t identifier_count = 0;
  std::uint64_t constant_digits = 0;
  std::uint64_t constant_count = 0;
  std::unordered_set<std::string> sentences;
  Histogram words_per_sentence;
  std::unordered_map<std::string, std::uint64_t> sentences_with;

  void add(const CorpusPair& pair) {
    ++pairs;
    formulas.insert(join(pair.stl));
    templates.insert(join(pair.templ));
    ++categories[static_cast<std::size_t>(pair.category)];
    const NodePtr node = parse(pair.stl);
    ++subformulas[stlcorpus::subformulas(node).size()];
    const auto ops = count_operators(*node);
    std::uint64_t total = 0;
    for (std::size_t k = 0; k < kOperatorCount; ++k) {
      operators[k] += ops[k];
      total += ops[k];
      if (ops[k] > 0) ++formulas_with[k];
    }
    ++operators_per_formula[total];
    const auto preds = predicates(*node);
    ++identifiers[preds.size()];
    for (const auto& p : preds) {
      identifier_chars += p.signal.size();
      ++identifier_count;
      if (p.rhs.kind == Operand::Kind::Number) {
        constant_digits += static_cast<std::uint64_t>(
            std::count_if(p.rhs.text.begin(), p.rhs.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }));
        ++constant_count;
      }
    }
    sentences.insert(pair.english);
    const auto words = effective_words(pair);
    ++words_per_sentence[words.size()];
    for (const auto& w : std::set<std::string>(words.begin(), words.end())) ++sentences_with[w];
  }

  void merge(Partial&& o) {
    pairs += o.pairs;
    formulas.merge(o.formulas);
    templates.merge(o.templates);
    for (std::size_t k = 0; k < 4; ++k) categories[k] += o.categories[k];
    for (const auto& [v, f] : o.subformulas) subformulas[v] += f;
    for (std::size_t k = 0; k < kOperatorCount; ++k) {
      operators[k] += o.operators[k];
      formulas_with[k] += o.formulas_with[k];
    }
    for (const auto& [v, f] : o.operators_per_formula) operators_per_formula[v] += f;
    for (const auto& [v, f] : o.identifiers) identifiers[v] += f;
    identifier_chars += o.identifier_chars;
    identifier_count += o.identifier_count;
    constant_digits += o.constant_digits;
    constant_count += o.constant_count;
    sentences.merge(o.sentences);
    for (const auto& [v, f] : o.words_per_sentence) words_per_sentence[v] += f;
    for (const auto& [w, f] : o.sentences_with) sentences_with[w] += f;
  }
};

double ratio(std::uint64_t a, std::uint64_t b) { return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b); }

std::string fixed(double x, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

nlohmann::ordered_json summary_json(const Summary& s) {
  return {{"min", s.min}, {"max", s.max}, {"mean", s.mean}, {"median", s.median}};
}

}  // namespace

Summary summarize(const Histogram& histogram) {
  Summary s;
  std::uint64_t n = 0;
  double sum = 0;
  for (const auto& [v, f] : histogram) {
    n += f;
    sum += static_cast<double>(v) * static_cast<double>(f);
  }
  if (n == 0) return s;
  s.min = static_cast<double>(histogram.begin()->first);
  s.max = static_cast<double>(histogram.rbegin()->first);
  s.mean = sum / static_cast<double>(n);
  // Values at 0-based ranks (n-1)/2 and n/2.
  const std::uint64_t lo_rank = (n - 1) / 2, hi_rank = n / 2;
  std::uint64_t seen = 0;
  double lo = 0, hi = 0;
  bool have_lo = false;
  for (const auto& [v, f] : histogram) {
    if (!have_lo && lo_rank < seen + f) {
      lo = static_cast<double>(v);
      have_lo = true;
    }
    if (hi_rank < seen + f) {
      hi = static_cast<double>(v);
      break;
    }
    seen += f;
  }
  s.median = (lo + hi) / 2;
  return s;
}

std::vector<std::string> effective_words(const CorpusPair& pair) {
  std::unordered_set<std::string> identifiers;
  for (const auto& p : predicates(*parse(pair.stl))) {
    identifiers.insert(p.signal);
    if (p.rhs.kind == Operand::Kind::Mode) identifiers.insert(p.rhs.text);
  }
  std::vector<std::string> out;
  for (const auto& raw : split_words(pair.english)) {
    std::string w = strip(raw);
    if (w.empty() || is_numeral(w) || identifiers.count(w) != 0) continue;
    for (char& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out.push_back(std::move(w));
  }
  return out;
}

CorpusStats corpus_stats(const Corpus& corpus, std::size_t jobs) {
  if (corpus.empty()) throw CorpusError("empty corpus");
  jobs = std::clamp<std::size_t>(jobs, 1, corpus.size());
  std::vector<Partial> parts(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  const std::size_t chunk = (corpus.size() + jobs - 1) / jobs;
  auto work = [&](std::size_t w) {
    try {
      for (std::size_t i = w * chunk; i < std::min(corpus.size(), (w + 1) * chunk); ++i) parts[w].add(corpus[i]);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < jobs; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Partial all = std::move(parts[0]);
  for (std::size_t w = 1; w < jobs; ++w) all.merge(std::move(parts[w]));

  CorpusStats s;
  s.pairs = all.pairs;
  s.unique_formulas = all.formulas.size();
  s.unique_templates = all.templates.size();
  s.category_counts = all.categories;
  s.subformulas_per_formula = summarize(all.subformulas);
  s.operator_counts = all.operators;
  s.operators_per_formula = summarize(all.operators_per_formula);
  Histogram with;
  for (auto f : all.formulas_with) ++with[f];
  s.formulas_per_operator = summarize(with);
  s.identifiers_per_formula = summarize(all.identifiers);
  s.chars_per_identifier = ratio(all.identifier_chars, all.identifier_count);
  s.digits_per_constant = ratio(all.constant_digits, all.constant_count);
  s.unique_sentences = all.sentences.size();
  s.unique_effective_words = all.sentences_with.size();
  s.words_per_sentence = summarize(all.words_per_sentence);
  Histogram per_word;
  for (const auto& [w, f] : all.sentences_with) ++per_word[f];
  s.sentences_per_word = summarize(per_word);
  return s;
}

std::string stats_table(const CorpusStats& s) {
  std::ostringstream out;
  auto row = [&](const std::string& label, const std::string& value) {
    out << "  " << label << std::string(label.size() < 34 ? 34 - label.size() : 1, ' ') << value << '\n';
  };
  auto summary = [&](const std::string& label, const Summary& x) {
    row(label, "min " + fixed(x.min, 0) + "  max " + fixed(x.max, 0) + "  avg " + fixed(x.mean) + "  median " +
                   fixed(x.median, 1));
  };
  out << "Formulas\n";
  row("pairs", std::to_string(s.pairs));
  row("unique formulas", std::to_string(s.unique_formulas));
  row("unique templates", std::to_string(s.unique_templates));
  summary("subformulas per formula", s.subformulas_per_formula);
  for (auto c : kCategories) {
    const auto n = s.category_counts[static_cast<std::size_t>(c)];
    row(std::string(to_string(c)), std::to_string(n) + " (" + fixed(100.0 * ratio(n, s.pairs)) + "%)");
  }
  out << "Operators\n";
  for (std::size_t k = 0; k < kOperatorCount; ++k) {
    row(std::string(to_string(static_cast<Operator>(k))), std::to_string(s.operator_counts[k]));
  }
  summary("operators per formula", s.operators_per_formula);
  summary("formulas per operator", s.formulas_per_operator);
  out << "Identifiers and constants\n";
  summary("identifiers per formula", s.identifiers_per_formula);
  row("chars per identifier", fixed(s.chars_per_identifier));
  row("digits per constant", fixed(s.digits_per_constant));
  out << "Sentences\n";
  row("unique sentences", std::to_string(s.unique_sentences));
  row("unique effective words", std::to_string(s.unique_effective_words));
  summary("words per sentence", s.words_per_sentence);
  summary("sentences per word", s.sentences_per_word);
  return out.str();
}

std::string stats_json(const CorpusStats& s) {
  nlohmann::ordered_json j;
  j["pairs"] = s.pairs;
  j["uniqueFormulas"] = s.unique_formulas;
  j["uniqueTemplates"] = s.unique_templates;
  auto& cats = j["categories"];
  cats = nlohmann::ordered_json::object();
  for (auto c : kCategories) cats[std::string(to_string(c))] = s.category_counts[static_cast<std::size_t>(c)];
  j["subformulasPerFormula"] = summary_json(s.subformulas_per_formula);
  auto& ops = j["operatorCounts"];
  ops = nlohmann::ordered_json::object();
  for (std::size_t k = 0; k < kOperatorCount; ++k) ops[std::string(to_string(static_cast<Operator>(k)))] = s.operator_counts[k];
  j["operatorsPerFormula"] = summary_json(s.operators_per_formula);
  j["formulasPerOperator"] = summary_json(s.formulas_per_operator);
  j["identifiersPerFormula"] = summary_json(s.identifiers_per_formula);
  j["charsPerIdentifier"] = s.chars_per_identifier;
  j["digitsPerConstant"] = s.digits_per_constant;
  j["uniqueSentences"] = s.unique_sentences;
  j["uniqueEffectiveWords"] = s.unique_effective_words;
  j["wordsPerSentence"] = summary_json(s.words_per_sentence);
  j["sentencesPerWord"] = summary_json(s.sentences_per_word);
  return j.dump(2);
}

}  // namespace stlcorpus
