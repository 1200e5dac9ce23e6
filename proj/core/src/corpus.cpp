#include "stlcorpus/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <thread>

#include "json.hpp"
#include "stlcorpus/error.hpp"
#include "stlcorpus/nlgen.hpp"

namespace stlcorpus {

namespace {

using Json = nlohmann::ordered_json;

std::size_t rounded(double x) { return static_cast<std::size_t>(std::llround(x)); }

constexpr std::uint64_t kTestSalt = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kTrainValSalt = 0xc2b2ae3d27d4eb4fULL;

std::uint64_t split_key(std::uint64_t id, std::uint64_t seed) { return mix64(mix64(seed) ^ id); }

// Indices of the `k` entries of `pool` with the smallest key (ties by id).
std::vector<std::size_t> smallest_by_key(const Corpus& corpus, const std::vector<std::size_t>& pool, std::size_t k,
                                         std::uint64_t salt, std::uint64_t seed) {
  std::vector<std::pair<std::uint64_t, std::size_t>> keyed;
  keyed.reserve(pool.size());
  for (std::size_t i : pool) keyed.emplace_back(split_key(corpus[i].id, seed ^ salt), i);
  std::sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : corpus[a.second].id < corpus[b.second].id;
  });
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t j = 0; j < k && j < keyed.size(); ++j) out.push_back(keyed[j].second);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CorpusPair generate_pair(const Sampler& sampler, const Translator& translator, std::uint64_t draw_index) {
  Rng rng = Rng::for_stream(sampler.config().seed, draw_index);
  const FragmentFormula formula = sampler.sample_formula(rng);
  const TranslationSet set = translator.translate(formula, rng);
  const NodePtr node = to_node(formula);

  CorpusPair pair;
  pair.id = draw_index;
  pair.stl = render(*node);
  pair.english = sample_translation(set, 1, rng).front();
  pair.templ = to_template(*node);
  pair.category = formula.category();
  pair.meta = {sampler.config().hash(), draw_index, sampler.config().seed};
  return pair;
}

Corpus generate_corpus(const GeneratorConfig& config, std::size_t n, std::size_t jobs, const Lexicon& lexicon) {
  const Sampler sampler(config);
  const Translator translator(lexicon);
  Corpus corpus(n);
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n, 1));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) corpus[i] = generate_pair(sampler, translator, i);
    return corpus;
  }
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> workers;
  const std::size_t chunk = (n + jobs - 1) / jobs;
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i = w * chunk; i < std::min(n, (w + 1) * chunk); ++i) {
          corpus[i] = generate_pair(sampler, translator, i);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return corpus;
}

void validate_pair(const CorpusPair& pair) {
  const std::string where = "pair " + std::to_string(pair.id) + ": ";
  NodePtr node;
  try {
    node = parse(pair.stl);
  } catch (const SyntaxError& e) {
    throw CorpusError(where + "formula does not parse: " + e.what());
  }
  const auto category = classify_fragment(*node);
  if (!category) throw CorpusError(where + "formula is outside the fragment");
  if (*category != pair.category) {
    throw CorpusError(where + "category is " + std::string(to_string(*category)) + ", recorded " +
                      std::string(to_string(pair.category)));
  }
  if (to_template(*node) != pair.templ) throw CorpusError(where + "template does not match the formula");
  if (pair.english.empty()) throw CorpusError(where + "empty sentence");
}

std::string to_json_line(const CorpusPair& pair) {
  Json j;
  j["id"] = pair.id;
  j["stl"] = join(pair.stl);
  j["english"] = pair.english;
  j["template"] = join(pair.templ);
  j["category"] = std::string(to_string(pair.category));
  j["meta"] = {{"configHash", pair.meta.config_hash},
               {"drawIndex", pair.meta.draw_index},
               {"seed", pair.meta.seed}};
  return j.dump();
}

CorpusPair from_json_line(std::string_view line) {
  CorpusPair pair;
  try {
    const Json j = Json::parse(line);
    pair.id = j.at("id").get<std::uint64_t>();
    pair.stl = split_words(j.at("stl").get<std::string>());
    pair.english = j.at("english").get<std::string>();
    pair.templ = split_words(j.at("template").get<std::string>());
    const auto category = category_from_string(j.at("category").get<std::string>());
    if (!category) throw CorpusError("unknown category '" + j.at("category").get<std::string>() + "'");
    pair.category = *category;
    if (j.contains("meta")) {
      const auto& m = j.at("meta");
      pair.meta.config_hash = m.value("configHash", std::string());
      pair.meta.draw_index = m.value("drawIndex", std::uint64_t{0});
      pair.meta.seed = m.value("seed", std::uint64_t{0});
    }
  } catch (const Json::exception& e) {
    throw CorpusError(std::string("malformed record: ") + e.what());
  }
  validate_pair(pair);
  return pair;
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& p : corpus) out << to_json_line(p) << '\n';
}

void write_corpus(const std::string& path, const Corpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  write_corpus(out, corpus);
  if (!out) throw IoError("failed writing '" + path + "'");
}

Corpus read_corpus(std::istream& in) {
  Corpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      corpus.push_back(from_json_line(line));
    } catch (const CorpusError& e) {
      throw CorpusError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return corpus;
}

Corpus read_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  return read_corpus(in);
}

void SplitSpec::validate() const {
  if (!(test_fraction > 0 && test_fraction < 1)) throw ConfigError("test fraction must lie in (0, 1)");
  if (!(val_fraction > 0 && val_fraction < 1)) throw ConfigError("validation fraction must lie in (0, 1)");
}

SplitResult split(const Corpus& corpus, const SplitSpec& spec) {
  spec.validate();
  const std::size_t n = corpus.size();
  if (n < 10) throw CorpusError("corpus has " + std::to_string(n) + " pairs; splitting needs at least 10");

  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  const auto test_idx = smallest_by_key(corpus, all, rounded(spec.test_fraction * static_cast<double>(n)),
                                        kTestSalt, spec.split_seed);
  std::vector<std::size_t> rest;
  std::set_difference(all.begin(), all.end(), test_idx.begin(), test_idx.end(), std::back_inserter(rest));
  const std::size_t train_count = rounded((1.0 - spec.val_fraction) * static_cast<double>(rest.size()));
  const auto val_idx = smallest_by_key(corpus, rest, rest.size() - train_count, kTrainValSalt,
                                       spec.trainval_seed);

  SplitResult out;
  std::size_t t = 0, v = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (t < test_idx.size() && test_idx[t] == i) {
      out.test.push_back(corpus[i]);
      ++t;
    } else if (v < val_idx.size() && val_idx[v] == i) {
      out.val.push_back(corpus[i]);
      ++v;
    } else {
      out.train.push_back(corpus[i]);
    }
  }
  return out;
}

}  // namespace stlcorpus
