#include "stlcorpus_cli/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "stlcorpus/corpus.hpp"
#include "stlcorpus/error.hpp"
#include "stlcorpus/metrics.hpp"
#include "stlcorpus/semantics.hpp"
#include "stlcorpus/stats.hpp"
#include "stlcorpus/tokenizer.hpp"

namespace stlcorpus::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Side { English, Stl };

const std::map<std::string, Side> kSides{{"english", Side::English}, {"stl", Side::Stl}};

std::size_t default_limit(Side side) { return side == Side::English ? 1000 : 200; }

std::string side_text(const CorpusPair& pair, Side side) {
  return side == Side::English ? pair.english : join(pair.stl);
}

// Opens `path` for writing, or hands back `fallback` for "-".
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : path_(path) {
    if (path == "-") {
      stream_ = &fallback;
    } else {
      file_.open(path, std::ios::binary);
      if (!file_) throw IoError("cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw IoError("failed writing '" + path_ + "'");
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* stream_;
};

std::string fixed(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

struct GenerateArgs {
  std::size_t n = 0;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string lexicon;
  std::string out = "-";
  std::size_t jobs = 1;
};

int generate(const GenerateArgs& a, std::ostream& out) {
  GeneratorConfig config = a.config.empty() ? GeneratorConfig{} : GeneratorConfig::load(a.config);
  if (a.seed) config.seed = *a.seed;
  config.validate();
  const Lexicon lexicon = a.lexicon.empty() ? Lexicon::builtin() : Lexicon::load(a.lexicon);
  const Corpus corpus = generate_corpus(config, a.n, a.jobs, lexicon);
  Output o(a.out, out);
  write_corpus(o.stream(), corpus);
  o.finish();
  return kExitOk;
}

struct SplitArgs {
  std::string corpus;
  SplitSpec spec;
  std::string out_dir = ".";
};

int do_split(const SplitArgs& a, std::ostream& out) {
  const Corpus corpus = read_corpus(a.corpus);
  const SplitResult parts = split(corpus, a.spec);
  const std::filesystem::path dir(a.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + a.out_dir + "': " + ec.message());
  write_corpus((dir / "train.jsonl").string(), parts.train);
  write_corpus((dir / "val.jsonl").string(), parts.val);
  write_corpus((dir / "test.jsonl").string(), parts.test);
  out << "train " << parts.train.size() << "\nval " << parts.val.size() << "\ntest " << parts.test.size() << '\n';
  return kExitOk;
}

struct StatsArgs {
  std::string corpus;
  std::string json;
  std::size_t jobs = 1;
};

int stats(const StatsArgs& a, std::ostream& out) {
  const CorpusStats s = corpus_stats(read_corpus(a.corpus), a.jobs);
  out << stats_table(s);
  if (!a.json.empty()) {
    Output o(a.json, out);
    o.stream() << stats_json(s) << '\n';
    o.finish();
  }
  return kExitOk;
}

struct BpeArgs {
  std::string corpus;
  Side side = Side::English;
  std::optional<std::size_t> limit;
  std::string out;
};

int bpe_train(const BpeArgs& a, std::ostream& out) {
  const Corpus corpus = read_corpus(a.corpus);
  std::vector<std::string> texts;
  texts.reserve(corpus.size());
  for (const auto& p : corpus) texts.push_back(presplit(side_text(p, a.side)));
  const BpeVocab vocab = train_bpe(texts, a.limit.value_or(default_limit(a.side)));
  vocab.save(a.out);
  out << "base " << vocab.base_tokens().size() << "\nmerges " << vocab.merges().size() << "\ntokens "
      << vocab.tokens().size() << '\n';
  return kExitOk;
}

struct EncodeArgs {
  std::string vocab;
  std::string in;
  Side side = Side::English;
  std::string out = "-";
};

int do_encode(const EncodeArgs& a, std::ostream& out) {
  const BpeVocab vocab = BpeVocab::load(a.vocab);
  const Corpus corpus = read_corpus(a.in);
  Output o(a.out, out);
  for (const auto& p : corpus) {
    const auto tokens = encode(presplit(side_text(p, a.side)), vocab);
    Json j;
    j["id"] = p.id;
    j["tokens"] = tokens;
    j["ids"] = encode_ids(tokens, vocab);
    o.stream() << j.dump() << '\n';
  }
  o.finish();
  return kExitOk;
}

struct EvaluateArgs {
  std::string corpus;
  std::vector<std::string> predictions;
  std::string json;
};

Tokens hypothesis_of(const Json& j) {
  const auto& h = j.at("hypothesisTokens");
  if (h.is_string()) return split_words(h.get<std::string>());
  return h.get<Tokens>();
}

Scores score_file(const std::map<std::uint64_t, const CorpusPair*>& refs, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::vector<EvalRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path + ":" + std::to_string(line_no) + ": ";
    try {
      const Json j = Json::parse(line);
      const auto id = j.at("id").get<std::uint64_t>();
      const auto it = refs.find(id);
      if (it == refs.end()) throw CorpusError(where + "id " + std::to_string(id) + " is not in the corpus");
      EvalRecord r{it->second->stl, hypothesis_of(j), std::nullopt};
      if (j.contains("logProbs") && !j.at("logProbs").is_null()) r.log_probs = j.at("logProbs").get<std::vector<double>>();
      records.push_back(std::move(r));
    } catch (const Json::exception& e) {
      throw CorpusError(where + e.what());
    }
  }
  if (records.empty()) throw CorpusError(path + ": no predictions");
  return score(records);
}

int evaluate(const EvaluateArgs& a, std::ostream& out) {
  const Corpus corpus = read_corpus(a.corpus);
  std::map<std::uint64_t, const CorpusPair*> refs;
  for (const auto& p : corpus) refs[p.id] = &p;
  std::vector<Scores> runs;
  for (const auto& path : a.predictions) runs.push_back(score_file(refs, path));
  const ScoreSummary s = summarize(runs);

  auto row = [&](const std::string& name, const MeanStd& m) {
    out << name << std::string(22 - name.size(), ' ') << fixed(m.mean) << " +- " << fixed(m.std) << '\n';
  };
  out << "runs " << s.runs << ", pairs " << runs.front().count << '\n';
  row("formula accuracy", s.formula_accuracy);
  row("template accuracy", s.template_accuracy);
  row("BLEU (corpus)", s.bleu);
  row("BLEU (sentence mean)", s.sentence_bleu);
  if (s.confidence) row("decode confidence", *s.confidence);

  if (!a.json.empty()) {
    auto ms = [](const MeanStd& m) { return Json{{"mean", m.mean}, {"std", m.std}}; };
    Json j;
    j["runs"] = s.runs;
    j["formulaAccuracy"] = ms(s.formula_accuracy);
    j["templateAccuracy"] = ms(s.template_accuracy);
    j["bleu"] = ms(s.bleu);
    j["sentenceBleu"] = ms(s.sentence_bleu);
    if (s.confidence) j["confidence"] = ms(*s.confidence);
    Output o(a.json, out);
    o.stream() << j.dump(2) << '\n';
    o.finish();
  }
  return kExitOk;
}

struct CheckArgs {
  std::string formula;
  std::string trace;
  std::size_t at = 0;
};

int check(const CheckArgs& a, std::ostream& out) {
  const NodePtr node = parse(a.formula);
  if (a.trace.empty()) {
    out << "formula   " << render_string(*node) << '\n';
    out << "template  " << join(to_template(*node)) << '\n';
    const auto category = classify_fragment(*node);
    out << "category  " << (category ? std::string(to_string(*category)) : std::string("outside fragment")) << '\n';
    return kExitOk;
  }
  std::ifstream in(a.trace);
  if (!in) throw IoError("cannot read '" + a.trace + "'");
  const Trace trace = Trace::from_csv(in);
  const bool holds = evaluate(*node, trace, a.at);
  out << (holds ? "satisfied" : "violated") << " at " << a.at << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synthetic STL/English corpus toolchain", "stlcorpus"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "Sample formula/sentence pairs as JSONL");
  generate_cmd->add_option("--n", gen.n, "Number of pairs")->required()->check(CLI::PositiveNumber);
  generate_cmd->add_option("--config", gen.config, "Generator config file (key = value lines)")->check(CLI::ExistingFile);
  generate_cmd->add_option("--seed", gen.seed, "Overrides the config seed");
  generate_cmd->add_option("--lexicon", gen.lexicon, "Replacement phrase lexicon")->check(CLI::ExistingFile);
  generate_cmd->add_option("--out", gen.out, "Output path, - for stdout")->capture_default_str();
  generate_cmd->add_option("--jobs", gen.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  SplitArgs sp;
  auto* split_cmd = app.add_subcommand("split", "Write train/val/test splits of a corpus");
  split_cmd->add_option("--corpus", sp.corpus, "Corpus JSONL")->required();
  split_cmd->add_option("--test-frac", sp.spec.test_fraction, "Test share of the corpus")->capture_default_str();
  split_cmd->add_option("--val-frac", sp.spec.val_fraction, "Validation share of the non-test pairs")
      ->capture_default_str();
  split_cmd->add_option("--split-seed", sp.spec.split_seed, "Seed fixing the test set")->capture_default_str();
  split_cmd->add_option("--trainval-seed", sp.spec.trainval_seed, "Seed for the train/val partition")
      ->capture_default_str();
  split_cmd->add_option("--out-dir", sp.out_dir, "Directory for train/val/test.jsonl")->capture_default_str();

  StatsArgs st;
  auto* stats_cmd = app.add_subcommand("stats", "Print corpus statistics");
  stats_cmd->add_option("--corpus", st.corpus, "Corpus JSONL")->required();
  stats_cmd->add_option("--json", st.json, "Also write the report as JSON");
  stats_cmd->add_option("--jobs", st.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  BpeArgs bpe;
  auto* bpe_cmd = app.add_subcommand("bpe-train", "Learn a BPE vocabulary for one side of a corpus");
  bpe_cmd->add_option("--corpus", bpe.corpus, "Corpus JSONL")->required();
  bpe_cmd->add_option("--side", bpe.side, "english or stl")
      ->required()
      ->transform(CLI::CheckedTransformer(kSides, CLI::ignore_case));
  bpe_cmd->add_option("--limit", bpe.limit, "Token list size (default 1000 english, 200 stl)")
      ->check(CLI::PositiveNumber);
  bpe_cmd->add_option("--out", bpe.out, "Vocabulary file")->required();

  EncodeArgs enc;
  auto* encode_cmd = app.add_subcommand("encode", "Encode one side of a corpus with a vocabulary");
  encode_cmd->add_option("--vocab", enc.vocab, "Vocabulary file")->required();
  encode_cmd->add_option("--in", enc.in, "Corpus JSONL")->required();
  encode_cmd->add_option("--side", enc.side, "english or stl")
      ->capture_default_str()
      ->transform(CLI::CheckedTransformer(kSides, CLI::ignore_case));
  encode_cmd->add_option("--out", enc.out, "Output JSONL, - for stdout")->capture_default_str();

  EvaluateArgs ev;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score predictions against corpus formulas");
  evaluate_cmd->add_option("--corpus", ev.corpus, "Reference corpus JSONL")->required();
  evaluate_cmd->add_option("--predictions", ev.predictions, "Predictions JSONL; repeat for several runs")
      ->required();
  evaluate_cmd->add_option("--json", ev.json, "Also write the report as JSON");

  CheckArgs ck;
  auto* check_cmd = app.add_subcommand("check", "Parse a formula, or evaluate it on a CSV trace");
  check_cmd->add_option("--formula", ck.formula, "Formula in surface syntax")->required();
  check_cmd->add_option("--trace", ck.trace, "CSV trace");
  check_cmd->add_option("--at", ck.at, "Time index")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*generate_cmd) return generate(gen, out);
    if (*split_cmd) return do_split(sp, out);
    if (*stats_cmd) return stats(st, out);
    if (*bpe_cmd) return bpe_train(bpe, out);
    if (*encode_cmd) return do_encode(enc, out);
    if (*evaluate_cmd) return evaluate(ev, out);
    if (*check_cmd) return check(ck, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace stlcorpus::cli
