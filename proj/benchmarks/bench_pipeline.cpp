#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "stlcorpus/corpus.hpp"
#include "stlcorpus/lexicon.hpp"
#include "stlcorpus/metrics.hpp"
#include "stlcorpus/nlgen.hpp"
#include "stlcorpus/sampler.hpp"
#include "stlcorpus/semantics.hpp"
#include "stlcorpus/surface.hpp"
#include "stlcorpus/tokenizer.hpp"

namespace {

using namespace stlcorpus;

const Corpus& sample_corpus() {
  static const Corpus corpus = generate_corpus(GeneratorConfig{}, 2000);
  return corpus;
}

void BM_SampleFormula(benchmark::State& state) {
  const Sampler sampler(GeneratorConfig{});
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample_at(i++));
}
BENCHMARK(BM_SampleFormula);

void BM_Translate(benchmark::State& state) {
  const Sampler sampler(GeneratorConfig{});
  const Translator translator(Lexicon::builtin());
  std::vector<FragmentFormula> formulas;
  for (std::uint64_t i = 0; i < 256; ++i) formulas.push_back(sampler.sample_at(i));
  Rng rng(1);
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(translator.translate(formulas[k++ % formulas.size()], rng));
}
BENCHMARK(BM_Translate);

void BM_GeneratePair(benchmark::State& state) {
  const Sampler sampler(GeneratorConfig{});
  const Translator translator(Lexicon::builtin());
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(generate_pair(sampler, translator, i++));
}
BENCHMARK(BM_GeneratePair);

void BM_RenderParse(benchmark::State& state) {
  const auto& corpus = sample_corpus();
  std::size_t k = 0;
  for (auto _ : state) {
    const NodePtr node = parse(corpus[k++ % corpus.size()].stl);
    benchmark::DoNotOptimize(render(*node));
  }
}
BENCHMARK(BM_RenderParse);

void BM_EvaluateAll(benchmark::State& state) {
  const NodePtr node = parse("always ( x > 0 -> eventually [ 0 : 5 ] ( y < 1 ) )");
  Trace trace;
  std::vector<double> x(static_cast<std::size_t>(state.range(0))), y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = static_cast<double>(i % 7);
    y[i] = static_cast<double>(i % 3);
  }
  trace.add_signal("x", x);
  trace.add_signal("y", y);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_all(*node, trace));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EvaluateAll)->Arg(100)->Arg(10000);

void BM_TrainBpe(benchmark::State& state) {
  std::vector<std::string> texts;
  for (const auto& p : sample_corpus()) texts.push_back(presplit(p.english));
  for (auto _ : state) benchmark::DoNotOptimize(train_bpe(texts, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_TrainBpe)->Arg(300)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Encode(benchmark::State& state) {
  std::vector<std::string> texts;
  for (const auto& p : sample_corpus()) texts.push_back(presplit(p.english));
  const auto vocab = train_bpe(texts, 1000);
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(encode(texts[k++ % texts.size()], vocab));
}
BENCHMARK(BM_Encode);

void BM_Score(benchmark::State& state) {
  std::vector<EvalRecord> records;
  const auto& corpus = sample_corpus();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    records.push_back({corpus[i].stl, corpus[(i + 1) % corpus.size()].stl, std::nullopt});
  }
  for (auto _ : state) benchmark::DoNotOptimize(score(records));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(records.size()));
}
BENCHMARK(BM_Score)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
