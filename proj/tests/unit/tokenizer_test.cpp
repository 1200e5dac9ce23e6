#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

#include "bpe_oracle.hpp"
#include "stlcorpus/corpus.hpp"
#include "stlcorpus/error.hpp"
#include "stlcorpus/tokenizer.hpp"

namespace stlcorpus {
namespace {

using testing::oracle_merges;

std::size_t base_size(const std::vector<std::string>& texts) {
  return train_bpe(texts, 0).base_tokens().size();
}

TEST(Presplit, ExplodesIdentifiersAndNumbers) {
  EXPECT_EQ(presplit("PWM"), "P W M");
  EXPECT_EQ(presplit("12.5"), "1 2 . 5");
  EXPECT_EQ(presplit("always"), "always");
}

TEST(Presplit, PeelsTrailingPunctuationAndKeepsOperators) {
  EXPECT_EQ(presplit("If pwr_2 is above 12.5, then"), "If p w r _ 2 is above 1 2 . 5 , then");
  EXPECT_EQ(presplit("Globally, the signal x stays."), "Globally , the signal x stays .");
  EXPECT_EQ(presplit("always ( x >= 3 -> y == Idle )"), "always ( x >= 3 -> y == I d l e )");
  EXPECT_EQ(presplit(""), "");
}

TEST(Presplit, IsIdempotentOnCorpusText) {
  const auto corpus = generate_corpus(GeneratorConfig{}, 500);
  for (const auto& p : corpus) {
    for (const std::string& text : {p.english, join(p.stl)}) {
      const std::string once = presplit(text);
      ASSERT_EQ(presplit(once), once) << text;
    }
  }
}

TEST(Bpe, ToyCorpusFirstMerge) {
  const std::vector<std::string> toy{"low low lower"};
  const auto oracle = oracle_merges(toy, 1);
  ASSERT_FALSE(oracle.empty());
  EXPECT_EQ(oracle[0].merge, (Merge{"l", "o"}));
  const auto vocab = train_bpe(toy, base_size(toy) + 8);
  ASSERT_FALSE(vocab.merges().empty());
  EXPECT_EQ(vocab.merges()[0], (Merge{"l", "o"}));
}

TEST(Bpe, LimitAtBaseSizeMeansNoMerges) {
  const std::vector<std::string> toy{"low low lower"};
  const auto vocab = train_bpe(toy, base_size(toy));
  EXPECT_TRUE(vocab.merges().empty());
  EXPECT_EQ(vocab.tokens().size(), vocab.base_tokens().size());
}

TEST(Bpe, TiesBreakLexicographically) {
  // "ab" and "cd" occur equally often.
  const auto vocab = train_bpe({"cd ab cd ab"}, base_size({"cd ab"}) + 1);
  ASSERT_EQ(vocab.merges().size(), 1u);
  EXPECT_EQ(vocab.merges()[0], (Merge{"a", "b</w>"}));
}

TEST(Bpe, MergeOrderMatchesBruteForceOracle) {
  const auto corpus = generate_corpus(GeneratorConfig{}, 100);
  for (bool english : {true, false}) {
    std::vector<std::string> texts;
    for (const auto& p : corpus) texts.push_back(presplit(english ? p.english : join(p.stl)));
    const std::size_t merges = english ? 150 : 40;
    const auto oracle = oracle_merges(texts, merges);
    const auto vocab = train_bpe(texts, base_size(texts) + merges);
    ASSERT_EQ(vocab.merges().size(), oracle.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      ASSERT_EQ(vocab.merges()[i], oracle[i].merge) << "merge " << i;
      if (i > 0) {
        ASSERT_GE(oracle[i - 1].count, oracle[i].count) << "merge " << i;
      }
    }
  }
}

TEST(Bpe, InvariantsOnGeneratedEnglish) {
  const auto corpus = generate_corpus(GeneratorConfig{}, 2000);
  std::vector<std::string> texts;
  for (const auto& p : corpus) texts.push_back(presplit(p.english));
  const auto vocab = train_bpe(texts, 1000);
  EXPECT_LE(vocab.tokens().size(), 1000u);

  std::set<std::string> available(vocab.base_tokens().begin(), vocab.base_tokens().end());
  for (const auto& [l, r] : vocab.merges()) {
    ASSERT_TRUE(available.count(l) && available.count(r));
    available.insert(l + r);
  }
  for (char c : default_alphabet()) {
    EXPECT_TRUE(vocab.contains(std::string(1, c)));
    EXPECT_TRUE(vocab.contains(std::string(1, c) + "</w>"));
  }
  // Every lexicon word is representable, and encodes without <unk>.
  for (const auto& w : Lexicon::builtin().words()) {
    for (const auto& t : encode(w, vocab)) ASSERT_NE(t.rfind("<unk>", 0), 0u) << w;
  }
  // Exploded identifier characters are single-symbol words and never merge.
  for (const auto& p : corpus) {
    for (const auto& pred : predicates(*parse(p.stl))) {
      const auto tokens = encode(presplit(pred.signal), vocab);
      ASSERT_EQ(tokens.size(), pred.signal.size()) << pred.signal;
    }
  }
}

TEST(Encode, IdentifiersAreAtomized) {
  const BpeVocab vocab = train_bpe({presplit("the signal PWM is high")}, 400);
  EXPECT_EQ(encode("P W M", vocab), (std::vector<std::string>{"P</w>", "W</w>", "M</w>"}));
}

TEST(Encode, FullyMergedWordIsOneToken) {
  const BpeVocab vocab = train_bpe({"always always always ( x )"}, 500);
  EXPECT_EQ(encode("always", vocab), std::vector<std::string>{"always</w>"});
  EXPECT_EQ(encode("alw", vocab).size(), 2u);
}

TEST(Encode, UnknownCharactersBecomeUnk) {
  const BpeVocab vocab = train_bpe({"ab"}, 200);
  const auto tokens = encode("a~ ~", vocab);
  EXPECT_EQ(tokens, (std::vector<std::string>{"a", "<unk></w>", "<unk></w>"}));
  const auto decoded = decode(tokens);
  EXPECT_EQ(decoded.unknown_count, 2u);
  EXPECT_EQ(decoded.text, "a\xEF\xBF\xBD \xEF\xBF\xBD");
}

TEST(Decode, EmptyAndSentinels) {
  EXPECT_EQ(decode({}).text, "");
  EXPECT_EQ(decode({"<bos>", "al", "ways</w>", "x</w>", "<eos>", "<pad>"}).text, "always x");
}

TEST(Decode, InvertsEncodeOnCorpusSentences) {
  const auto corpus = generate_corpus(GeneratorConfig{}, 1000);
  std::vector<std::string> en, stl;
  for (const auto& p : corpus) {
    en.push_back(presplit(p.english));
    stl.push_back(presplit(join(p.stl)));
  }
  const auto ve = train_bpe(en, 1000);
  const auto vs = train_bpe(stl, 200);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto d1 = decode(encode(en[i], ve));
    ASSERT_EQ(d1.text, en[i]);
    ASSERT_EQ(d1.unknown_count, 0u);
    const auto d2 = decode(encode(stl[i], vs));
    ASSERT_EQ(d2.text, stl[i]);
    ASSERT_EQ(d2.unknown_count, 0u);
  }
}

TEST(Vocab, SaveLoadRoundTrip) {
  const auto corpus = generate_corpus(GeneratorConfig{}, 200);
  std::vector<std::string> texts;
  for (const auto& p : corpus) texts.push_back(presplit(p.english));
  const auto vocab = train_bpe(texts, 300);
  std::stringstream buf;
  vocab.save(buf);
  const auto back = BpeVocab::load(buf);
  EXPECT_EQ(back, vocab);
  EXPECT_EQ(back.tokens(), vocab.tokens());
  EXPECT_EQ(back.limit(), 300u);
  EXPECT_EQ(back.id("<pad>"), 0);
  EXPECT_EQ(back.id(vocab.tokens().front()), 5);
  EXPECT_EQ(back.id_count(), vocab.tokens().size() + 5);
}

TEST(Vocab, LoadRejectsInconsistentFiles) {
  auto load = [](const std::string& text) {
    std::istringstream in(text);
    return BpeVocab::load(in);
  };
  EXPECT_THROW(load(""), VocabError);
  EXPECT_THROW(load("bpe-vocab 2\n"), VocabError);
  EXPECT_THROW(load("bpe-vocab 1\nlimit 5\nbase 2\na\n"), VocabError);
  EXPECT_THROW(load("bpe-vocab 1\nlimit 5\nbase 2\na\nb</w>\nmerges 1\nab b</w>\n"), VocabError);
  EXPECT_THROW(load("bpe-vocab 1\nlimit 5\nbase 2\na\nb</w>\nmerges 1\na b</w> x\n"), VocabError);
  EXPECT_NO_THROW(load("bpe-vocab 1\nlimit 5\nbase 2\na\nb</w>\nmerges 1\na b</w>\n"));
  EXPECT_THROW(BpeVocab::load(std::string("/nonexistent/vocab.txt")), IoError);
  EXPECT_THROW(load("bpe-vocab 1\nlimit 5\nbase 1\na\nmerges 0\n").id("zz"), VocabError);
}

}  // namespace
}  // namespace stlcorpus
