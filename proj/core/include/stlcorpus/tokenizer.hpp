#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "stlcorpus/known_words.hpp"

namespace stlcorpus {

/// End-of-word marker carried by the last symbol of every word.
inline constexpr std::string_view kEndOfWord = "</w>";
inline constexpr std::string_view kUnknown = "<unk>";
inline constexpr std::string_view kUnknownFinal = "<unk></w>";

/// Prepares text for subword training. Trailing punctuation is split off
/// multi-character words; numbers and words outside `known` are exploded into
/// one word per character; known words, surface keywords and comparison
/// operators pass through. Idempotent.
std::string presplit(std::string_view text, const KnownWordSet& known = KnownWordSet::builtin());

/// Characters the generator can emit; every vocabulary covers them.
std::string_view default_alphabet();

using Merge = std::pair<std::string, std::string>;

class BpeVocab {
 public:
  BpeVocab() = default;
  BpeVocab(std::size_t limit, std::vector<std::string> base_tokens, std::vector<Merge> merges);

  std::size_t limit() const noexcept { return limit_; }
  const std::vector<std::string>& base_tokens() const noexcept { return base_; }
  const std::vector<Merge>& merges() const noexcept { return merges_; }
  /// Base tokens followed by one token per merge, in merge order.
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  bool contains(std::string_view token) const;
  /// Byte length of the longest token.
  std::size_t longest_token() const noexcept { return longest_; }

  /// Integer ids: `<pad>`, `<bos>`, `<eos>`, `<unk>`, `<unk></w>`, then tokens().
  static const std::vector<std::string>& special_tokens();
  std::int64_t id(std::string_view token) const;
  std::size_t id_count() const noexcept { return special_tokens().size() + tokens_.size(); }

  void save(std::ostream& out) const;
  void save(const std::string& path) const;
  static BpeVocab load(std::istream& in);
  static BpeVocab load(const std::string& path);

  friend bool operator==(const BpeVocab& a, const BpeVocab& b) {
    return a.limit_ == b.limit_ && a.base_ == b.base_ && a.merges_ == b.merges_;
  }

 private:
  std::size_t limit_ = 0;
  std::vector<std::string> base_;
  std::vector<Merge> merges_;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::int64_t> ids_;
  std::size_t longest_ = 0;
};

/// Learns merges from presplit texts until the token list holds `limit`
/// tokens or no pair remains. The most frequent adjacent pair inside a word
/// is merged first; ties go to the lexicographically smallest pair.
BpeVocab train_bpe(const std::vector<std::string>& texts, std::size_t limit);

/// Greedy longest-match encoding of presplit text, word by word. Symbols the
/// vocabulary lacks become `<unk>` (or `<unk></w>` at the end of a word).
std::vector<std::string> encode(std::string_view text, const BpeVocab& vocab);
std::vector<std::int64_t> encode_ids(const std::vector<std::string>& tokens, const BpeVocab& vocab);

struct Decoded {
  std::string text;
  /// Number of `<unk>` tokens, each rendered as U+FFFD.
  std::size_t unknown_count = 0;
};

/// Concatenates tokens, ending a word at every `</w>`. Padding and sentinel
/// tokens are dropped.
Decoded decode(const std::vector<std::string>& tokens);

}  // namespace stlcorpus
