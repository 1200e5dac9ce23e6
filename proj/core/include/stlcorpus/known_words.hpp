#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>

namespace stlcorpus {

class Lexicon;

/// Case-insensitive set of words treated as ordinary vocabulary. Anything
/// outside it is considered an identifier by the tokenizer and is never
/// produced as an identifier by the sampler.
class KnownWordSet {
 public:
  KnownWordSet() = default;

  /// Common English words, every word of `lexicon`, and all surface keywords.
  static KnownWordSet with_lexicon(const Lexicon& lexicon);
  /// `with_lexicon(Lexicon::builtin())`, built once.
  static const KnownWordSet& builtin();

  void insert(std::string_view word);
  bool contains(std::string_view word) const;
  std::size_t size() const noexcept { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

}  // namespace stlcorpus
