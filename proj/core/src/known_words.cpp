#include "stlcorpus/known_words.hpp"

#include <cctype>
#include <sstream>

#include "stlcorpus/lexicon.hpp"

namespace stlcorpus {

namespace data {
extern const char* const kCommonWords;
}

namespace {

std::string lowercase(std::string_view word) {
  std::string out(word);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

constexpr std::string_view kKeywords[] = {
    "always", "eventually", "once", "historically", "until", "since", "rise", "fall",
    "not",    "and",        "or",   "true",         "false", "inf",   "phi"};

}  // namespace

KnownWordSet KnownWordSet::with_lexicon(const Lexicon& lexicon) {
  KnownWordSet set;
  std::istringstream in{std::string(data::kCommonWords)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    set.insert(line);
  }
  for (const auto& w : lexicon.words()) set.insert(w);
  for (auto k : kKeywords) set.insert(k);
  return set;
}

const KnownWordSet& KnownWordSet::builtin() {
  static const KnownWordSet set = with_lexicon(Lexicon::builtin());
  return set;
}

void KnownWordSet::insert(std::string_view word) {
  if (!word.empty()) words_.insert(lowercase(word));
}

bool KnownWordSet::contains(std::string_view word) const {
  return words_.count(lowercase(word)) != 0;
}

}  // namespace stlcorpus
