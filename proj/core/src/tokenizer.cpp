#include "stlcorpus/tokenizer.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "stlcorpus/ast.hpp"
#include "stlcorpus/error.hpp"
#include "stlcorpus/surface.hpp"

namespace stlcorpus {

namespace {

constexpr std::string_view kTrailingPunctuation = ",.;:!?";

bool is_number(std::string_view w) {
  std::size_t i = 0;
  while (i < w.size() && std::isdigit(static_cast<unsigned char>(w[i]))) ++i;
  if (i == 0) return false;
  if (i == w.size()) return true;
  if (w[i] != '.') return false;
  const std::size_t frac = ++i;
  while (i < w.size() && std::isdigit(static_cast<unsigned char>(w[i]))) ++i;
  return i == w.size() && i > frac;
}

// UTF-8 code points; a stray continuation byte counts as its own symbol.
std::vector<std::string> characters(std::string_view w) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < w.size()) {
    const auto lead = static_cast<unsigned char>(w[i]);
    std::size_t len = 1;
    if (lead >= 0xF0) {
      len = 4;
    } else if (lead >= 0xE0) {
      len = 3;
    } else if (lead >= 0xC0) {
      len = 2;
    }
    len = std::min(len, w.size() - i);
    out.emplace_back(w.substr(i, len));
    i += len;
  }
  return out;
}

std::vector<std::string> word_symbols(std::string_view w) {
  auto symbols = characters(w);
  if (!symbols.empty()) symbols.back() += kEndOfWord;
  return symbols;
}

bool has_word_char(std::string_view w) {
  return std::any_of(w.begin(), w.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

void explode(std::string_view w, std::vector<std::string>& out) {
  for (auto& c : characters(w)) out.push_back(std::move(c));
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::string presplit(std::string_view text, const KnownWordSet& known) {
  std::vector<std::string> out;
  for (const auto& word : split_words(text)) {
    std::string_view core = word;
    std::size_t peeled = 0;
    while (core.size() > 1 && kTrailingPunctuation.find(core.back()) != std::string_view::npos) {
      core.remove_suffix(1);
      ++peeled;
    }
    if (characters(core).size() <= 1) {
      out.emplace_back(core);
    } else if (is_number(core)) {
      explode(core, out);
    } else if (known.contains(core) || is_structural_token(core) || comparison_from_token(core) ||
               !has_word_char(core)) {
      out.emplace_back(core);
    } else {
      explode(core, out);
    }
    for (std::size_t k = word.size() - peeled; k < word.size(); ++k) out.emplace_back(1, word[k]);
  }
  return join(out);
}

std::string_view default_alphabet() {
  static const std::string alphabet = [] {
    std::string s;
    for (char c = 'A'; c <= 'Z'; ++c) s += c;
    for (char c = 'a'; c <= 'z'; ++c) s += c;
    for (char c = '0'; c <= '9'; ++c) s += c;
    s += "_.,;:!?()[]<>=-'";
    return s;
  }();
  return alphabet;
}

BpeVocab::BpeVocab(std::size_t limit, std::vector<std::string> base_tokens, std::vector<Merge> merges)
    : limit_(limit), base_(std::move(base_tokens)), merges_(std::move(merges)) {
  std::set<std::string> seen;
  auto add = [&](const std::string& t) {
    if (t.empty()) throw VocabError("empty token");
    if (seen.insert(t).second) tokens_.push_back(t);
  };
  for (const auto& t : base_) add(t);
  for (std::size_t i = 0; i < merges_.size(); ++i) {
    const auto& [l, r] = merges_[i];
    if (seen.count(l) == 0 || seen.count(r) == 0) {
      throw VocabError("merge " + std::to_string(i) + " (" + l + ", " + r +
                       ") uses a token not available yet");
    }
    if (ends_with(l, kEndOfWord)) {
      throw VocabError("merge " + std::to_string(i) + " continues past the end of a word");
    }
    add(l + r);
  }
  const auto& specials = special_tokens();
  for (std::size_t i = 0; i < specials.size(); ++i) {
    ids_.emplace(specials[i], static_cast<std::int64_t>(i));
  }
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (ids_.count(tokens_[i]) != 0) throw VocabError("token '" + tokens_[i] + "' is reserved");
    ids_.emplace(tokens_[i], static_cast<std::int64_t>(specials.size() + i));
    longest_ = std::max(longest_, tokens_[i].size());
  }
}

bool BpeVocab::contains(std::string_view token) const {
  const auto it = ids_.find(std::string(token));
  return it != ids_.end() && it->second >= static_cast<std::int64_t>(special_tokens().size());
}

const std::vector<std::string>& BpeVocab::special_tokens() {
  static const std::vector<std::string> specials{"<pad>", "<bos>", "<eos>", std::string(kUnknown),
                                                 std::string(kUnknownFinal)};
  return specials;
}

std::int64_t BpeVocab::id(std::string_view token) const {
  const auto it = ids_.find(std::string(token));
  if (it == ids_.end()) throw VocabError("token '" + std::string(token) + "' is not in the vocabulary");
  return it->second;
}

void BpeVocab::save(std::ostream& out) const {
  out << "bpe-vocab 1\n";
  out << "limit " << limit_ << '\n';
  out << "base " << base_.size() << '\n';
  for (const auto& t : base_) out << t << '\n';
  out << "merges " << merges_.size() << '\n';
  for (const auto& [l, r] : merges_) out << l << ' ' << r << '\n';
}

void BpeVocab::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  save(out);
  if (!out) throw IoError("failed writing '" + path + "'");
}

BpeVocab BpeVocab::load(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next = [&]() -> std::string& {
    if (!std::getline(in, line)) throw VocabError("vocabulary ends early at line " + std::to_string(line_no + 1));
    ++line_no;
    return line;
  };
  auto counted = [&](std::string_view key) {
    std::istringstream fields(next());
    std::string name;
    std::size_t value = 0;
    if (!(fields >> name >> value) || name != key) {
      throw VocabError("line " + std::to_string(line_no) + ": expected '" + std::string(key) + " <count>'");
    }
    return value;
  };
  if (next() != "bpe-vocab 1") throw VocabError("not a bpe-vocab 1 file");
  const std::size_t limit = counted("limit");
  const std::size_t base_count = counted("base");
  std::vector<std::string> base;
  base.reserve(base_count);
  for (std::size_t i = 0; i < base_count; ++i) {
    const auto& t = next();
    if (t.empty() || t.find(' ') != std::string::npos) {
      throw VocabError("line " + std::to_string(line_no) + ": malformed base token");
    }
    base.push_back(t);
  }
  const std::size_t merge_count = counted("merges");
  std::vector<Merge> merges;
  merges.reserve(merge_count);
  for (std::size_t i = 0; i < merge_count; ++i) {
    const auto& l = next();
    const auto space = l.find(' ');
    if (space == std::string::npos || space == 0 || space + 1 == l.size() ||
        l.find(' ', space + 1) != std::string::npos) {
      throw VocabError("line " + std::to_string(line_no) + ": expected '<left> <right>'");
    }
    merges.emplace_back(l.substr(0, space), l.substr(space + 1));
  }
  return BpeVocab(limit, std::move(base), std::move(merges));
}

BpeVocab BpeVocab::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  return load(in);
}

BpeVocab train_bpe(const std::vector<std::string>& texts, std::size_t limit) {
  std::map<std::string, std::size_t> word_counts;
  for (const auto& text : texts) {
    for (const auto& w : split_words(text)) ++word_counts[w];
  }

  std::set<std::string> chars;
  for (const auto& c : characters(default_alphabet())) chars.insert(c);
  for (const auto& [w, n] : word_counts) {
    for (auto& c : characters(w)) chars.insert(std::move(c));
  }
  std::vector<std::string> base;
  for (const auto& c : chars) {
    base.push_back(c);
    base.push_back(c + std::string(kEndOfWord));
  }

  struct Word {
    std::vector<std::string> symbols;
    std::size_t count;
  };
  std::vector<Word> words;
  for (const auto& [w, n] : word_counts) {
    auto symbols = word_symbols(w);
    if (symbols.size() > 1) words.push_back({std::move(symbols), n});
  }

  std::set<std::string> tokens(base.begin(), base.end());
  std::vector<Merge> merges;
  while (tokens.size() < limit) {
    std::map<Merge, std::size_t> pairs;
    for (const auto& word : words) {
      for (std::size_t i = 0; i + 1 < word.symbols.size(); ++i) {
        pairs[{word.symbols[i], word.symbols[i + 1]}] += word.count;
      }
    }
    if (pairs.empty()) break;
    auto best = pairs.begin();
    for (auto it = pairs.begin(); it != pairs.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    const Merge merge = best->first;
    const std::string joined = merge.first + merge.second;
    for (auto& word : words) {
      auto& s = word.symbols;
      std::vector<std::string> merged;
      merged.reserve(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (i + 1 < s.size() && s[i] == merge.first && s[i + 1] == merge.second) {
          merged.push_back(joined);
          ++i;
        } else {
          merged.push_back(std::move(s[i]));
        }
      }
      s = std::move(merged);
    }
    words.erase(std::remove_if(words.begin(), words.end(),
                               [](const Word& w) { return w.symbols.size() < 2; }),
                words.end());
    merges.push_back(merge);
    tokens.insert(joined);
  }
  return BpeVocab(limit, std::move(base), std::move(merges));
}

std::vector<std::string> encode(std::string_view text, const BpeVocab& vocab) {
  std::vector<std::string> out;
  for (const auto& w : split_words(text)) {
    const auto symbols = word_symbols(w);
    std::size_t i = 0;
    while (i < symbols.size()) {
      std::size_t best = 0;
      std::string piece;
      std::string candidate;
      for (std::size_t j = i; j < symbols.size(); ++j) {
        candidate += symbols[j];
        if (candidate.size() > vocab.longest_token()) break;
        if (vocab.contains(candidate)) {
          best = j + 1;
          piece = candidate;
        }
      }
      if (best == 0) {
        out.emplace_back(i + 1 == symbols.size() ? kUnknownFinal : kUnknown);
        ++i;
      } else {
        out.push_back(std::move(piece));
        i = best;
      }
    }
  }
  return out;
}

std::vector<std::int64_t> encode_ids(const std::vector<std::string>& tokens, const BpeVocab& vocab) {
  std::vector<std::int64_t> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(vocab.id(t));
  return ids;
}

Decoded decode(const std::vector<std::string>& tokens) {
  static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";
  Decoded result;
  std::vector<std::string> words;
  std::string current;
  bool open = false;
  for (const auto& t : tokens) {
    if (t == "<pad>" || t == "<bos>" || t == "<eos>") continue;
    std::string_view body = t;
    bool final = false;
    if (t == kUnknown || t == kUnknownFinal) {
      ++result.unknown_count;
      body = kReplacement;
      final = t == kUnknownFinal;
    } else if (ends_with(body, kEndOfWord)) {
      body.remove_suffix(kEndOfWord.size());
      final = true;
    }
    current += body;
    open = true;
    if (final) {
      words.push_back(std::move(current));
      current.clear();
      open = false;
    }
  }
  if (open) words.push_back(std::move(current));
  result.text = join(words);
  return result;
}

}  // namespace stlcorpus
