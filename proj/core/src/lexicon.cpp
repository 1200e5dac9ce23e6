#include "stlcorpus/lexicon.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "stlcorpus/error.hpp"

namespace stlcorpus {

namespace data {
extern const char* const kLexicon;
}

Lexicon Lexicon::parse(std::istream& in) {
  Lexicon lex;
  std::string line;
  std::string current;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    if (line[first] == '[') {
      const auto close = line.find(']', first);
      if (close == std::string::npos) {
        throw LexiconError("line " + std::to_string(line_no) + ": unterminated section header");
      }
      current = line.substr(first + 1, close - first - 1);
      lex.sections_[current];
      continue;
    }
    if (current.empty()) {
      throw LexiconError("line " + std::to_string(line_no) + ": entry before any section");
    }
    const auto tab = line.find('\t', first);
    const std::string weight_text = line.substr(first, tab == std::string::npos ? std::string::npos : tab - first);
    double weight = 0;
    const char* end = weight_text.data() + weight_text.size();
    auto [ptr, ec] = std::from_chars(weight_text.data(), end, weight);
    if (ec != std::errc() || ptr != end || weight < 0) {
      throw LexiconError("line " + std::to_string(line_no) + ": bad weight '" + weight_text + "'");
    }
    std::string text = tab == std::string::npos ? std::string() : line.substr(tab + 1);
    lex.add(current, PhraseEntry{weight, std::move(text)});
  }
  return lex;
}

Lexicon Lexicon::parse_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse(in);
}

Lexicon Lexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon '" + path + "'");
  return parse(in);
}

const Lexicon& Lexicon::builtin() {
  static const Lexicon lex = parse_string(data::kLexicon);
  return lex;
}

bool Lexicon::has(const std::string& section) const {
  auto it = sections_.find(section);
  if (it == sections_.end()) return false;
  for (const auto& e : it->second) {
    if (e.weight > 0) return true;
  }
  return false;
}

const std::vector<PhraseEntry>& Lexicon::section(const std::string& section) const {
  if (!has(section)) throw LexiconGap(section);
  return sections_.at(section);
}

void Lexicon::add(const std::string& section, PhraseEntry entry) {
  sections_[section].push_back(std::move(entry));
}

std::vector<std::string> template_words(std::string_view text) {
  std::vector<std::string> out;
  std::string word;
  bool in_placeholder = false;
  auto flush = [&] {
    if (!word.empty()) out.push_back(word);
    word.clear();
  };
  for (char c : text) {
    if (in_placeholder) {
      if (c == '}') in_placeholder = false;
      continue;
    }
    if (c == '{') {
      flush();
      in_placeholder = true;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '\'' || c == '-') {
      word += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

std::set<std::string> Lexicon::words() const {
  std::set<std::string> out;
  for (const auto& [name, entries] : sections_) {
    for (const auto& e : entries) {
      for (auto& w : template_words(e.text)) out.insert(std::move(w));
    }
  }
  return out;
}

}  // namespace stlcorpus
