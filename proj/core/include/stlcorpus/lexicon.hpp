#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace stlcorpus {

/// One weighted phrase template. Placeholders are written `{NAME}`.
struct PhraseEntry {
  double weight = 1;
  std::string text;
};

/// Weighted phrase tables keyed by section name (`compare.gt`,
/// `clause.rise.modal`, ...).
///
/// File format: `[section]` headers followed by `weight<TAB>template` lines;
/// blank lines and lines starting with `#` are ignored. A template may be
/// empty, which lets a section offer "say nothing" as an option.
class Lexicon {
 public:
  static Lexicon parse(std::istream& in);
  static Lexicon parse_string(std::string_view text);
  static Lexicon load(const std::string& path);
  /// The lexicon shipped with the library.
  static const Lexicon& builtin();

  bool has(const std::string& section) const;
  /// Entries of a section with positive total weight; throws LexiconGap otherwise.
  const std::vector<PhraseEntry>& section(const std::string& section) const;
  const std::map<std::string, std::vector<PhraseEntry>>& sections() const noexcept {
    return sections_;
  }

  void add(const std::string& section, PhraseEntry entry);

  /// Lowercased words occurring in any template, placeholders and
  /// punctuation removed.
  std::set<std::string> words() const;

 private:
  std::map<std::string, std::vector<PhraseEntry>> sections_;
};

/// Lowercase words of a template with `{...}` placeholders dropped and
/// punctuation split off.
std::vector<std::string> template_words(std::string_view text);

}  // namespace stlcorpus
