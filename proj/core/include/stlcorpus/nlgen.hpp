#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stlcorpus/fragment.hpp"
#include "stlcorpus/lexicon.hpp"
#include "stlcorpus/rng.hpp"
#include "stlcorpus/surface.hpp"

namespace stlcorpus {

/// Where an atomic proposition sits: left of `->`, right of `->`, or directly
/// under a top-level G/F.
enum class Position { Condition, Obligation, Standalone };

enum class VerbForm { Present, Modal, Past, Perfect, ModalPerfect };

/// Temporal setting of a clause: ordinary, inside a past operator (O, H, left
/// side of S), or the anchoring event on the right of S.
enum class Tense { Plain, Past, PastEvent };

std::string_view to_string(Wrapper wrapper);  // "none", "not", "rise", ...
std::string_view to_string(VerbForm form);    // "present", "modal", ...

struct GenerationInfo {
  /// Translation strategy; names the lexicon section family, e.g. `clause.rise`.
  std::string index;
  std::vector<std::string> identifiers;
  std::vector<std::string> numbers;
  Tokens stl_expression;
  Atom atom;
};

struct PredicateCommands {
  VerbForm verb_form = VerbForm::Present;
  std::optional<std::string> modal_verb;
  /// An `adverb.immediate` template wrapping the clause as `{C}`.
  std::optional<std::string> adverbial_modifier;
};

struct GeneratorOptions {
  /// Chance of a modal verb in obligations outside immediate responses
  /// (immediate-response obligations always get one).
  double obligation_modal_probability = 0.8;
  /// Upper bound on distinct sentences per translation set.
  std::size_t max_sentences = 4;
  /// Random constructions attempted per translation set.
  std::size_t attempts = 8;
};

/// Chooses the strategy and verb commands for one atomic proposition.
std::pair<GenerationInfo, PredicateCommands> handle(const Lexicon& lexicon, const Atom& atom,
                                                    Position position, Category category,
                                                    Tense tense, Rng& rng,
                                                    const GeneratorOptions& options = {});

/// Every clause the lexicon can produce for `info` under `cmds`, weighted by
/// the product of the chosen phrase weights. Throws LexiconGap.
std::vector<PhraseEntry> refine(const Lexicon& lexicon, const GenerationInfo& info,
                                const PredicateCommands& cmds);

/// One clause drawn from the distribution refine() enumerates.
std::string realize(const Lexicon& lexicon, const GenerationInfo& info,
                    const PredicateCommands& cmds, Rng& rng);

/// Substitutes `{NAME}` slots; unknown placeholders are left in place.
std::string fill(std::string_view templ, const std::vector<std::pair<std::string, std::string>>& slots);

/// Capitalizes the first word unless it belongs to `verbatim` (identifiers
/// are kept as written), normalizes spaces, and adds the final period.
std::string finish_sentence(const std::string& body, const std::vector<std::string>& verbatim);

struct TranslationSet {
  FragmentFormula formula;
  std::vector<std::string> sentences;
};

class Translator {
 public:
  explicit Translator(const Lexicon& lexicon, GeneratorOptions options = {});

  const Lexicon& lexicon() const noexcept { return *lexicon_; }
  const GeneratorOptions& options() const noexcept { return options_; }

  /// One randomly constructed sentence for `formula`.
  std::string sentence(const FragmentFormula& formula, Rng& rng) const;
  /// English for a temporal phrase or nested phrase alone (no final period).
  std::string temporal_clause(const TemporalPhrase& tp, Position position, Category category, Rng& rng) const;
  std::string temporal_clause(const NestedTemporalPhrase& ntp, Position position, Category category, Rng& rng) const;

  /// Distinct sentences from repeated constructions; never empty.
  TranslationSet translate(const FragmentFormula& formula, Rng& rng) const;

 private:
  enum class Placement { Either, Prefix, Suffix };

  std::string pick(const std::string& section, Rng& rng) const;
  std::string atom_clause(const Atom& atom, Position position, Category category, Tense tense, Rng& rng) const;
  std::string simple_phrase(const SimplePhrase& sp, Position position, Category category, Rng& rng) const;
  std::string condition(const Condition& c, Category category, Rng& rng) const;
  std::string unary(TemporalOp op, const Interval& iv, const std::string& clause, Placement placement,
                    Rng& rng) const;

  const Lexicon* lexicon_;
  GeneratorOptions options_;
};

/// `k` distinct sentences drawn without replacement (all of them if fewer).
std::vector<std::string> sample_translation(const TranslationSet& set, std::size_t k, Rng& rng);

/// The values a faithful sentence must mention: every signal and mode name,
/// every constant, every positive lower bound and every finite upper bound.
struct Mentions {
  std::vector<std::string> identifiers;
  std::vector<std::string> numbers;
};
Mentions expected_mentions(const FragmentFormula& formula);

/// True when every expected identifier occurs as a word exactly as often as
/// in the formula, and the numerals of the sentence are exactly the expected
/// numbers (as multisets). Trailing punctuation is ignored.
bool is_faithful(const FragmentFormula& formula, const std::string& sentence);

}  // namespace stlcorpus
