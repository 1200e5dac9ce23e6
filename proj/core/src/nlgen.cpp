#include "stlcorpus/nlgen.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "stlcorpus/error.hpp"

namespace stlcorpus {

std::string_view to_string(Wrapper wrapper) {
  switch (wrapper) {
    case Wrapper::None: return "none";
    case Wrapper::Not: return "not";
    case Wrapper::Rise: return "rise";
    case Wrapper::Fall: return "fall";
    case Wrapper::NotRise: return "notrise";
    case Wrapper::NotFall: return "notfall";
  }
  return "none";
}

std::string_view to_string(VerbForm form) {
  switch (form) {
    case VerbForm::Present: return "present";
    case VerbForm::Modal: return "modal";
    case VerbForm::Past: return "past";
    case VerbForm::Perfect: return "perfect";
    case VerbForm::ModalPerfect: return "modalperfect";
  }
  return "present";
}

namespace {

using Slots = std::vector<std::pair<std::string, std::string>>;

const PhraseEntry& draw(const std::vector<PhraseEntry>& entries, Rng& rng) {
  double total = 0;
  for (const auto& e : entries) total += e.weight;
  double r = rng.uniform() * total;
  const PhraseEntry* last = &entries.front();
  for (const auto& e : entries) {
    if (e.weight <= 0) continue;
    last = &e;
    if (r < e.weight) return e;
    r -= e.weight;
  }
  return *last;
}

// Draws from the union of two sections, each entry keeping its own weight.
const PhraseEntry& draw_union(const std::vector<PhraseEntry>& a, const std::vector<PhraseEntry>* b,
                              Rng& rng) {
  if (!b) return draw(a, rng);
  double total_a = 0;
  double total_b = 0;
  for (const auto& e : a) total_a += e.weight;
  for (const auto& e : *b) total_b += e.weight;
  const double r = rng.uniform() * (total_a + total_b);
  return r < total_a ? draw(a, rng) : draw(*b, rng);
}

std::string_view comparison_key(ComparisonOp op) {
  switch (op) {
    case ComparisonOp::Lt: return "lt";
    case ComparisonOp::Le: return "le";
    case ComparisonOp::Eq: return "eq";
    case ComparisonOp::Ge: return "ge";
    case ComparisonOp::Gt: return "gt";
  }
  return "eq";
}

std::string comparison_section(const Predicate& p) {
  if (p.rhs.is_mode()) return "compare.mode";
  return "compare." + std::string(comparison_key(p.op));
}

bool uses_change_phrasing(const Atom& atom) {
  return atom.wrapper == Wrapper::Rise && atom.predicate.op == ComparisonOp::Eq;
}

std::string interval_shape(const Interval& iv) {
  if (iv.is_untimed()) return "untimed";
  if (!iv.hi) return "from";
  if (iv.lo == Rational(0)) return "upto";
  return "between";
}

std::string strip_punctuation(std::string_view word) {
  std::size_t end = word.size();
  while (end > 0 && std::string_view(",.;:!?").find(word[end - 1]) != std::string_view::npos) --end;
  return std::string(word.substr(0, end));
}

bool is_numeral(std::string_view word) { return Rational::from_decimal(word).has_value(); }

}  // namespace

std::string fill(std::string_view templ, const Slots& slots) {
  std::string out;
  out.reserve(templ.size() + 32);
  std::size_t i = 0;
  while (i < templ.size()) {
    if (templ[i] == '{') {
      const auto close = templ.find('}', i);
      if (close != std::string_view::npos) {
        const std::string_view name = templ.substr(i + 1, close - i - 1);
        auto it = std::find_if(slots.begin(), slots.end(), [&](const auto& s) { return s.first == name; });
        if (it != slots.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out += templ[i++];
  }
  return out;
}

std::string finish_sentence(const std::string& body, const std::vector<std::string>& verbatim) {
  std::string text = join(split_words(body));
  if (text.empty()) return text;
  const std::string first = strip_punctuation(text.substr(0, text.find(' ')));
  if (std::find(verbatim.begin(), verbatim.end(), first) == verbatim.end()) {
    text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  }
  text += '.';
  return text;
}

std::pair<GenerationInfo, PredicateCommands> handle(const Lexicon& lexicon, const Atom& atom,
                                                    Position position, Category category,
                                                    Tense tense, Rng& rng,
                                                    const GeneratorOptions& options) {
  GenerationInfo info;
  info.index = "clause." + std::string(to_string(atom.wrapper));
  info.identifiers.push_back(atom.predicate.signal);
  if (atom.predicate.rhs.is_mode()) {
    info.identifiers.push_back(atom.predicate.rhs.text);
  } else {
    info.numbers.push_back(atom.predicate.rhs.text);
  }
  info.stl_expression = render(*to_node(atom));
  info.atom = atom;

  PredicateCommands cmds;
  const bool obligation = position == Position::Obligation;
  const bool immediate = category == Category::ImmediateResponse;
  bool modal = false;
  if (obligation && tense != Tense::PastEvent) {
    modal = immediate || rng.bernoulli(options.obligation_modal_probability);
  }
  switch (tense) {
    case Tense::Plain: cmds.verb_form = modal ? VerbForm::Modal : VerbForm::Present; break;
    case Tense::Past: cmds.verb_form = modal ? VerbForm::ModalPerfect : VerbForm::Perfect; break;
    case Tense::PastEvent: cmds.verb_form = VerbForm::Past; break;
  }
  if (modal) cmds.modal_verb = draw(lexicon.section("modal"), rng).text;
  if (obligation && immediate) {
    const std::string& adverb = draw(lexicon.section("adverb.immediate"), rng).text;
    if (adverb != "{C}") cmds.adverbial_modifier = adverb;
  }
  return {std::move(info), std::move(cmds)};
}

namespace {

struct ClauseSources {
  const std::vector<PhraseEntry>* subject;
  const std::vector<PhraseEntry>* comparison;
  const std::vector<PhraseEntry>* clause;
  const std::vector<PhraseEntry>* change;  // rising edge of an equality, optional
};

ClauseSources sources(const Lexicon& lexicon, const GenerationInfo& info, const PredicateCommands& cmds) {
  const std::string form(to_string(cmds.verb_form));
  ClauseSources s{};
  s.subject = &lexicon.section("subject");
  s.comparison = &lexicon.section(comparison_section(info.atom.predicate));
  s.clause = &lexicon.section(info.index + "." + form);
  const std::string change = "clause.rise_eq." + form;
  if (uses_change_phrasing(info.atom) && lexicon.has(change)) s.change = &lexicon.section(change);
  return s;
}

std::string build_clause(const std::string& clause_templ, const std::string& subject_templ,
                         const std::string& cmp_templ, const GenerationInfo& info,
                         const PredicateCommands& cmds) {
  const Predicate& p = info.atom.predicate;
  const std::string subject = fill(subject_templ, {{"ID", p.signal}});
  const std::string cmp = fill(cmp_templ, {{"OBJ", p.rhs.text}});
  std::string clause = fill(clause_templ, {{"SUBJ", subject},
                                           {"CMP", cmp},
                                           {"OBJ", p.rhs.text},
                                           {"MODAL", cmds.modal_verb.value_or("")}});
  if (cmds.adverbial_modifier) clause = fill(*cmds.adverbial_modifier, {{"C", clause}});
  return clause;
}

double total_weight(const std::vector<PhraseEntry>& entries) {
  double t = 0;
  for (const auto& e : entries) t += e.weight;
  return t;
}

}  // namespace

std::vector<PhraseEntry> refine(const Lexicon& lexicon, const GenerationInfo& info,
                                const PredicateCommands& cmds) {
  const ClauseSources s = sources(lexicon, info, cmds);
  std::vector<const PhraseEntry*> clauses;
  for (const auto& e : *s.clause) clauses.push_back(&e);
  if (s.change) {
    for (const auto& e : *s.change) clauses.push_back(&e);
  }
  double clause_total = total_weight(*s.clause) + (s.change ? total_weight(*s.change) : 0);
  const double subject_total = total_weight(*s.subject);
  const double cmp_total = total_weight(*s.comparison);

  std::map<std::string, double> merged;
  for (const PhraseEntry* c : clauses) {
    if (c->weight <= 0) continue;
    const bool needs_subject = c->text.find("{SUBJ}") != std::string::npos;
    const bool needs_cmp = c->text.find("{CMP}") != std::string::npos;
    for (const auto& subj : *s.subject) {
      if (subj.weight <= 0) continue;
      for (const auto& cmp : *s.comparison) {
        if (cmp.weight <= 0) continue;
        const double w = (c->weight / clause_total) * (subj.weight / subject_total) * (cmp.weight / cmp_total);
        merged[build_clause(c->text, needs_subject ? subj.text : "", needs_cmp ? cmp.text : "", info, cmds)] += w;
      }
    }
  }
  std::vector<PhraseEntry> out;
  out.reserve(merged.size());
  for (auto& [text, w] : merged) out.push_back({w, text});
  return out;
}

std::string realize(const Lexicon& lexicon, const GenerationInfo& info, const PredicateCommands& cmds,
                    Rng& rng) {
  const ClauseSources s = sources(lexicon, info, cmds);
  const PhraseEntry& clause = draw_union(*s.clause, s.change, rng);
  const PhraseEntry& subject = draw(*s.subject, rng);
  const PhraseEntry& cmp = draw(*s.comparison, rng);
  return build_clause(clause.text, subject.text, cmp.text, info, cmds);
}

Translator::Translator(const Lexicon& lexicon, GeneratorOptions options)
    : lexicon_(&lexicon), options_(options) {}

std::string Translator::pick(const std::string& section, Rng& rng) const {
  return draw(lexicon_->section(section), rng).text;
}

std::string Translator::atom_clause(const Atom& atom, Position position, Category category, Tense tense,
                                    Rng& rng) const {
  const auto [info, cmds] = handle(*lexicon_, atom, position, category, tense, rng, options_);
  return realize(*lexicon_, info, cmds, rng);
}

std::string Translator::simple_phrase(const SimplePhrase& sp, Position position, Category category,
                                      Rng& rng) const {
  const std::string lhs = atom_clause(sp.lhs, position, category, Tense::Plain, rng);
  if (!sp.combination) return lhs;
  const std::string rhs = atom_clause(sp.combination->rhs, position, category, Tense::Plain, rng);
  const char* section = sp.combination->connective == Connective::And ? "sp.and" : "sp.or";
  return fill(pick(section, rng), {{"A", lhs}, {"B", rhs}});
}

std::string Translator::unary(TemporalOp op, const Interval& iv, const std::string& clause,
                              Placement placement, Rng& rng) const {
  const std::string base = "temporal." + std::string(to_string(op)) + "." + interval_shape(iv);
  const std::string prefix = base + ".prefix";
  const std::string suffix = base + ".suffix";
  const PhraseEntry* entry = nullptr;
  switch (placement) {
    case Placement::Prefix: entry = &draw(lexicon_->section(prefix), rng); break;
    case Placement::Suffix: entry = &draw(lexicon_->section(suffix), rng); break;
    case Placement::Either:
      entry = &draw_union(lexicon_->section(prefix), &lexicon_->section(suffix), rng);
      break;
  }
  return fill(entry->text, {{"C", clause},
                            {"T1", iv.lo.to_string()},
                            {"T2", iv.hi ? iv.hi->to_string() : ""},
                            {"UNIT", pick("unit", rng)}});
}

std::string Translator::temporal_clause(const TemporalPhrase& tp, Position position, Category category,
                                        Rng& rng) const {
  // Under a prefix the modal verb, if any, moves to the prefix template.
  const Position inner = tp.prefix == Wrapper::None ? position : Position::Condition;
  std::string core;
  if (!is_binary(tp.op)) {
    const Tense tense = is_past(tp.op) ? Tense::Past : Tense::Plain;
    core = unary(tp.op, tp.interval, atom_clause(tp.first, inner, category, tense, rng), Placement::Either, rng);
  } else {
    const bool since = tp.op == TemporalOp::S;
    const std::string a = atom_clause(tp.first, inner, category, since ? Tense::Past : Tense::Plain, rng);
    const std::string b =
        atom_clause(*tp.second, Position::Condition, category, since ? Tense::PastEvent : Tense::Plain, rng);
    const std::string section = "temporal." + std::string(to_string(tp.op)) + "." + interval_shape(tp.interval);
    core = fill(pick(section, rng), {{"A", a},
                                     {"B", b},
                                     {"T1", tp.interval.lo.to_string()},
                                     {"T2", tp.interval.hi ? tp.interval.hi->to_string() : ""},
                                     {"UNIT", pick("unit", rng)}});
  }
  if (tp.prefix == Wrapper::None) return core;
  const bool modal = position == Position::Obligation && rng.bernoulli(options_.obligation_modal_probability);
  const std::string section = "prefix." + std::string(to_string(tp.prefix)) + (modal ? ".modal" : ".present");
  return fill(pick(section, rng), {{"T", core}, {"MODAL", modal ? pick("modal", rng) : ""}});
}

std::string Translator::temporal_clause(const NestedTemporalPhrase& ntp, Position position, Category category,
                                        Rng& rng) const {
  const TemporalOp outer = ntp.order == Nesting::FG ? TemporalOp::F : TemporalOp::G;
  const TemporalOp inner = ntp.order == Nesting::FG ? TemporalOp::G : TemporalOp::F;
  const std::string clause = atom_clause(ntp.body, position, category, Tense::Plain, rng);
  const std::string inside = unary(inner, ntp.inner, clause, Placement::Suffix, rng);
  return unary(outer, ntp.outer, inside, Placement::Prefix, rng);
}

std::string Translator::condition(const Condition& c, Category category, Rng& rng) const {
  if (const auto* sp = std::get_if<SimplePhrase>(&c)) return simple_phrase(*sp, Position::Condition, category, rng);
  return temporal_clause(std::get<TemporalPhrase>(c), Position::Condition, category, rng);
}

std::string Translator::sentence(const FragmentFormula& formula, Rng& rng) const {
  const Category category = formula.category();
  std::string body = std::visit(
      [&](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, InvarianceReachability>) {
          const std::string sp = simple_phrase(f.body, Position::Standalone, category, rng);
          if (f.op == TemporalOp::G && f.interval.is_untimed()) {
            return fill(pick("global.invariance", rng), {{"S", sp}});
          }
          return unary(f.op, f.interval, sp, Placement::Either, rng);
        } else if constexpr (std::is_same_v<T, ImmediateResponse>) {
          const std::string p = simple_phrase(f.condition, Position::Condition, category, rng);
          const std::string q = simple_phrase(f.response, Position::Obligation, category, rng);
          const std::string s = fill(pick("implication.immediate", rng), {{"P", p}, {"Q", q}});
          return fill(pick("global.response", rng), {{"S", s}});
        } else if constexpr (std::is_same_v<T, TemporalResponse>) {
          const std::string p = condition(f.condition, category, rng);
          const std::string q = temporal_clause(f.response, Position::Obligation, category, rng);
          const std::string s = fill(pick("implication.temporal", rng), {{"P", p}, {"Q", q}});
          return fill(pick("global.response", rng), {{"S", s}});
        } else {
          const std::string p = condition(f.condition, category, rng);
          const std::string q = temporal_clause(f.response, Position::Obligation, category, rng);
          const std::string s = fill(pick("implication.stabilization", rng), {{"P", p}, {"Q", q}});
          return fill(pick("global.response", rng), {{"S", s}});
        }
      },
      formula.payload);
  return finish_sentence(body, expected_mentions(formula).identifiers);
}

TranslationSet Translator::translate(const FragmentFormula& formula, Rng& rng) const {
  TranslationSet set{formula, {}};
  const std::size_t attempts = std::max<std::size_t>(options_.attempts, 1);
  const std::size_t limit = std::max<std::size_t>(options_.max_sentences, 1);
  for (std::size_t i = 0; i < attempts && set.sentences.size() < limit; ++i) {
    std::string s = sentence(formula, rng);
    if (std::find(set.sentences.begin(), set.sentences.end(), s) == set.sentences.end()) {
      set.sentences.push_back(std::move(s));
    }
  }
  return set;
}

std::vector<std::string> sample_translation(const TranslationSet& set, std::size_t k, Rng& rng) {
  if (k == 0) throw Error("sample_translation: k must be at least 1");
  std::vector<std::string> pool = set.sentences;
  const std::size_t n = std::min(k, pool.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(i),
                                                            static_cast<std::int64_t>(pool.size()) - 1));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(n);
  return pool;
}

namespace {

void collect_mentions(const Node& node, Mentions& out) {
  if (node.kind() == NodeKind::Atom) {
    const Predicate& p = node.predicate();
    out.identifiers.push_back(p.signal);
    if (p.rhs.is_mode()) {
      out.identifiers.push_back(p.rhs.text);
    } else {
      out.numbers.push_back(p.rhs.text);
    }
    return;
  }
  if (is_temporal(node.kind())) {
    const Interval& iv = node.interval();
    if (iv.lo > Rational(0)) out.numbers.push_back(iv.lo.to_string());
    if (iv.hi) out.numbers.push_back(iv.hi->to_string());
  }
  if (node.arity() >= 1) collect_mentions(*node.lhs(), out);
  if (node.arity() == 2) collect_mentions(*node.rhs(), out);
}

}  // namespace

Mentions expected_mentions(const FragmentFormula& formula) {
  Mentions m;
  collect_mentions(*to_node(formula), m);
  return m;
}

bool is_faithful(const FragmentFormula& formula, const std::string& sentence) {
  Mentions expected = expected_mentions(formula);
  std::map<std::string, int> words;
  std::vector<std::string> numerals;
  for (const auto& raw : split_words(sentence)) {
    std::string w = strip_punctuation(raw);
    if (is_numeral(w)) numerals.push_back(w);
    ++words[std::move(w)];
  }
  std::map<std::string, int> ids;
  for (const auto& id : expected.identifiers) ++ids[id];
  for (const auto& [id, count] : ids) {
    auto it = words.find(id);
    if (it == words.end() || it->second != count) return false;
  }
  std::sort(numerals.begin(), numerals.end());
  std::sort(expected.numbers.begin(), expected.numbers.end());
  return numerals == expected.numbers;
}

}  // namespace stlcorpus
