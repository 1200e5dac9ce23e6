#include "stlcorpus/sampler.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "stlcorpus/error.hpp"
#include "stlcorpus/known_words.hpp"

namespace stlcorpus {

// ---------------------------------------------------------------------------
// Config file

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <typename Range>
std::string format_list(const Range& values) {
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += ", ";
    out += format_double(v);
  }
  return out;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_number(const std::string& key, const std::string& text) {
  double v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError(key + ": not a number: '" + text + "'");
  return v;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError(key + ": not an unsigned integer: '" + text + "'");
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(key, trim(item)));
  return out;
}

// Keys and the fields they bind to, in serialization order.
struct Binding {
  std::string key;
  std::function<std::string(const GeneratorConfig&)> get;
  std::function<void(GeneratorConfig&, const std::string&)> set;
};

Binding scalar(std::string key, double GeneratorConfig::*field) {
  return {key, [field](const GeneratorConfig& c) { return format_double(c.*field); },
          [field, key](GeneratorConfig& c, const std::string& v) { c.*field = parse_number(key, v); }};
}

template <std::size_t N>
Binding weight(std::string key, std::array<double, N> WeightTable::*table, std::size_t index) {
  return {key, [table, index](const GeneratorConfig& c) { return format_double((c.weights.*table)[index]); },
          [table, index, key](GeneratorConfig& c, const std::string& v) {
            (c.weights.*table)[index] = parse_number(key, v);
          }};
}

const std::vector<Binding>& bindings() {
  static const std::vector<Binding> all = [] {
    std::vector<Binding> b;
    const char* categories[] = {"invariance_reachability", "immediate_response", "temporal_response",
                                "stabilization_recurrence"};
    for (std::size_t i = 0; i < 4; ++i) b.push_back(weight("category." + std::string(categories[i]), &WeightTable::category, i));
    const char* temporal[] = {"F", "G", "O", "H", "U", "S"};
    for (std::size_t i = 0; i < 6; ++i) b.push_back(weight("temporal." + std::string(temporal[i]), &WeightTable::temporal, i));
    const char* comparison[] = {"lt", "le", "eq", "ge", "gt"};
    for (std::size_t i = 0; i < 5; ++i) b.push_back(weight("comparison." + std::string(comparison[i]), &WeightTable::comparison, i));
    const char* wrappers[] = {"none", "not", "rise", "fall", "not_rise", "not_fall"};
    for (std::size_t i = 0; i < 6; ++i) b.push_back(weight("wrapper." + std::string(wrappers[i]), &WeightTable::wrapper, i));
    for (std::size_t i = 0; i < 6; ++i) b.push_back(weight("prefix." + std::string(wrappers[i]), &WeightTable::prefix, i));
    const char* boolean[] = {"single", "and", "or"};
    for (std::size_t i = 0; i < 3; ++i) b.push_back(weight("boolean." + std::string(boolean[i]), &WeightTable::boolean, i));

    b.push_back({"identifier.length_weights",
                 [](const GeneratorConfig& c) { return format_list(c.identifier_length_weights); },
                 [](GeneratorConfig& c, const std::string& v) {
                   c.identifier_length_weights = parse_list("identifier.length_weights", v);
                 }});
    b.push_back(scalar("identifier.underscore_probability", &GeneratorConfig::underscore_probability));
    b.push_back({"constant.digit_weights",
                 [](const GeneratorConfig& c) { return format_list(c.constant_digit_weights); },
                 [](GeneratorConfig& c, const std::string& v) {
                   c.constant_digit_weights = parse_list("constant.digit_weights", v);
                 }});
    b.push_back(scalar("constant.decimal_point_probability", &GeneratorConfig::decimal_point_probability));
    b.push_back(scalar("constant.mode_name_probability", &GeneratorConfig::mode_name_probability));
    b.push_back({"interval.min", [](const GeneratorConfig& c) { return std::to_string(c.interval_min); },
                 [](GeneratorConfig& c, const std::string& v) {
                   c.interval_min = static_cast<std::int64_t>(parse_unsigned("interval.min", v));
                 }});
    b.push_back({"interval.max", [](const GeneratorConfig& c) { return std::to_string(c.interval_max); },
                 [](GeneratorConfig& c, const std::string& v) {
                   c.interval_max = static_cast<std::int64_t>(parse_unsigned("interval.max", v));
                 }});
    b.push_back(scalar("interval.zero_lower_bound_probability", &GeneratorConfig::zero_lower_bound_probability));
    b.push_back(scalar("interval.untimed_probability", &GeneratorConfig::untimed_probability));
    b.push_back(scalar("condition.temporal_probability", &GeneratorConfig::temporal_condition_probability));
    b.push_back({"formula.max_subformulas", [](const GeneratorConfig& c) { return std::to_string(c.max_subformulas); },
                 [](GeneratorConfig& c, const std::string& v) {
                   c.max_subformulas = parse_unsigned("formula.max_subformulas", v);
                 }});
    b.push_back({"seed", [](const GeneratorConfig& c) { return std::to_string(c.seed); },
                 [](GeneratorConfig& c, const std::string& v) { c.seed = parse_unsigned("seed", v); }});
    return b;
  }();
  return all;
}

void require_weights(const std::string& name, const double* begin, const double* end) {
  bool positive = false;
  for (const double* w = begin; w != end; ++w) {
    if (!(*w >= 0) || !std::isfinite(*w)) throw ConfigError(name + ": weights must be finite and non-negative");
    positive = positive || *w > 0;
  }
  if (!positive) throw ConfigError(name + ": needs at least one positive weight");
}

template <typename C>
void require_weights(const std::string& name, const C& c) {
  require_weights(name, c.data(), c.data() + c.size());
}

void require_probability(const std::string& name, double p) {
  if (!(p >= 0 && p <= 1)) throw ConfigError(name + ": probability must lie in [0, 1]");
}

}  // namespace

void GeneratorConfig::validate() const {
  require_weights("category", weights.category);
  require_weights("temporal", weights.temporal);
  require_weights("comparison", weights.comparison);
  require_weights("wrapper", weights.wrapper);
  require_weights("prefix", weights.prefix);
  require_weights("boolean", weights.boolean);
  require_weights("identifier.length_weights", identifier_length_weights);
  require_weights("constant.digit_weights", constant_digit_weights);
  require_probability("identifier.underscore_probability", underscore_probability);
  require_probability("constant.decimal_point_probability", decimal_point_probability);
  require_probability("constant.mode_name_probability", mode_name_probability);
  require_probability("interval.zero_lower_bound_probability", zero_lower_bound_probability);
  require_probability("interval.untimed_probability", untimed_probability);
  require_probability("condition.temporal_probability", temporal_condition_probability);
  if (interval_min < 0 || interval_max <= interval_min) {
    throw ConfigError("interval: need 0 <= interval.min < interval.max");
  }
  // Formula heads need F or G; nested phrases need both.
  const auto& t = weights.temporal;
  if (weights.category[0] > 0 && t[0] + t[1] <= 0) {
    throw ConfigError("temporal: invariance/reachability needs a positive F or G weight");
  }
  if (weights.category[3] > 0 && t[0] + t[1] <= 0) {
    throw ConfigError("temporal: stabilization/recurrence needs a positive F or G weight");
  }
  if (max_subformulas < 2) throw ConfigError("formula.max_subformulas: must be at least 2");
}

std::string GeneratorConfig::serialize() const {
  std::string out;
  for (const auto& b : bindings()) out += b.key + " = " + b.get(*this) + "\n";
  return out;
}

GeneratorConfig GeneratorConfig::parse(std::string_view text) {
  GeneratorConfig config;
  std::map<std::string, const Binding*> by_key;
  for (const auto& b : bindings()) by_key[b.key] = &b;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    auto it = by_key.find(key);
    if (it == by_key.end()) throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    it->second->set(config, value);
  }
  config.validate();
  return config;
}

GeneratorConfig GeneratorConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string GeneratorConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return out;
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

constexpr std::string_view kLetters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
constexpr std::string_view kAlnum = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

char pick(Rng& rng, std::string_view alphabet) {
  return alphabet[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(alphabet.size()) - 1))];
}

TemporalOp future_head(Rng& rng, const WeightTable& w) {
  const double fg[] = {w.temporal[0], w.temporal[1]};
  return rng.weighted(fg) == 0 ? TemporalOp::F : TemporalOp::G;
}

}  // namespace

Sampler::Sampler(GeneratorConfig config) : Sampler(std::move(config), KnownWordSet::builtin()) {}

Sampler::Sampler(GeneratorConfig config, const KnownWordSet& known)
    : config_(std::move(config)), known_(&known) {
  config_.validate();
}

std::string Sampler::identifier_of_length(Rng& rng, std::size_t length) const {
  std::string name(length, 'x');
  for (int attempt = 0;; ++attempt) {
    name[0] = pick(rng, kLetters);
    for (std::size_t i = 1; i < length; ++i) {
      const bool interior = i + 1 < length;
      name[i] = interior && rng.bernoulli(config_.underscore_probability) ? '_' : pick(rng, kAlnum);
    }
    if (!known_->contains(name) || attempt > 10000) return name;
  }
}

std::string Sampler::sample_identifier(Rng& rng) const {
  const std::size_t length = rng.weighted(config_.identifier_length_weights) + 1;
  return identifier_of_length(rng, length);
}

std::string Sampler::sample_mode_name(Rng& rng) const {
  const std::size_t length = rng.weighted(config_.identifier_length_weights) + 1;
  for (;;) {
    std::string name = identifier_of_length(rng, length);
    name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    if (!known_->contains(name)) return name;
  }
}

std::string Sampler::sample_constant(Rng& rng) const {
  const auto digits = static_cast<std::int64_t>(rng.weighted(config_.constant_digit_weights) + 1);
  auto digit = [&](char lo) { return static_cast<char>(rng.uniform_int(lo, '9')); };
  std::string out;
  if (digits >= 2 && rng.bernoulli(config_.decimal_point_probability)) {
    const std::int64_t int_len = rng.uniform_int(1, digits - 1);
    out += digit(int_len == 1 ? '0' : '1');
    for (std::int64_t i = 1; i < int_len; ++i) out += digit('0');
    out += '.';
    for (std::int64_t i = int_len; i < digits - 1; ++i) out += digit('0');
    out += digit('1');  // no trailing zero after the point
    return out;
  }
  out += digit(digits == 1 ? '0' : '1');
  for (std::int64_t i = 1; i < digits; ++i) out += digit('0');
  return out;
}

Interval Sampler::sample_interval(Rng& rng) const {
  if (rng.bernoulli(config_.untimed_probability)) return Interval::untimed();
  const std::int64_t lo = rng.bernoulli(config_.zero_lower_bound_probability)
                              ? 0
                              : rng.uniform_int(config_.interval_min, config_.interval_max - 1);
  const std::int64_t hi = rng.uniform_int(lo + 1, config_.interval_max);
  return Interval::bounded(Rational(lo), Rational(hi));
}

Atom Sampler::sample_atom(Rng& rng) const {
  Atom atom;
  atom.wrapper = static_cast<Wrapper>(rng.weighted(config_.weights.wrapper));
  atom.predicate.signal = sample_identifier(rng);
  atom.predicate.op = static_cast<ComparisonOp>(rng.weighted(config_.weights.comparison));
  if (atom.predicate.op == ComparisonOp::Eq && rng.bernoulli(config_.mode_name_probability)) {
    atom.predicate.rhs = Operand::mode(sample_mode_name(rng));
  } else {
    atom.predicate.rhs = Operand::number(sample_constant(rng));
  }
  return atom;
}

SimplePhrase Sampler::sample_simple_phrase(Rng& rng) const {
  SimplePhrase sp;
  const std::size_t shape = rng.weighted(config_.weights.boolean);
  sp.lhs = sample_atom(rng);
  if (shape != 0) {
    const Connective c = shape == 1 ? Connective::And : Connective::Or;
    sp.combination = SimplePhrase::Combination{c, sample_atom(rng)};
  }
  return sp;
}

TemporalPhrase Sampler::sample_temporal_phrase(Rng& rng) const {
  TemporalPhrase tp;
  tp.prefix = static_cast<Wrapper>(rng.weighted(config_.weights.prefix));
  tp.op = static_cast<TemporalOp>(rng.weighted(config_.weights.temporal));
  tp.interval = sample_interval(rng);
  tp.first = sample_atom(rng);
  if (is_binary(tp.op)) tp.second = sample_atom(rng);
  return tp;
}

NestedTemporalPhrase Sampler::sample_nested(Rng& rng) const {
  NestedTemporalPhrase ntp;
  ntp.order = future_head(rng, config_.weights) == TemporalOp::F ? Nesting::FG : Nesting::GF;
  ntp.outer = sample_interval(rng);
  ntp.inner = sample_interval(rng);
  ntp.body = sample_atom(rng);
  return ntp;
}

Condition Sampler::sample_condition(Rng& rng) const {
  if (rng.bernoulli(config_.temporal_condition_probability)) return sample_temporal_phrase(rng);
  return sample_simple_phrase(rng);
}

FragmentFormula Sampler::draw(Rng& rng) const {
  switch (static_cast<Category>(rng.weighted(config_.weights.category))) {
    case Category::InvarianceReachability: {
      InvarianceReachability f;
      f.op = future_head(rng, config_.weights);
      f.interval = sample_interval(rng);
      f.body = sample_simple_phrase(rng);
      return {f};
    }
    case Category::ImmediateResponse: {
      ImmediateResponse f;
      f.condition = sample_simple_phrase(rng);
      f.response = sample_simple_phrase(rng);
      return {f};
    }
    case Category::TemporalResponse: {
      TemporalResponse f;
      f.condition = sample_condition(rng);
      f.response = sample_temporal_phrase(rng);
      return {f};
    }
    case Category::StabilizationRecurrence: {
      StabilizationRecurrence f;
      f.condition = sample_condition(rng);
      f.response = sample_nested(rng);
      return {f};
    }
  }
  throw ConfigError("unreachable category");
}

FragmentFormula Sampler::sample_formula(Rng& rng) const {
  for (;;) {
    FragmentFormula f = draw(rng);
    if (node_count(*to_node(f)) <= config_.max_subformulas) return f;
  }
}

FragmentFormula Sampler::sample_at(std::uint64_t draw_index) const {
  Rng rng = Rng::for_stream(config_.seed, draw_index);
  return sample_formula(rng);
}

// ---------------------------------------------------------------------------
// Exact expectations

namespace {

// Distribution over formula size (node count). For each size s the entry
// holds P(size = s) and E[count_op * 1{size = s}] for every operator.
struct Mass {
  double p = 0;
  double atoms = 0;
  PerOperator<double> ops{};
};

using Dist = std::vector<Mass>;

void accumulate(Mass& into, const Mass& m, double scale) {
  into.p += m.p * scale;
  into.atoms += m.atoms * scale;
  for (std::size_t i = 0; i < kOperatorCount; ++i) into.ops[i] += m.ops[i] * scale;
}

Dist convolve(const Dist& a, const Dist& b) {
  Dist out(a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].p == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].p == 0) continue;
      Mass& m = out[i + j];
      m.p += a[i].p * b[j].p;
      m.atoms += a[i].atoms * b[j].p + b[j].atoms * a[i].p;
      for (std::size_t k = 0; k < kOperatorCount; ++k) m.ops[k] += a[i].ops[k] * b[j].p + b[j].ops[k] * a[i].p;
    }
  }
  return out;
}

Dist with_operator(const Dist& d, Operator op) {
  Dist out(d.size() + 1);
  for (std::size_t i = 0; i < d.size(); ++i) {
    out[i + 1] = d[i];
    out[i + 1].ops[index_of(op)] += d[i].p;
  }
  return out;
}

Dist mixture(const std::vector<std::pair<double, Dist>>& parts) {
  double total = 0;
  std::size_t size = 0;
  for (const auto& [w, d] : parts) {
    total += w;
    size = std::max(size, d.size());
  }
  Dist out(size);
  for (const auto& [w, d] : parts) {
    if (w <= 0) continue;
    for (std::size_t i = 0; i < d.size(); ++i) accumulate(out[i], d[i], w / total);
  }
  return out;
}

Dist wrapped(const Dist& core, Wrapper w) {
  switch (w) {
    case Wrapper::None: return core;
    case Wrapper::Not: return with_operator(core, Operator::Not);
    case Wrapper::Rise: return with_operator(core, Operator::Rise);
    case Wrapper::Fall: return with_operator(core, Operator::Fall);
    case Wrapper::NotRise: return with_operator(with_operator(core, Operator::Rise), Operator::Not);
    case Wrapper::NotFall: return with_operator(with_operator(core, Operator::Fall), Operator::Not);
  }
  return core;
}

Dist wrapper_mixture(const Dist& core, const std::array<double, 6>& weights) {
  std::vector<std::pair<double, Dist>> parts;
  for (Wrapper w : kWrappers) parts.emplace_back(weights[static_cast<std::size_t>(w)], wrapped(core, w));
  return mixture(parts);
}

Operator operator_of(TemporalOp op) {
  switch (op) {
    case TemporalOp::F: return Operator::F;
    case TemporalOp::G: return Operator::G;
    case TemporalOp::O: return Operator::O;
    case TemporalOp::H: return Operator::H;
    case TemporalOp::U: return Operator::U;
    case TemporalOp::S: return Operator::S;
  }
  return Operator::F;
}

struct Grammar {
  std::array<Dist, 4> categories;
};

Grammar grammar(const GeneratorConfig& config) {
  const WeightTable& w = config.weights;

  // A bare predicate: size 1, one comparison split by the comparison weights.
  double cmp_total = 0;
  for (double x : w.comparison) cmp_total += x;
  Dist predicate(2);
  predicate[1].p = 1;
  predicate[1].atoms = 1;
  for (ComparisonOp op : kComparisonOps) {
    predicate[1].ops[index_of(operator_of(op))] = w.comparison[static_cast<std::size_t>(op)] / cmp_total;
  }

  const Dist atom = wrapper_mixture(predicate, w.wrapper);
  const Dist pair = convolve(atom, atom);
  const Dist sp = mixture({{w.boolean[0], atom},
                           {w.boolean[1], with_operator(pair, Operator::And)},
                           {w.boolean[2], with_operator(pair, Operator::Or)}});

  std::vector<std::pair<double, Dist>> cores;
  for (TemporalOp op : kTemporalOps) {
    cores.emplace_back(w.temporal[static_cast<std::size_t>(op)],
                       with_operator(is_binary(op) ? pair : atom, operator_of(op)));
  }
  const Dist tp = wrapper_mixture(mixture(cores), w.prefix);

  const Dist ntp = mixture({{w.temporal[0], with_operator(with_operator(atom, Operator::G), Operator::F)},
                            {w.temporal[1], with_operator(with_operator(atom, Operator::F), Operator::G)}});

  const double pt = config.temporal_condition_probability;
  const Dist condition = mixture({{1 - pt, sp}, {pt, tp}});
  auto response = [](const Dist& lhs, const Dist& rhs) {
    return with_operator(with_operator(convolve(lhs, rhs), Operator::Implies), Operator::G);
  };

  Grammar g;
  g.categories[0] = mixture({{w.temporal[0], with_operator(sp, Operator::F)},
                             {w.temporal[1], with_operator(sp, Operator::G)}});
  g.categories[1] = response(sp, sp);
  g.categories[2] = response(condition, tp);
  g.categories[3] = response(condition, ntp);
  return g;
}

}  // namespace

ExpectedShape expected_shape(const GeneratorConfig& config) {
  config.validate();
  const Grammar g = grammar(config);
  double total_weight = 0;
  for (double x : config.weights.category) total_weight += x;

  ExpectedShape shape;
  double accepted = 0;
  double atoms = 0;
  double size = 0;
  std::array<double, 4> per_category{};
  for (std::size_t c = 0; c < 4; ++c) {
    const double share = config.weights.category[c] / total_weight;
    const Dist& d = g.categories[c];
    for (std::size_t s = 0; s < d.size() && s <= config.max_subformulas; ++s) {
      per_category[c] += share * d[s].p;
      atoms += share * d[s].atoms;
      size += share * d[s].p * static_cast<double>(s);
    }
    accepted += per_category[c];
  }
  shape.acceptance_probability = accepted;
  shape.atoms_per_formula = atoms / accepted;
  shape.subformulas_per_formula = size / accepted;
  for (std::size_t c = 0; c < 4; ++c) shape.category_share[c] = per_category[c] / accepted;
  return shape;
}

PerOperator<double> expected_operator_counts(const GeneratorConfig& config) {
  config.validate();
  const Grammar g = grammar(config);
  double total_weight = 0;
  for (double x : config.weights.category) total_weight += x;

  PerOperator<double> ops{};
  double accepted = 0;
  for (std::size_t c = 0; c < 4; ++c) {
    const double share = config.weights.category[c] / total_weight;
    const Dist& d = g.categories[c];
    for (std::size_t s = 0; s < d.size() && s <= config.max_subformulas; ++s) {
      accepted += share * d[s].p;
      for (std::size_t k = 0; k < kOperatorCount; ++k) ops[k] += share * d[s].ops[k];
    }
  }
  for (double& x : ops) x /= accepted;
  return ops;
}

}  // namespace stlcorpus
