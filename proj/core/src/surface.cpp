#include "stlcorpus/surface.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "stlcorpus/error.hpp"

namespace stlcorpus {

namespace {

constexpr std::string_view kInfinity = "inf";

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_identifier(std::string_view token) {
  if (token.empty() || !is_ident_start(token.front())) return false;
  return std::all_of(token.begin(), token.end(), is_ident_char);
}

bool is_number(std::string_view token) { return Rational::from_decimal(token).has_value(); }

const std::vector<std::string_view>& reserved_words() {
  static const std::vector<std::string_view> words = {
      "always", "eventually", "once", "historically", "until", "since", "rise",
      "fall",   "not",        "and",  "or",           "true",  "false", "inf"};
  return words;
}

bool is_reserved(std::string_view token) {
  const auto& words = reserved_words();
  return std::find(words.begin(), words.end(), token) != words.end();
}

std::optional<NodeKind> keyword_kind(std::string_view token) {
  static constexpr NodeKind kinds[] = {
      NodeKind::Not,    NodeKind::Rise, NodeKind::Fall,       NodeKind::And,
      NodeKind::Or,     NodeKind::Implies, NodeKind::Eventually, NodeKind::Always,
      NodeKind::Once,   NodeKind::Historically, NodeKind::Until, NodeKind::Since};
  for (NodeKind k : kinds) {
    if (keyword(k) == token) return k;
  }
  return std::nullopt;
}

int precedence(NodeKind kind) {
  switch (kind) {
    case NodeKind::Implies: return 1;
    case NodeKind::Or: return 2;
    case NodeKind::And: return 3;
    default: return 4;
  }
}

class Renderer {
 public:
  explicit Renderer(bool templated) : templated_(templated) {}

  void node(const Node& n) {
    switch (n.kind()) {
      case NodeKind::Atom: atom(n.predicate()); return;
      case NodeKind::True: out_.emplace_back("true"); return;
      case NodeKind::False: out_.emplace_back("false"); return;
      case NodeKind::Not:
      case NodeKind::Rise:
      case NodeKind::Fall:
        out_.emplace_back(keyword(n.kind()));
        wrapped(*n.lhs());
        return;
      case NodeKind::Eventually:
      case NodeKind::Always:
      case NodeKind::Once:
      case NodeKind::Historically:
        out_.emplace_back(keyword(n.kind()));
        interval(n.interval());
        wrapped(*n.lhs());
        return;
      case NodeKind::Until:
      case NodeKind::Since:
        wrapped(*n.lhs());
        out_.emplace_back(keyword(n.kind()));
        interval(n.interval());
        wrapped(*n.rhs());
        return;
      case NodeKind::And:
      case NodeKind::Or:
      case NodeKind::Implies:
        operand(*n.lhs(), n.kind());
        out_.emplace_back(keyword(n.kind()));
        operand(*n.rhs(), n.kind());
        return;
    }
  }

  Tokens take() { return std::move(out_); }

 private:
  void atom(const Predicate& p) {
    if (templated_) {
      out_.emplace_back(kPlaceholder);
      return;
    }
    out_.push_back(p.signal);
    out_.emplace_back(to_token(p.op));
    out_.push_back(p.rhs.text);
  }

  void interval(const Interval& iv) {
    if (iv.is_untimed()) return;
    out_.emplace_back("[");
    out_.push_back(iv.lo.to_string());
    out_.emplace_back(":");
    out_.push_back(iv.hi ? iv.hi->to_string() : std::string(kInfinity));
    out_.emplace_back("]");
  }

  void wrapped(const Node& n) {
    out_.emplace_back("(");
    node(n);
    out_.emplace_back(")");
  }

  // A boolean operand needs parentheses when it is a boolean connective that
  // binds no tighter than its parent; equal precedence is wrapped too so the
  // output never relies on associativity.
  void operand(const Node& n, NodeKind parent) {
    if (is_boolean_binary(n.kind()) && precedence(n.kind()) <= precedence(parent)) {
      wrapped(n);
    } else {
      node(n);
    }
  }

  bool templated_;
  Tokens out_;
};

class Parser {
 public:
  explicit Parser(const Tokens& tokens) : t_(tokens) {}

  NodePtr run() {
    if (t_.empty()) throw SyntaxError("empty formula", 0);
    NodePtr n = implication();
    if (pos_ != t_.size()) throw SyntaxError("unexpected '" + t_[pos_] + "'", pos_);
    return n;
  }

 private:
  bool at_end() const { return pos_ >= t_.size(); }
  std::string_view peek() const { return at_end() ? std::string_view{} : std::string_view(t_[pos_]); }

  [[noreturn]] void fail(const std::string& what) const {
    if (at_end()) throw SyntaxError(what + " at end of input", pos_);
    throw SyntaxError(what + ", found '" + t_[pos_] + "'", pos_);
  }

  void expect(std::string_view token) {
    if (peek() != token) fail("expected '" + std::string(token) + "'");
    ++pos_;
  }

  NodePtr implication() {
    NodePtr lhs = disjunction();
    if (peek() == "->") {
      ++pos_;
      return Node::implication(lhs, implication());
    }
    return lhs;
  }

  NodePtr disjunction() {
    NodePtr lhs = conjunction();
    while (peek() == "or") {
      ++pos_;
      lhs = Node::disjunction(lhs, conjunction());
    }
    return lhs;
  }

  NodePtr conjunction() {
    NodePtr lhs = temporal_binary();
    while (peek() == "and") {
      ++pos_;
      lhs = Node::conjunction(lhs, temporal_binary());
    }
    return lhs;
  }

  NodePtr temporal_binary() {
    NodePtr lhs = unary();
    while (peek() == "until" || peek() == "since") {
      const NodeKind kind = peek() == "until" ? NodeKind::Until : NodeKind::Since;
      ++pos_;
      Interval iv = interval();
      lhs = Node::binary_temporal(kind, iv, lhs, unary());
    }
    return lhs;
  }

  NodePtr unary() {
    const std::optional<NodeKind> kind = keyword_kind(peek());
    if (kind && is_prefix(*kind)) {
      ++pos_;
      return Node::prefix(*kind, unary());
    }
    if (kind && is_unary_temporal(*kind)) {
      ++pos_;
      Interval iv = interval();
      return Node::unary_temporal(*kind, iv, unary());
    }
    return primary();
  }

  NodePtr primary() {
    const std::string_view tok = peek();
    if (tok == "(") {
      ++pos_;
      NodePtr inner = implication();
      expect(")");
      return inner;
    }
    if (tok == "true" || tok == "false") {
      ++pos_;
      return Node::constant(tok == "true");
    }
    if (!at_end() && is_identifier(tok) && !is_reserved(tok)) return atom();
    fail("expected a formula");
  }

  NodePtr atom() {
    Predicate p;
    p.signal = t_[pos_++];
    const std::optional<ComparisonOp> op = comparison_from_token(peek());
    if (!op) fail("expected a comparison operator");
    p.op = *op;
    ++pos_;
    const std::string_view rhs = peek();
    if (!at_end() && is_number(rhs)) {
      p.rhs = Operand::number(std::string(rhs));
    } else if (!at_end() && is_identifier(rhs) && !is_reserved(rhs)) {
      if (p.op != ComparisonOp::Eq) fail("mode names only compare with '=='");
      p.rhs = Operand::mode(std::string(rhs));
    } else {
      fail("expected a constant or mode name");
    }
    ++pos_;
    return Node::atom(std::move(p));
  }

  Rational bound() {
    const std::optional<Rational> value = at_end() ? std::nullopt : Rational::from_decimal(peek());
    if (!value) fail("expected an interval bound");
    ++pos_;
    return *value;
  }

  Interval interval() {
    if (peek() != "[") return Interval::untimed();
    ++pos_;
    const std::size_t lo_index = pos_;
    Interval iv;
    iv.lo = bound();
    expect(":");
    if (peek() == kInfinity) {
      ++pos_;
    } else {
      iv.hi = bound();
    }
    expect("]");
    if (!iv.is_valid()) throw SyntaxError("interval lower bound must be below upper bound", lo_index);
    return iv;
  }

  const Tokens& t_;
  std::size_t pos_ = 0;
};

void collect_subformulas(const NodePtr& node, std::vector<NodePtr>& out) {
  if (node->arity() >= 1) collect_subformulas(node->lhs(), out);
  if (node->arity() == 2) collect_subformulas(node->rhs(), out);
  const bool seen = std::any_of(out.begin(), out.end(),
                                [&](const NodePtr& other) { return *other == *node; });
  if (!seen) out.push_back(node);
}

}  // namespace

std::string_view keyword(NodeKind kind) {
  switch (kind) {
    case NodeKind::Atom: return "";
    case NodeKind::True: return "true";
    case NodeKind::False: return "false";
    case NodeKind::Not: return "not";
    case NodeKind::Rise: return "rise";
    case NodeKind::Fall: return "fall";
    case NodeKind::And: return "and";
    case NodeKind::Or: return "or";
    case NodeKind::Implies: return "->";
    case NodeKind::Eventually: return "eventually";
    case NodeKind::Always: return "always";
    case NodeKind::Once: return "once";
    case NodeKind::Historically: return "historically";
    case NodeKind::Until: return "until";
    case NodeKind::Since: return "since";
  }
  return "";
}

bool is_structural_token(std::string_view token) {
  if (token == "(" || token == ")" || token == "[" || token == "]" || token == ":" ||
      token == "->") {
    return true;
  }
  return is_reserved(token);
}

Tokens render(const Node& node) {
  Renderer r(false);
  r.node(node);
  return r.take();
}

std::string render_string(const Node& node) { return join(render(node)); }

Tokens lex(std::string_view text) {
  Tokens out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (is_ident_char(c) || c == '.') {
      // Identifiers and decimal constants; `.` only continues a run.
      std::size_t j = i + 1;
      while (j < text.size() && (is_ident_char(text[j]) || text[j] == '.')) ++j;
      out.emplace_back(text.substr(i, j - i));
      i = j;
      continue;
    }
    if (i + 1 < text.size()) {
      const std::string_view two = text.substr(i, 2);
      if (two == "->" || two == "==" || two == ">=" || two == "<=") {
        out.emplace_back(two);
        i += 2;
        continue;
      }
    }
    out.emplace_back(1, c);
    ++i;
  }
  return out;
}

NodePtr parse(const Tokens& tokens) { return Parser(tokens).run(); }

NodePtr parse(std::string_view text) {
  const Tokens tokens = lex(text);
  return parse(tokens);
}

Tokens split_words(std::string_view text) {
  Tokens out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string join(const Tokens& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

Tokens to_template(const Node& node) {
  Renderer r(true);
  r.node(node);
  return r.take();
}

Tokens template_tokens(const Tokens& tokens) {
  try {
    return to_template(*parse(tokens));
  } catch (const SyntaxError&) {
  }
  Tokens out;
  bool in_interval = false;
  bool in_run = false;
  for (const auto& tok : tokens) {
    if (tok == "[") in_interval = true;
    if (in_interval || is_structural_token(tok)) {
      out.push_back(tok);
      in_run = false;
    } else if (!in_run) {
      out.emplace_back(kPlaceholder);
      in_run = true;
    }
    if (tok == "]") in_interval = false;
  }
  return out;
}

std::vector<NodePtr> subformulas(const NodePtr& node) {
  std::vector<NodePtr> out;
  collect_subformulas(node, out);
  return out;
}

}  // namespace stlcorpus
