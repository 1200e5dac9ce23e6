#include "stlcorpus/fragment.hpp"

#include <array>

namespace stlcorpus {

bool is_binary(TemporalOp op) { return op == TemporalOp::U || op == TemporalOp::S; }

bool is_past(TemporalOp op) {
  return op == TemporalOp::O || op == TemporalOp::H || op == TemporalOp::S;
}

NodeKind node_kind(TemporalOp op) {
  switch (op) {
    case TemporalOp::F: return NodeKind::Eventually;
    case TemporalOp::G: return NodeKind::Always;
    case TemporalOp::O: return NodeKind::Once;
    case TemporalOp::H: return NodeKind::Historically;
    case TemporalOp::U: return NodeKind::Until;
    case TemporalOp::S: return NodeKind::Since;
  }
  return NodeKind::Eventually;
}

std::string_view to_string(TemporalOp op) {
  static constexpr std::array<std::string_view, 6> names = {"F", "G", "O", "H", "U", "S"};
  return names[static_cast<std::size_t>(op)];
}

std::string_view to_string(Category category) {
  switch (category) {
    case Category::InvarianceReachability: return "InvarianceReachability";
    case Category::ImmediateResponse: return "ImmediateResponse";
    case Category::TemporalResponse: return "TemporalResponse";
    case Category::StabilizationRecurrence: return "StabilizationRecurrence";
  }
  return "";
}

std::optional<Category> category_from_string(std::string_view text) {
  for (Category c : kCategories) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

namespace {

std::optional<TemporalOp> temporal_op(NodeKind kind) {
  for (TemporalOp op : kTemporalOps) {
    if (node_kind(op) == kind) return op;
  }
  return std::nullopt;
}

NodePtr wrap(Wrapper w, NodePtr inner) {
  switch (w) {
    case Wrapper::None: return inner;
    case Wrapper::Not: return Node::negation(std::move(inner));
    case Wrapper::Rise: return Node::rise(std::move(inner));
    case Wrapper::Fall: return Node::fall(std::move(inner));
    case Wrapper::NotRise: return Node::negation(Node::rise(std::move(inner)));
    case Wrapper::NotFall: return Node::negation(Node::fall(std::move(inner)));
  }
  return inner;
}

// Peels a wrapper off `node`, returning it and the wrapped core.
std::pair<Wrapper, const Node*> unwrap(const Node& node) {
  const Node* n = &node;
  bool negated = false;
  if (n->kind() == NodeKind::Not) {
    negated = true;
    n = n->lhs().get();
  }
  if (n->kind() == NodeKind::Rise) return {negated ? Wrapper::NotRise : Wrapper::Rise, n->lhs().get()};
  if (n->kind() == NodeKind::Fall) return {negated ? Wrapper::NotFall : Wrapper::Fall, n->lhs().get()};
  return {negated ? Wrapper::Not : Wrapper::None, n};
}

std::optional<Condition> match_condition(const Node& node) {
  if (auto sp = match_simple_phrase(node)) return Condition{*sp};
  if (auto tp = match_temporal_phrase(node)) return Condition{*tp};
  return std::nullopt;
}

}  // namespace

NodePtr to_node(const Atom& atom) { return wrap(atom.wrapper, Node::atom(atom.predicate)); }

NodePtr to_node(const SimplePhrase& sp) {
  NodePtr lhs = to_node(sp.lhs);
  if (!sp.combination) return lhs;
  NodePtr rhs = to_node(sp.combination->rhs);
  return sp.combination->connective == Connective::And ? Node::conjunction(lhs, rhs)
                                                       : Node::disjunction(lhs, rhs);
}

NodePtr to_node(const TemporalPhrase& tp) {
  NodePtr core;
  if (is_binary(tp.op)) {
    core = Node::binary_temporal(node_kind(tp.op), tp.interval, to_node(tp.first),
                                 to_node(tp.second.value()));
  } else {
    core = Node::unary_temporal(node_kind(tp.op), tp.interval, to_node(tp.first));
  }
  return wrap(tp.prefix, core);
}

NodePtr to_node(const NestedTemporalPhrase& ntp) {
  const NodeKind outer = ntp.order == Nesting::FG ? NodeKind::Eventually : NodeKind::Always;
  const NodeKind inner = ntp.order == Nesting::FG ? NodeKind::Always : NodeKind::Eventually;
  return Node::unary_temporal(outer, ntp.outer,
                              Node::unary_temporal(inner, ntp.inner, to_node(ntp.body)));
}

NodePtr to_node(const Condition& condition) {
  return std::visit([](const auto& c) { return to_node(c); }, condition);
}

NodePtr to_node(const FragmentFormula& formula) {
  return std::visit(
      [](const auto& f) -> NodePtr {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, InvarianceReachability>) {
          return Node::unary_temporal(node_kind(f.op), f.interval, to_node(f.body));
        } else {
          return Node::always(Interval::untimed(),
                              Node::implication(to_node(f.condition), to_node(f.response)));
        }
      },
      formula.payload);
}

std::optional<Atom> match_atom(const Node& node) {
  const auto [wrapper, core] = unwrap(node);
  if (core->kind() != NodeKind::Atom) return std::nullopt;
  return Atom{wrapper, core->predicate()};
}

std::optional<SimplePhrase> match_simple_phrase(const Node& node) {
  if (auto atom = match_atom(node)) return SimplePhrase{*atom, std::nullopt};
  if (node.kind() != NodeKind::And && node.kind() != NodeKind::Or) return std::nullopt;
  auto lhs = match_atom(*node.lhs());
  auto rhs = match_atom(*node.rhs());
  if (!lhs || !rhs) return std::nullopt;
  const Connective c = node.kind() == NodeKind::And ? Connective::And : Connective::Or;
  return SimplePhrase{*lhs, SimplePhrase::Combination{c, *rhs}};
}

std::optional<TemporalPhrase> match_temporal_phrase(const Node& node) {
  const auto [prefix, core] = unwrap(node);
  const std::optional<TemporalOp> op = temporal_op(core->kind());
  if (!op) return std::nullopt;
  TemporalPhrase tp;
  tp.prefix = prefix;
  tp.op = *op;
  tp.interval = core->interval();
  auto first = match_atom(*core->lhs());
  if (!first) return std::nullopt;
  tp.first = *first;
  if (is_binary(*op)) {
    tp.second = match_atom(*core->rhs());
    if (!tp.second) return std::nullopt;
  }
  return tp;
}

std::optional<NestedTemporalPhrase> match_nested(const Node& node) {
  Nesting order;
  if (node.kind() == NodeKind::Eventually) {
    order = Nesting::FG;
  } else if (node.kind() == NodeKind::Always) {
    order = Nesting::GF;
  } else {
    return std::nullopt;
  }
  const Node& inner = *node.lhs();
  const NodeKind expected = order == Nesting::FG ? NodeKind::Always : NodeKind::Eventually;
  if (inner.kind() != expected) return std::nullopt;
  auto body = match_atom(*inner.lhs());
  if (!body) return std::nullopt;
  return NestedTemporalPhrase{order, node.interval(), inner.interval(), *body};
}

std::optional<FragmentFormula> match_fragment(const Node& node) {
  if (node.kind() != NodeKind::Always && node.kind() != NodeKind::Eventually) return std::nullopt;
  const Node& body = *node.lhs();

  if (auto sp = match_simple_phrase(body)) {
    const TemporalOp op = node.kind() == NodeKind::Always ? TemporalOp::G : TemporalOp::F;
    return FragmentFormula{InvarianceReachability{op, node.interval(), *sp}};
  }
  if (node.kind() != NodeKind::Always || !node.interval().is_untimed() ||
      body.kind() != NodeKind::Implies) {
    return std::nullopt;
  }
  const Node& lhs = *body.lhs();
  const Node& rhs = *body.rhs();

  if (auto response = match_simple_phrase(rhs)) {
    auto condition = match_simple_phrase(lhs);
    if (!condition) return std::nullopt;
    return FragmentFormula{ImmediateResponse{*condition, *response}};
  }
  auto condition = match_condition(lhs);
  if (!condition) return std::nullopt;
  if (auto ntp = match_nested(rhs)) {
    return FragmentFormula{StabilizationRecurrence{*condition, *ntp}};
  }
  if (auto tp = match_temporal_phrase(rhs)) {
    return FragmentFormula{TemporalResponse{*condition, *tp}};
  }
  return std::nullopt;
}

std::optional<Category> classify_fragment(const Node& node) {
  if (auto f = match_fragment(node)) return f->category();
  return std::nullopt;
}

}  // namespace stlcorpus
