#include "stlcorpus/ast.hpp"

#include <stdexcept>

namespace stlcorpus {

std::string_view to_token(ComparisonOp op) {
  switch (op) {
    case ComparisonOp::Lt: return "<";
    case ComparisonOp::Le: return "<=";
    case ComparisonOp::Eq: return "==";
    case ComparisonOp::Ge: return ">=";
    case ComparisonOp::Gt: return ">";
  }
  return "?";
}

std::optional<ComparisonOp> comparison_from_token(std::string_view token) {
  for (ComparisonOp op : kComparisonOps) {
    if (to_token(op) == token) return op;
  }
  return std::nullopt;
}

bool is_unary_temporal(NodeKind kind) {
  return kind == NodeKind::Eventually || kind == NodeKind::Always || kind == NodeKind::Once ||
         kind == NodeKind::Historically;
}

bool is_binary_temporal(NodeKind kind) { return kind == NodeKind::Until || kind == NodeKind::Since; }

bool is_temporal(NodeKind kind) { return is_unary_temporal(kind) || is_binary_temporal(kind); }

bool is_boolean_binary(NodeKind kind) {
  return kind == NodeKind::And || kind == NodeKind::Or || kind == NodeKind::Implies;
}

bool is_prefix(NodeKind kind) {
  return kind == NodeKind::Not || kind == NodeKind::Rise || kind == NodeKind::Fall;
}

bool is_past(NodeKind kind) {
  return kind == NodeKind::Once || kind == NodeKind::Historically || kind == NodeKind::Since;
}

Node::Node(NodeKind kind, std::optional<Predicate> predicate, Interval interval, NodePtr lhs,
           NodePtr rhs)
    : kind_(kind),
      predicate_(std::move(predicate)),
      interval_(std::move(interval)),
      lhs_(std::move(lhs)),
      rhs_(std::move(rhs)) {}

const Predicate& Node::predicate() const {
  if (!predicate_) throw std::logic_error("predicate() on non-atom node");
  return *predicate_;
}

const Interval& Node::interval() const {
  if (!is_temporal(kind_)) throw std::logic_error("interval() on non-temporal node");
  return interval_;
}

const NodePtr& Node::lhs() const {
  if (!lhs_) throw std::logic_error("lhs() on leaf node");
  return lhs_;
}

const NodePtr& Node::rhs() const {
  if (!rhs_) throw std::logic_error("rhs() on non-binary node");
  return rhs_;
}

namespace {

NodePtr require(NodePtr p) {
  if (!p) throw std::invalid_argument("null operand");
  return p;
}

}  // namespace

NodePtr Node::atom(Predicate predicate) {
  return std::make_shared<const Node>(NodeKind::Atom, std::move(predicate), Interval{}, nullptr,
                                      nullptr);
}

NodePtr Node::constant(bool value) {
  return std::make_shared<const Node>(value ? NodeKind::True : NodeKind::False, std::nullopt,
                                      Interval{}, nullptr, nullptr);
}

NodePtr Node::prefix(NodeKind kind, NodePtr operand) {
  if (!is_prefix(kind)) throw std::invalid_argument("not a prefix operator");
  return std::make_shared<const Node>(kind, std::nullopt, Interval{}, require(std::move(operand)),
                                      nullptr);
}

NodePtr Node::unary_temporal(NodeKind kind, Interval interval, NodePtr operand) {
  if (!is_unary_temporal(kind)) throw std::invalid_argument("not a unary temporal operator");
  return std::make_shared<const Node>(kind, std::nullopt, std::move(interval),
                                      require(std::move(operand)), nullptr);
}

NodePtr Node::binary(NodeKind kind, NodePtr lhs, NodePtr rhs) {
  if (!is_boolean_binary(kind)) throw std::invalid_argument("not a boolean connective");
  return std::make_shared<const Node>(kind, std::nullopt, Interval{}, require(std::move(lhs)),
                                      require(std::move(rhs)));
}

NodePtr Node::binary_temporal(NodeKind kind, Interval interval, NodePtr lhs, NodePtr rhs) {
  if (!is_binary_temporal(kind)) throw std::invalid_argument("not a binary temporal operator");
  return std::make_shared<const Node>(kind, std::nullopt, std::move(interval),
                                      require(std::move(lhs)), require(std::move(rhs)));
}

NodePtr Node::negation(NodePtr operand) { return prefix(NodeKind::Not, std::move(operand)); }
NodePtr Node::rise(NodePtr operand) { return prefix(NodeKind::Rise, std::move(operand)); }
NodePtr Node::fall(NodePtr operand) { return prefix(NodeKind::Fall, std::move(operand)); }

NodePtr Node::conjunction(NodePtr lhs, NodePtr rhs) {
  return binary(NodeKind::And, std::move(lhs), std::move(rhs));
}
NodePtr Node::disjunction(NodePtr lhs, NodePtr rhs) {
  return binary(NodeKind::Or, std::move(lhs), std::move(rhs));
}
NodePtr Node::implication(NodePtr lhs, NodePtr rhs) {
  return binary(NodeKind::Implies, std::move(lhs), std::move(rhs));
}

NodePtr Node::eventually(Interval interval, NodePtr operand) {
  return unary_temporal(NodeKind::Eventually, std::move(interval), std::move(operand));
}
NodePtr Node::always(Interval interval, NodePtr operand) {
  return unary_temporal(NodeKind::Always, std::move(interval), std::move(operand));
}
NodePtr Node::once(Interval interval, NodePtr operand) {
  return unary_temporal(NodeKind::Once, std::move(interval), std::move(operand));
}
NodePtr Node::historically(Interval interval, NodePtr operand) {
  return unary_temporal(NodeKind::Historically, std::move(interval), std::move(operand));
}
NodePtr Node::until(Interval interval, NodePtr lhs, NodePtr rhs) {
  return binary_temporal(NodeKind::Until, std::move(interval), std::move(lhs), std::move(rhs));
}
NodePtr Node::since(Interval interval, NodePtr lhs, NodePtr rhs) {
  return binary_temporal(NodeKind::Since, std::move(interval), std::move(lhs), std::move(rhs));
}

bool operator==(const Node& a, const Node& b) {
  if (&a == &b) return true;
  if (a.kind() != b.kind() || a.arity() != b.arity()) return false;
  if (a.kind() == NodeKind::Atom) return a.predicate() == b.predicate();
  if (is_temporal(a.kind()) && !(a.interval() == b.interval())) return false;
  if (a.arity() >= 1 && !(*a.lhs() == *b.lhs())) return false;
  if (a.arity() == 2 && !(*a.rhs() == *b.rhs())) return false;
  return true;
}

bool structurally_equal(const NodePtr& a, const NodePtr& b) {
  if (!a || !b) return a == b;
  return *a == *b;
}

std::size_t node_count(const Node& node) {
  std::size_t n = 1;
  if (node.arity() >= 1) n += node_count(*node.lhs());
  if (node.arity() == 2) n += node_count(*node.rhs());
  return n;
}

namespace {

void collect_predicates(const Node& node, std::vector<Predicate>& out) {
  if (node.kind() == NodeKind::Atom) {
    out.push_back(node.predicate());
    return;
  }
  if (node.arity() >= 1) collect_predicates(*node.lhs(), out);
  if (node.arity() == 2) collect_predicates(*node.rhs(), out);
}

}  // namespace

std::vector<Predicate> predicates(const Node& node) {
  std::vector<Predicate> out;
  collect_predicates(node, out);
  return out;
}

}  // namespace stlcorpus
