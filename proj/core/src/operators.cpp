#include "stlcorpus/operators.hpp"

namespace stlcorpus {

namespace {

constexpr std::array<std::string_view, kOperatorCount> kNames = {
    "==", ">", ">=", "<", "<=", "rise", "fall", "F", "G", "U", "O", "H", "S", "not", "and", "or", "->"};

void count(const Node& node, PerOperator<std::uint64_t>& out) {
  auto bump = [&](Operator op) { ++out[index_of(op)]; };
  switch (node.kind()) {
    case NodeKind::Atom: bump(operator_of(node.predicate().op)); return;
    case NodeKind::True:
    case NodeKind::False: return;
    case NodeKind::Not: bump(Operator::Not); break;
    case NodeKind::Rise: bump(Operator::Rise); break;
    case NodeKind::Fall: bump(Operator::Fall); break;
    case NodeKind::And: bump(Operator::And); break;
    case NodeKind::Or: bump(Operator::Or); break;
    case NodeKind::Implies: bump(Operator::Implies); break;
    case NodeKind::Eventually: bump(Operator::F); break;
    case NodeKind::Always: bump(Operator::G); break;
    case NodeKind::Once: bump(Operator::O); break;
    case NodeKind::Historically: bump(Operator::H); break;
    case NodeKind::Until: bump(Operator::U); break;
    case NodeKind::Since: bump(Operator::S); break;
  }
  if (node.arity() >= 1) count(*node.lhs(), out);
  if (node.arity() == 2) count(*node.rhs(), out);
}

}  // namespace

std::string_view to_string(Operator op) { return kNames[index_of(op)]; }

std::optional<Operator> operator_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kOperatorCount; ++i) {
    if (kNames[i] == name) return static_cast<Operator>(i);
  }
  return std::nullopt;
}

Operator operator_of(ComparisonOp op) {
  switch (op) {
    case ComparisonOp::Lt: return Operator::Lt;
    case ComparisonOp::Le: return Operator::Le;
    case ComparisonOp::Eq: return Operator::Eq;
    case ComparisonOp::Ge: return Operator::Ge;
    case ComparisonOp::Gt: return Operator::Gt;
  }
  return Operator::Eq;
}

PerOperator<std::uint64_t> count_operators(const Node& node) {
  PerOperator<std::uint64_t> out{};
  count(node, out);
  return out;
}

}  // namespace stlcorpus
