#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stlcorpus/rational.hpp"

namespace stlcorpus {

enum class ComparisonOp { Lt, Le, Eq, Ge, Gt };

inline constexpr std::array<ComparisonOp, 5> kComparisonOps = {
    ComparisonOp::Lt, ComparisonOp::Le, ComparisonOp::Eq, ComparisonOp::Ge, ComparisonOp::Gt};

std::string_view to_token(ComparisonOp op);
std::optional<ComparisonOp> comparison_from_token(std::string_view token);

/// Closed time interval `[lo, hi]` in time units; an absent `hi` means +infinity.
/// `[0, +inf)` is the untimed default and has no surface form.
struct Interval {
  Rational lo;
  std::optional<Rational> hi;

  static Interval untimed() { return {}; }
  static Interval bounded(Rational lo, Rational hi) { return {lo, hi}; }

  bool is_untimed() const { return lo == Rational(0) && !hi; }
  bool contains(const Rational& offset) const { return lo <= offset && (!hi || offset <= *hi); }
  /// `0 <= lo < hi` (vacuously true for an unbounded hi with lo >= 0).
  bool is_valid() const { return Rational(0) <= lo && (!hi || lo < *hi); }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Right-hand side of a numeric predicate: a decimal constant or a mode name.
struct Operand {
  enum class Kind { Number, Mode };
  Kind kind = Kind::Number;
  std::string text;

  static Operand number(std::string text) { return {Kind::Number, std::move(text)}; }
  static Operand mode(std::string text) { return {Kind::Mode, std::move(text)}; }
  bool is_mode() const { return kind == Kind::Mode; }

  friend bool operator==(const Operand&, const Operand&) = default;
};

/// `signal op rhs`; mode names only appear with `==`.
struct Predicate {
  std::string signal;
  ComparisonOp op = ComparisonOp::Eq;
  Operand rhs;

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

enum class NodeKind {
  Atom,
  True,
  False,
  Not,
  Rise,
  Fall,
  And,
  Or,
  Implies,
  Eventually,
  Always,
  Once,
  Historically,
  Until,
  Since,
};

bool is_unary_temporal(NodeKind kind);
bool is_binary_temporal(NodeKind kind);
bool is_temporal(NodeKind kind);
bool is_boolean_binary(NodeKind kind);
bool is_prefix(NodeKind kind);  // not / rise / fall
bool is_past(NodeKind kind);    // once / historically / since

class Node;
using NodePtr = std::shared_ptr<const Node>;

/// Immutable STL syntax tree node. Children are shared, so copies are cheap and
/// subtrees may be reused across formulas.
class Node {
 public:
  NodeKind kind() const noexcept { return kind_; }

  const Predicate& predicate() const;  // Atom only
  const Interval& interval() const;    // temporal only
  /// Operand of prefix/unary nodes, left operand of binary nodes.
  const NodePtr& lhs() const;
  const NodePtr& rhs() const;  // binary only
  std::size_t arity() const noexcept { return rhs_ ? 2 : (lhs_ ? 1 : 0); }

  static NodePtr atom(Predicate predicate);
  static NodePtr constant(bool value);
  static NodePtr negation(NodePtr operand);
  static NodePtr rise(NodePtr operand);
  static NodePtr fall(NodePtr operand);
  static NodePtr conjunction(NodePtr lhs, NodePtr rhs);
  static NodePtr disjunction(NodePtr lhs, NodePtr rhs);
  static NodePtr implication(NodePtr lhs, NodePtr rhs);
  static NodePtr eventually(Interval interval, NodePtr operand);
  static NodePtr always(Interval interval, NodePtr operand);
  static NodePtr once(Interval interval, NodePtr operand);
  static NodePtr historically(Interval interval, NodePtr operand);
  static NodePtr until(Interval interval, NodePtr lhs, NodePtr rhs);
  static NodePtr since(Interval interval, NodePtr lhs, NodePtr rhs);

  /// Generic constructors used by the parser and the sampler.
  static NodePtr prefix(NodeKind kind, NodePtr operand);
  static NodePtr unary_temporal(NodeKind kind, Interval interval, NodePtr operand);
  static NodePtr binary(NodeKind kind, NodePtr lhs, NodePtr rhs);
  static NodePtr binary_temporal(NodeKind kind, Interval interval, NodePtr lhs, NodePtr rhs);

  Node(NodeKind kind, std::optional<Predicate> predicate, Interval interval, NodePtr lhs,
       NodePtr rhs);

 private:
  NodeKind kind_;
  std::optional<Predicate> predicate_;
  Interval interval_;
  NodePtr lhs_;
  NodePtr rhs_;
};

/// Structural equality (not pointer identity).
bool operator==(const Node& a, const Node& b);
bool structurally_equal(const NodePtr& a, const NodePtr& b);

/// Number of nodes in the tree (every occurrence counted).
std::size_t node_count(const Node& node);

/// Atomic predicates in left-to-right order.
std::vector<Predicate> predicates(const Node& node);

}  // namespace stlcorpus
