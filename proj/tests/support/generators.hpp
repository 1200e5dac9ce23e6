#pragma once

// Random inputs for property tests. Draws come from a caller-owned Rng so a
// failing case can be replayed from its seed.

#include <string>
#include <vector>

#include "stlcorpus/ast.hpp"
#include "stlcorpus/rng.hpp"
#include "stlcorpus/semantics.hpp"

namespace stlcorpus::testing {

inline Interval random_interval(Rng& rng) {
  switch (rng.uniform_int(0, 3)) {
    case 0: return Interval::untimed();
    case 1: return {Rational(rng.uniform_int(1, 5)), std::nullopt};
    case 2: {
      const auto lo = rng.uniform_int(0, 4);
      return Interval::bounded(Rational(lo), Rational(lo + rng.uniform_int(1, 4)));
    }
    default: {
      // Fractional bounds exercise the decimal rendering.
      const auto lo = rng.uniform_int(0, 20);
      return Interval::bounded(Rational(lo, 10), Rational(lo + rng.uniform_int(1, 30), 10));
    }
  }
}

inline std::string random_constant(Rng& rng) {
  std::string s = std::to_string(rng.uniform_int(0, 999));
  if (rng.bernoulli(0.3)) s += "." + std::to_string(rng.uniform_int(1, 9));
  return s;
}

/// A predicate over `signals`; mode names appear only with `==`.
inline Predicate random_predicate(Rng& rng, const std::vector<std::string>& signals) {
  Predicate p;
  p.signal = signals[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(signals.size()) - 1))];
  p.op = kComparisonOps[static_cast<std::size_t>(rng.uniform_int(0, 4))];
  if (p.op == ComparisonOp::Eq && rng.bernoulli(0.2)) {
    p.rhs = Operand::mode(rng.bernoulli(0.5) ? "Idle" : "Run");
  } else {
    p.rhs = Operand::number(random_constant(rng));
  }
  return p;
}

/// Arbitrary formula over the full surface grammar, not just the fragment.
inline NodePtr random_node(Rng& rng, int depth, const std::vector<std::string>& signals) {
  if (depth <= 0 || rng.bernoulli(0.2)) {
    const auto leaf = rng.uniform_int(0, 9);
    if (leaf == 0) return Node::constant(true);
    if (leaf == 1) return Node::constant(false);
    return Node::atom(random_predicate(rng, signals));
  }
  static constexpr NodeKind kInner[] = {
      NodeKind::Not,     NodeKind::Rise,       NodeKind::Fall,   NodeKind::And,          NodeKind::Or,
      NodeKind::Implies, NodeKind::Eventually, NodeKind::Always, NodeKind::Once,         NodeKind::Historically,
      NodeKind::Until,   NodeKind::Since};
  const NodeKind kind = kInner[rng.uniform_int(0, 11)];
  if (is_prefix(kind)) return Node::prefix(kind, random_node(rng, depth - 1, signals));
  if (is_unary_temporal(kind)) return Node::unary_temporal(kind, random_interval(rng), random_node(rng, depth - 1, signals));
  if (is_binary_temporal(kind)) {
    return Node::binary_temporal(kind, random_interval(rng), random_node(rng, depth - 1, signals),
                                 random_node(rng, depth - 1, signals));
  }
  return Node::binary(kind, random_node(rng, depth - 1, signals), random_node(rng, depth - 1, signals));
}

/// Signals take values in {0, 1} so `x > 0` behaves like a boolean.
inline Trace random_boolean_trace(Rng& rng, std::size_t length, const std::vector<std::string>& signals) {
  Trace t;
  for (const auto& s : signals) {
    std::vector<double> v(length);
    for (auto& x : v) x = rng.bernoulli(0.5) ? 1.0 : 0.0;
    t.add_signal(s, std::move(v));
  }
  return t;
}

/// Trace of `length` samples whose single signal `x` spells the bits of `mask`.
inline Trace bit_trace(std::uint64_t mask, std::size_t length) {
  std::vector<double> v(length);
  for (std::size_t i = 0; i < length; ++i) v[i] = (mask >> i) & 1U ? 1.0 : 0.0;
  Trace t;
  t.add_signal("x", std::move(v));
  return t;
}

}  // namespace stlcorpus::testing
