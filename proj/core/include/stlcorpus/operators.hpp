#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "stlcorpus/ast.hpp"

namespace stlcorpus {

/// Operator occurrence categories, in the order used by the statistics report.
enum class Operator {
  Eq,
  Gt,
  Ge,
  Lt,
  Le,
  Rise,
  Fall,
  F,
  G,
  U,
  O,
  H,
  S,
  Not,
  And,
  Or,
  Implies,
};

inline constexpr std::size_t kOperatorCount = 17;

template <typename T>
using PerOperator = std::array<T, kOperatorCount>;

std::string_view to_string(Operator op);
std::optional<Operator> operator_from_string(std::string_view name);
Operator operator_of(ComparisonOp op);
inline std::size_t index_of(Operator op) { return static_cast<std::size_t>(op); }

/// Occurrences of each operator in the tree. Every comparison counts once,
/// every interior node once; a `true`/`false` leaf counts nothing.
PerOperator<std::uint64_t> count_operators(const Node& node);

}  // namespace stlcorpus
