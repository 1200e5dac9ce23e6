#pragma once

#include <optional>
#include <string_view>
#include <variant>

#include "stlcorpus/ast.hpp"

namespace stlcorpus {

/// The six atomic-proposition shapes: `p`, `not p`, `rise p`, `fall p`,
/// `not rise p`, `not fall p`. The same set doubles as the prefix of a
/// temporal phrase.
enum class Wrapper { None, Not, Rise, Fall, NotRise, NotFall };

inline constexpr Wrapper kWrappers[] = {Wrapper::None, Wrapper::Not,     Wrapper::Rise,
                                        Wrapper::Fall, Wrapper::NotRise, Wrapper::NotFall};

enum class Connective { And, Or };

enum class TemporalOp { F, G, O, H, U, S };

inline constexpr TemporalOp kTemporalOps[] = {TemporalOp::F, TemporalOp::G, TemporalOp::O,
                                              TemporalOp::H, TemporalOp::U, TemporalOp::S};

bool is_binary(TemporalOp op);
bool is_past(TemporalOp op);
NodeKind node_kind(TemporalOp op);
std::string_view to_string(TemporalOp op);  // "F", "G", ...

enum class Category { InvarianceReachability, ImmediateResponse, TemporalResponse, StabilizationRecurrence };

inline constexpr Category kCategories[] = {Category::InvarianceReachability, Category::ImmediateResponse,
                                           Category::TemporalResponse, Category::StabilizationRecurrence};

std::string_view to_string(Category category);
std::optional<Category> category_from_string(std::string_view text);

struct Atom {
  Wrapper wrapper = Wrapper::None;
  Predicate predicate;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// One atom, or two joined by `and` / `or`.
struct SimplePhrase {
  struct Combination {
    Connective connective;
    Atom rhs;
    friend bool operator==(const Combination&, const Combination&) = default;
  };

  Atom lhs;
  std::optional<Combination> combination;

  std::size_t atom_count() const { return combination ? 2 : 1; }
  friend bool operator==(const SimplePhrase&, const SimplePhrase&) = default;
};

/// `prefix op_I ( first )` for F/G/O/H, or `prefix ( ( first ) op_I ( second ) )`
/// for U/S.
struct TemporalPhrase {
  Wrapper prefix = Wrapper::None;
  TemporalOp op = TemporalOp::F;
  Interval interval;
  Atom first;
  std::optional<Atom> second;

  friend bool operator==(const TemporalPhrase&, const TemporalPhrase&) = default;
};

enum class Nesting { FG, GF };

struct NestedTemporalPhrase {
  Nesting order = Nesting::FG;
  Interval outer;
  Interval inner;
  Atom body;

  friend bool operator==(const NestedTemporalPhrase&, const NestedTemporalPhrase&) = default;
};

/// Left side of a response implication.
using Condition = std::variant<SimplePhrase, TemporalPhrase>;

/// `G_I ( sp )` or `F_I ( sp )`.
struct InvarianceReachability {
  TemporalOp op = TemporalOp::G;
  Interval interval;
  SimplePhrase body;
  friend bool operator==(const InvarianceReachability&, const InvarianceReachability&) = default;
};

/// `G ( sp -> sp )`.
struct ImmediateResponse {
  SimplePhrase condition;
  SimplePhrase response;
  friend bool operator==(const ImmediateResponse&, const ImmediateResponse&) = default;
};

/// `G ( p -> tp )`.
struct TemporalResponse {
  Condition condition;
  TemporalPhrase response;
  friend bool operator==(const TemporalResponse&, const TemporalResponse&) = default;
};

/// `G ( p -> ntp )`.
struct StabilizationRecurrence {
  Condition condition;
  NestedTemporalPhrase response;
  friend bool operator==(const StabilizationRecurrence&, const StabilizationRecurrence&) = default;
};

struct FragmentFormula {
  std::variant<InvarianceReachability, ImmediateResponse, TemporalResponse, StabilizationRecurrence>
      payload;

  Category category() const { return static_cast<Category>(payload.index()); }
  friend bool operator==(const FragmentFormula&, const FragmentFormula&) = default;
};

NodePtr to_node(const Atom& atom);
NodePtr to_node(const SimplePhrase& sp);
NodePtr to_node(const TemporalPhrase& tp);
NodePtr to_node(const NestedTemporalPhrase& ntp);
NodePtr to_node(const Condition& condition);
NodePtr to_node(const FragmentFormula& formula);

std::optional<Atom> match_atom(const Node& node);
std::optional<SimplePhrase> match_simple_phrase(const Node& node);
std::optional<TemporalPhrase> match_temporal_phrase(const Node& node);
std::optional<NestedTemporalPhrase> match_nested(const Node& node);
std::optional<FragmentFormula> match_fragment(const Node& node);

/// Category of a node inside the fragment, nullopt when it is outside.
std::optional<Category> classify_fragment(const Node& node);

}  // namespace stlcorpus
