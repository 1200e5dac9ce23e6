#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stlcorpus/fragment.hpp"
#include "stlcorpus/operators.hpp"
#include "stlcorpus/rng.hpp"

namespace stlcorpus {

class KnownWordSet;

/// Relative weights of every grammar choice. Arrays are indexed by the
/// underlying enum value (Category, TemporalOp, ComparisonOp, Wrapper).
struct WeightTable {
  std::array<double, 4> category{30.0, 20.8, 25.4, 23.8};
  std::array<double, 6> temporal{68, 152, 5, 11, 26, 4};  // F G O H U S
  std::array<double, 5> comparison{46, 53, 121, 53, 35};  // < <= == >= >
  /// Shape of each atomic proposition.
  std::array<double, 6> wrapper{200, 20, 45, 18, 4, 4};
  /// Prefix in front of a temporal phrase.
  std::array<double, 6> prefix{85, 6, 5, 2, 1, 1};
  std::array<double, 3> boolean{48, 105, 13};  // single atom, and, or

  friend bool operator==(const WeightTable&, const WeightTable&) = default;
};

struct GeneratorConfig {
  WeightTable weights;
  /// Entry k is the weight of identifiers with k + 1 characters.
  std::vector<double> identifier_length_weights = std::vector<double>(10, 1.0);
  double underscore_probability = 0.15;
  /// Entry k is the weight of constants with k + 1 digits.
  std::vector<double> constant_digit_weights{0.25, 0.35, 0.24, 0.16};
  double decimal_point_probability = 0.3;
  /// Chance that an `==` compares against a mode name instead of a constant.
  double mode_name_probability = 0.3;
  std::int64_t interval_min = 0;
  std::int64_t interval_max = 100;
  double zero_lower_bound_probability = 0.7;
  double untimed_probability = 0.25;
  /// Chance that the condition of a temporal or stabilization response is a
  /// temporal phrase rather than a simple phrase.
  double temporal_condition_probability = 0.2;
  /// Formulas whose tree has more nodes than this are redrawn.
  std::size_t max_subformulas = 18;
  std::uint64_t seed = 2022;

  /// Throws ConfigError naming the offending key.
  void validate() const;

  /// `key = value` lines, one per field, in a fixed order.
  std::string serialize() const;
  /// Starts from the defaults and applies every `key = value` line; `#`
  /// starts a comment. Unknown keys are errors.
  static GeneratorConfig parse(std::string_view text);
  static GeneratorConfig load(const std::string& path);
  /// FNV-1a of serialize(), rendered as 16 hex digits.
  std::string hash() const;

  friend bool operator==(const GeneratorConfig&, const GeneratorConfig&) = default;
};

class Sampler {
 public:
  /// Validates `config`. Identifiers avoid every word of `known`, which
  /// defaults to KnownWordSet::builtin().
  explicit Sampler(GeneratorConfig config);
  Sampler(GeneratorConfig config, const KnownWordSet& known);

  const GeneratorConfig& config() const noexcept { return config_; }

  FragmentFormula sample_formula(Rng& rng) const;
  /// The formula with index `draw_index` of the run seeded by config().seed.
  FragmentFormula sample_at(std::uint64_t draw_index) const;

  std::string sample_identifier(Rng& rng) const;
  std::string sample_mode_name(Rng& rng) const;
  std::string sample_constant(Rng& rng) const;
  Interval sample_interval(Rng& rng) const;
  Atom sample_atom(Rng& rng) const;
  SimplePhrase sample_simple_phrase(Rng& rng) const;
  TemporalPhrase sample_temporal_phrase(Rng& rng) const;
  NestedTemporalPhrase sample_nested(Rng& rng) const;

 private:
  FragmentFormula draw(Rng& rng) const;
  Condition sample_condition(Rng& rng) const;
  std::string identifier_of_length(Rng& rng, std::size_t length) const;

  GeneratorConfig config_;
  const KnownWordSet* known_;
};

/// Expected occurrences of each operator per formula under `config`,
/// including the effect of the max_subformulas cap (computed exactly by
/// convolving the size distributions of the grammar's parts).
PerOperator<double> expected_operator_counts(const GeneratorConfig& config);

/// Expected number of atoms and mean subformula count per accepted formula.
struct ExpectedShape {
  double atoms_per_formula = 0;
  double subformulas_per_formula = 0;
  double acceptance_probability = 0;
  std::array<double, 4> category_share{};
};
ExpectedShape expected_shape(const GeneratorConfig& config);

}  // namespace stlcorpus
