#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stlcorpus/ast.hpp"

namespace stlcorpus {

/// Finite, uniformly sampled multi-signal trace. One sample is one time unit.
class Trace {
 public:
  /// Adds or replaces a signal. All signals must share one non-zero length.
  void add_signal(const std::string& name, std::vector<double> samples);
  /// Numeric code a mode name compares equal to.
  void set_mode(const std::string& name, double code);

  std::size_t length() const noexcept { return length_; }
  bool has_signal(const std::string& name) const { return signals_.count(name) != 0; }
  const std::vector<double>& signal(const std::string& name) const;
  std::optional<double> mode(const std::string& name) const;
  const std::map<std::string, std::vector<double>>& signals() const noexcept { return signals_; }

  /// Columnar CSV: a header row of signal names, then one row per time index.
  /// Cells that are not numbers are treated as mode names and receive codes
  /// 0, 1, 2, ... in order of first appearance.
  static Trace from_csv(std::istream& in);

 private:
  std::map<std::string, std::vector<double>> signals_;
  std::map<std::string, double> modes_;
  std::size_t length_ = 0;
};

/// Truth value of `node` at time index `i` (discrete pointwise semantics with
/// strong finite-trace quantifiers). Throws UnknownSignal / IndexOutOfRange.
bool evaluate(const Node& node, const Trace& trace, std::size_t i);

/// Truth value at every index, computed bottom-up.
std::vector<bool> evaluate_all(const Node& node, const Trace& trace);

/// Literal quantifier enumeration of `lhs U_I rhs` at `i`, evaluating the
/// operands point by point. Test oracle only.
bool brute_force_until(const Node& lhs, const Node& rhs, const Interval& interval,
                       const Trace& trace, std::size_t i);
bool brute_force_since(const Node& lhs, const Node& rhs, const Interval& interval,
                       const Trace& trace, std::size_t i);

}  // namespace stlcorpus
