#include "stlcorpus/semantics.hpp"

#include <charconv>
#include <istream>
#include <limits>
#include <sstream>

#include "stlcorpus/error.hpp"

namespace stlcorpus {

void Trace::add_signal(const std::string& name, std::vector<double> samples) {
  if (samples.empty()) throw Error("signal '" + name + "' has no samples");
  const bool replacing = signals_.count(name) != 0;
  if (length_ != 0 && samples.size() != length_ && !(replacing && signals_.size() == 1)) {
    throw Error("signal '" + name + "' has " + std::to_string(samples.size()) +
                " samples, expected " + std::to_string(length_));
  }
  length_ = samples.size();
  signals_[name] = std::move(samples);
}

void Trace::set_mode(const std::string& name, double code) { modes_[name] = code; }

const std::vector<double>& Trace::signal(const std::string& name) const {
  auto it = signals_.find(name);
  if (it == signals_.end()) throw UnknownSignal(name);
  return it->second;
}

std::optional<double> Trace::mode(const std::string& name) const {
  auto it = modes_.find(name);
  if (it == modes_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::optional<double> parse_double(const std::string& text) {
  double value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

Trace Trace::from_csv(std::istream& in) {
  std::string line;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    if (!trim(line).empty()) header = split_csv_line(line);
  }
  if (header.empty()) throw Error("trace CSV has no header row");

  std::vector<std::vector<double>> columns(header.size());
  std::map<std::string, double> modes;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw Error("trace CSV row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                  " cells, expected " + std::to_string(header.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (auto v = parse_double(cells[c])) {
        columns[c].push_back(*v);
        continue;
      }
      if (cells[c].empty()) throw Error("trace CSV row " + std::to_string(row) + " has an empty cell");
      auto [it, inserted] = modes.emplace(cells[c], static_cast<double>(modes.size()));
      columns[c].push_back(it->second);
    }
  }

  Trace trace;
  for (std::size_t c = 0; c < header.size(); ++c) trace.add_signal(header[c], std::move(columns[c]));
  for (const auto& [name, code] : modes) trace.set_mode(name, code);
  return trace;
}

namespace {

using Bits = std::vector<bool>;

// Integer offset window [first, last] admitted by a closed interval.
struct Window {
  std::int64_t first;
  std::int64_t last;
};

Window window(const Interval& iv) {
  const std::int64_t den = iv.lo.denominator();
  std::int64_t first = iv.lo.numerator() / den + (iv.lo.numerator() % den != 0 ? 1 : 0);
  std::int64_t last = std::numeric_limits<std::int64_t>::max();
  if (iv.hi) last = iv.hi->numerator() / iv.hi->denominator();
  return {first, last};
}

bool compare(double lhs, ComparisonOp op, double rhs) {
  switch (op) {
    case ComparisonOp::Lt: return lhs < rhs;
    case ComparisonOp::Le: return lhs <= rhs;
    case ComparisonOp::Eq: return lhs == rhs;
    case ComparisonOp::Ge: return lhs >= rhs;
    case ComparisonOp::Gt: return lhs > rhs;
  }
  return false;
}

Bits eval_atom(const Predicate& p, const Trace& trace) {
  const auto& samples = trace.signal(p.signal);
  Bits out(samples.size(), false);
  std::optional<double> rhs;
  if (p.rhs.is_mode()) {
    rhs = trace.mode(p.rhs.text);
  } else {
    rhs = parse_double(p.rhs.text);
  }
  // A mode the trace never mentions matches nothing.
  if (!rhs) return out;
  for (std::size_t i = 0; i < samples.size(); ++i) out[i] = compare(samples[i], p.op, *rhs);
  return out;
}

Bits eval(const Node& n, const Trace& trace);

// Number of set bits in a[0, k) at index k.
std::vector<std::int64_t> prefix_counts(const Bits& a) {
  std::vector<std::int64_t> p(a.size() + 1, 0);
  for (std::size_t k = 0; k < a.size(); ++k) p[k + 1] = p[k] + (a[k] ? 1 : 0);
  return p;
}

// Set bits in a[from, to]; zero for an empty range.
std::int64_t count_in(const std::vector<std::int64_t>& p, std::int64_t from, std::int64_t to) {
  return from > to ? 0 : p[to + 1] - p[from];
}

Bits eval_future(NodeKind kind, const Window& w, const Bits& a, const Bits* lhs) {
  const auto len = static_cast<std::int64_t>(a.size());
  const auto p = prefix_counts(a);
  // First index after i where the left operand fails, or len.
  std::vector<std::int64_t> next_false(a.size(), len);
  if (lhs) {
    for (std::int64_t i = len - 2; i >= 0; --i) next_false[i] = !(*lhs)[i + 1] ? i + 1 : next_false[i + 1];
  }
  Bits out(a.size(), false);
  for (std::int64_t i = 0; i < len; ++i) {
    const std::int64_t from = i + w.first;
    std::int64_t to = w.last > len ? len - 1 : std::min(len - 1, i + w.last);
    if (kind == NodeKind::Always) {
      out[i] = count_in(p, from, to) == std::max<std::int64_t>(0, to - from + 1);
    } else if (kind == NodeKind::Eventually) {
      out[i] = count_in(p, from, to) > 0;
    } else {
      // Until: the left operand must hold strictly between i and the witness.
      to = std::min(to, next_false[i]);
      out[i] = count_in(p, from, to) > 0;
    }
  }
  return out;
}

Bits eval_past(NodeKind kind, const Window& w, const Bits& a, const Bits* lhs) {
  const auto len = static_cast<std::int64_t>(a.size());
  const auto p = prefix_counts(a);
  // Last index before i where the left operand fails, or 0.
  std::vector<std::int64_t> prev_false(a.size(), 0);
  if (lhs) {
    for (std::int64_t i = 1; i < len; ++i) prev_false[i] = !(*lhs)[i - 1] ? i - 1 : prev_false[i - 1];
  }
  Bits out(a.size(), false);
  for (std::int64_t i = 0; i < len; ++i) {
    const std::int64_t from = i - w.first;
    std::int64_t to = w.last > i ? 0 : i - w.last;
    if (kind == NodeKind::Historically) {
      out[i] = count_in(p, to, from) == std::max<std::int64_t>(0, from - to + 1);
    } else if (kind == NodeKind::Once) {
      out[i] = count_in(p, to, from) > 0;
    } else {
      to = std::max(to, prev_false[i]);
      out[i] = count_in(p, to, from) > 0;
    }
  }
  return out;
}

Bits eval(const Node& n, const Trace& trace) {
  const std::size_t len = trace.length();
  switch (n.kind()) {
    case NodeKind::Atom: return eval_atom(n.predicate(), trace);
    case NodeKind::True: return Bits(len, true);
    case NodeKind::False: return Bits(len, false);
    case NodeKind::Not: {
      Bits a = eval(*n.lhs(), trace);
      a.flip();
      return a;
    }
    case NodeKind::Rise:
    case NodeKind::Fall: {
      const Bits a = eval(*n.lhs(), trace);
      const bool rising = n.kind() == NodeKind::Rise;
      Bits out(len, false);
      for (std::size_t i = 1; i < len; ++i) out[i] = rising ? (!a[i - 1] && a[i]) : (a[i - 1] && !a[i]);
      return out;
    }
    case NodeKind::And:
    case NodeKind::Or:
    case NodeKind::Implies: {
      const Bits a = eval(*n.lhs(), trace);
      const Bits b = eval(*n.rhs(), trace);
      Bits out(len, false);
      for (std::size_t i = 0; i < len; ++i) {
        if (n.kind() == NodeKind::And) out[i] = a[i] && b[i];
        else if (n.kind() == NodeKind::Or) out[i] = a[i] || b[i];
        else out[i] = !a[i] || b[i];
      }
      return out;
    }
    case NodeKind::Eventually:
    case NodeKind::Always:
      return eval_future(n.kind(), window(n.interval()), eval(*n.lhs(), trace), nullptr);
    case NodeKind::Once:
    case NodeKind::Historically:
      return eval_past(n.kind(), window(n.interval()), eval(*n.lhs(), trace), nullptr);
    case NodeKind::Until: {
      const Bits lhs = eval(*n.lhs(), trace);
      return eval_future(n.kind(), window(n.interval()), eval(*n.rhs(), trace), &lhs);
    }
    case NodeKind::Since: {
      const Bits lhs = eval(*n.lhs(), trace);
      return eval_past(n.kind(), window(n.interval()), eval(*n.rhs(), trace), &lhs);
    }
  }
  return Bits(len, false);
}

}  // namespace

std::vector<bool> evaluate_all(const Node& node, const Trace& trace) {
  if (trace.length() == 0) throw IndexOutOfRange(0, 0);
  return eval(node, trace);
}

bool evaluate(const Node& node, const Trace& trace, std::size_t i) {
  if (i >= trace.length()) throw IndexOutOfRange(i, trace.length());
  return eval(node, trace)[i];
}

bool brute_force_until(const Node& lhs, const Node& rhs, const Interval& interval,
                       const Trace& trace, std::size_t i) {
  if (i >= trace.length()) throw IndexOutOfRange(i, trace.length());
  for (std::size_t j = 0; j < trace.length(); ++j) {
    if (j < i) continue;
    if (!interval.contains(Rational(static_cast<std::int64_t>(j - i)))) continue;
    if (!evaluate(rhs, trace, j)) continue;
    bool held = true;
    for (std::size_t k = i + 1; k < j; ++k) held = held && evaluate(lhs, trace, k);
    if (held) return true;
  }
  return false;
}

bool brute_force_since(const Node& lhs, const Node& rhs, const Interval& interval,
                       const Trace& trace, std::size_t i) {
  if (i >= trace.length()) throw IndexOutOfRange(i, trace.length());
  for (std::size_t j = 0; j < trace.length(); ++j) {
    if (j > i) continue;
    if (!interval.contains(Rational(static_cast<std::int64_t>(i - j)))) continue;
    if (!evaluate(rhs, trace, j)) continue;
    bool held = true;
    for (std::size_t k = j + 1; k < i; ++k) held = held && evaluate(lhs, trace, k);
    if (held) return true;
  }
  return false;
}

}  // namespace stlcorpus
