#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stlcorpus/ast.hpp"

namespace stlcorpus {

using Tokens = std::vector<std::string>;

/// Placeholder leaf used by templates.
inline constexpr std::string_view kPlaceholder = "phi";

/// Operator words of the surface syntax, in rendering form.
std::string_view keyword(NodeKind kind);

/// True for tokens that carry formula structure: operator words, `->`,
/// parentheses, brackets, `:`, `inf`, `true`, `false`.
bool is_structural_token(std::string_view token);

/// Canonical token stream. Prefix and unary temporal operands are wrapped in
/// `( ... )`, as are both operands of `until` / `since`; boolean operands are
/// parenthesized when they bind no tighter than their parent.
Tokens render(const Node& node);
std::string render_string(const Node& node);

/// Splits text into surface tokens. Whitespace is optional around punctuation
/// and comparison operators, so `always(x>0)` lexes like `always ( x > 0 )`.
Tokens lex(std::string_view text);

/// Parses any grammatical surface string. Precedence, loosest first:
/// `->` (right associative), `or`, `and`, `until`/`since`, prefix operators.
/// Throws SyntaxError carrying the offending token index.
NodePtr parse(const Tokens& tokens);
NodePtr parse(std::string_view text);

/// Whitespace split, no further lexing.
Tokens split_words(std::string_view text);
std::string join(const Tokens& tokens);

/// Render with every atomic predicate replaced by `phi`.
Tokens to_template(const Node& node);

/// Template of an arbitrary token stream. Parseable input goes through
/// to_template; anything else is masked lexically: each maximal run of
/// non-structural tokens collapses to one `phi`, except inside `[ ... ]`.
Tokens template_tokens(const Tokens& tokens);

/// Distinct subtrees (structural equality), post-order, including the root.
std::vector<NodePtr> subformulas(const NodePtr& node);

}  // namespace stlcorpus
