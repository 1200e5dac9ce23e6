#include <gtest/gtest.h>

#include "generators.hpp"
#include "stlcorpus/error.hpp"
#include "stlcorpus/sampler.hpp"
#include "stlcorpus/surface.hpp"

namespace stlcorpus {
namespace {

NodePtr atom(const std::string& signal, ComparisonOp op, const std::string& value) {
  return Node::atom({signal, op, Operand::number(value)});
}

TEST(Render, WrapsTemporalAndPrefixOperands) {
  const auto f = Node::always(Interval::untimed(),
                              Node::implication(atom("In", ComparisonOp::Gt, "5"),
                                                Node::eventually(Interval::bounded(0, 10),
                                                                 atom("Out", ComparisonOp::Lt, "2"))));
  EXPECT_EQ(render_string(*f), "always ( In > 5 -> eventually [ 0 : 10 ] ( Out < 2 ) )");
  EXPECT_EQ(join(to_template(*f)), "always ( phi -> eventually [ 0 : 10 ] ( phi ) )");
}

TEST(Render, ParenthesizesBooleansByPrecedence) {
  const auto a = atom("a", ComparisonOp::Gt, "0");
  const auto b = atom("b", ComparisonOp::Gt, "0");
  const auto c = atom("c", ComparisonOp::Gt, "0");
  EXPECT_EQ(render_string(*Node::conjunction(Node::disjunction(a, b), c)), "( a > 0 or b > 0 ) and c > 0");
  EXPECT_EQ(render_string(*Node::disjunction(Node::conjunction(a, b), c)), "a > 0 and b > 0 or c > 0");
  EXPECT_EQ(render_string(*Node::implication(a, Node::implication(b, c))), "a > 0 -> ( b > 0 -> c > 0 )");
  EXPECT_EQ(render_string(*Node::implication(Node::implication(a, b), c)), "( a > 0 -> b > 0 ) -> c > 0");
}

TEST(Render, IntervalForms) {
  const auto a = atom("a", ComparisonOp::Gt, "0");
  EXPECT_EQ(render_string(*Node::once({Rational(3), std::nullopt}, a)), "once [ 3 : inf ] ( a > 0 )");
  EXPECT_EQ(render_string(*Node::historically(Interval::bounded(Rational(1, 2), Rational(5, 2)), a)),
            "historically [ 0.5 : 2.5 ] ( a > 0 )");
  EXPECT_EQ(render_string(*Node::until(Interval::untimed(), a, a)), "( a > 0 ) until ( a > 0 )");
}

TEST(Parse, PrecedenceAndAssociativity) {
  const auto n = parse("a > 0 or b > 0 and c > 0 -> d > 0 -> e > 0");
  ASSERT_EQ(n->kind(), NodeKind::Implies);
  EXPECT_EQ(n->lhs()->kind(), NodeKind::Or);
  EXPECT_EQ(n->lhs()->rhs()->kind(), NodeKind::And);
  EXPECT_EQ(n->rhs()->kind(), NodeKind::Implies);
}

TEST(Parse, UntilBindsTighterThanAnd) {
  const auto n = parse("a > 0 and b > 0 until c > 0");
  ASSERT_EQ(n->kind(), NodeKind::And);
  EXPECT_EQ(n->rhs()->kind(), NodeKind::Until);
}

TEST(Parse, LexesWithoutSpaces) {
  EXPECT_EQ(render_string(*parse("always[0:5](x>=2.5->y==Idle)")),
            "always [ 0 : 5 ] ( x >= 2.5 -> y == Idle )");
}

TEST(Parse, ModeNamesOnlyWithEquality) {
  EXPECT_NO_THROW(parse("always ( m == Idle )"));
  EXPECT_THROW(parse("always ( m > Idle )"), SyntaxError);
}

TEST(Parse, ReportsOffendingTokenIndex) {
  auto index_of_error = [](const std::string& text) -> std::size_t {
    try {
      parse(text);
    } catch (const SyntaxError& e) {
      return e.index();
    }
    ADD_FAILURE() << "no error for " << text;
    return 0;
  };
  EXPECT_EQ(index_of_error(""), 0u);
  EXPECT_EQ(index_of_error("always ( x > 0"), 5u);
  EXPECT_EQ(index_of_error("always ( x > 0 ) )"), 6u);
  EXPECT_EQ(index_of_error("always [ 5 : 2 ] ( x > 0 )"), 2u);
  EXPECT_EQ(index_of_error("x > > 0"), 2u);
  EXPECT_EQ(index_of_error("always ( until > 0 )"), 2u);
}

TEST(Parse, RoundTripsArbitraryFormulas) {
  Rng rng(41);
  const std::vector<std::string> signals{"x", "y_1", "Speed"};
  for (int k = 0; k < 3000; ++k) {
    const NodePtr f = testing::random_node(rng, 5, signals);
    const Tokens tokens = render(*f);
    const NodePtr back = parse(tokens);
    ASSERT_TRUE(*back == *f) << join(tokens);
    ASSERT_EQ(render(*back), tokens);
  }
}

TEST(Parse, RoundTripsSampledFragmentFormulas) {
  const Sampler sampler(GeneratorConfig{});
  Rng rng(5);
  for (int k = 0; k < 2000; ++k) {
    const NodePtr f = to_node(sampler.sample_formula(rng));
    ASSERT_TRUE(*parse(render(*f)) == *f);
  }
}

TEST(Template, FallsBackToLexicalMasking) {
  EXPECT_EQ(join(template_tokens(split_words("always ( x > 0 )"))), "always ( phi )");
  EXPECT_EQ(join(template_tokens(split_words("always ( x > ( ) eventually [ 0 : 5 ] y"))),
            "always ( phi ( ) eventually [ 0 : 5 ] phi");
  EXPECT_TRUE(template_tokens({}).empty());
}

TEST(Subformulas, WorkedExampleHasFive) {
  const auto f = parse("always ( In > 5 -> eventually [ 0 : 10 ] ( Out < 2 ) )");
  const auto subs = subformulas(f);
  ASSERT_EQ(subs.size(), 5u);
  EXPECT_EQ(render_string(*subs.front()), "In > 5");
  EXPECT_TRUE(*subs.back() == *f);
}

TEST(Subformulas, RepeatedSubtreesCountOnce) {
  EXPECT_EQ(subformulas(parse("x > 0 and x > 0")).size(), 2u);
  EXPECT_EQ(node_count(*parse("x > 0 and x > 0")), 3u);
}

}  // namespace
}  // namespace stlcorpus
