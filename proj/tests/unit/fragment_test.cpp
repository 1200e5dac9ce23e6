#include <gtest/gtest.h>

#include "stlcorpus/fragment.hpp"
#include "stlcorpus/sampler.hpp"
#include "stlcorpus/surface.hpp"

namespace stlcorpus {
namespace {

std::optional<Category> category_of(const std::string& text) { return classify_fragment(*parse(text)); }

TEST(Fragment, ClassifiesEachCategory) {
  EXPECT_EQ(category_of("always ( x > 0 )"), Category::InvarianceReachability);
  EXPECT_EQ(category_of("eventually [ 0 : 5 ] ( x > 0 and not ( y < 2 ) )"), Category::InvarianceReachability);
  EXPECT_EQ(category_of("always ( x > 0 -> y == Idle )"), Category::ImmediateResponse);
  EXPECT_EQ(category_of("always ( rise ( x > 0 ) -> eventually [ 0 : 5 ] ( y < 2 ) )"), Category::TemporalResponse);
  EXPECT_EQ(category_of("always ( x > 0 -> ( y > 0 ) until [ 1 : 4 ] ( z > 0 ) )"), Category::TemporalResponse);
  EXPECT_EQ(category_of("always ( x > 0 -> eventually ( always [ 0 : 3 ] ( y > 0 ) ) )"),
            Category::StabilizationRecurrence);
  EXPECT_EQ(category_of("always ( once [ 0 : 2 ] ( x > 0 ) -> always ( eventually ( y > 0 ) ) )"),
            Category::StabilizationRecurrence);
}

TEST(Fragment, RejectsFormulasOutsideTheFragment) {
  for (const char* text : {"x > 0", "always ( x > 0 or y > 0 or z > 0 )", "eventually ( x > 0 -> y > 0 )",
                           "always ( always ( x > 0 ) )", "always ( x > 0 -> eventually ( eventually ( y > 0 ) ) )",
                           "always [ 0 : 5 ] ( x > 0 -> y > 0 )", "true", "always ( not ( not ( x > 0 ) ) )"}) {
    EXPECT_FALSE(category_of(text).has_value()) << text;
  }
}

TEST(Fragment, ToNodeAndMatchAreInverse) {
  const Sampler sampler(GeneratorConfig{});
  Rng rng(3);
  for (int k = 0; k < 3000; ++k) {
    const FragmentFormula f = sampler.sample_formula(rng);
    const NodePtr node = to_node(f);
    const auto back = match_fragment(*node);
    ASSERT_TRUE(back.has_value()) << render_string(*node);
    ASSERT_EQ(*back, f) << render_string(*node);
    ASSERT_EQ(classify_fragment(*parse(render(*node))), f.category());
  }
}

TEST(Fragment, WrappersRenderAsPrefixes) {
  Atom a{Wrapper::NotRise, {"x", ComparisonOp::Gt, Operand::number("1")}};
  EXPECT_EQ(render_string(*to_node(a)), "not ( rise ( x > 1 ) )");
  a.wrapper = Wrapper::Fall;
  EXPECT_EQ(render_string(*to_node(a)), "fall ( x > 1 )");
}

TEST(Fragment, CategoryNames) {
  for (auto c : kCategories) EXPECT_EQ(category_from_string(to_string(c)), c);
  EXPECT_FALSE(category_from_string("Nope").has_value());
}

}  // namespace
}  // namespace stlcorpus
