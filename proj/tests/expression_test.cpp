#include "fixtures.hpp"

#include "equiform/expression.hpp"

#include <gtest/gtest.h>

using namespace equiform;
using namespace equiform::testing;

namespace {

class Expressions : public ::testing::Test {
protected:
    equiform::testing::Model model = s2_model();
    EvalContext ctx{&model.alphabet, model.setup->ring(), model.setup};
    const HomogeneousSetup& s = *model.setup;

    void expect_error(const std::string& text, const std::string& fragment)
    {
        try {
            ctx.evaluate(text);
            ADD_FAILURE() << "no error for " << text;
        } catch (const Error& e) {
            EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
        }
    }
};

}  // namespace

TEST(ExpressionParser, PrecedenceAndRoundTrip)
{
    EXPECT_EQ(to_string(parse_expression("-x^2")), to_string(parse_expression("-(x^2)")));
    EXPECT_EQ(to_string(parse_expression("a+b*c")), to_string(parse_expression("a+(b*c)")));
    EXPECT_EQ(to_string(parse_expression("x^-2")), to_string(parse_expression("x^(-2)")));
    EXPECT_THROW(parse_expression("2^3^2"), ParseError);
    EXPECT_NO_THROW(parse_expression("1.5*x − y"));
}

TEST(ExpressionParser, ReportsOffsets)
{
    try {
        parse_expression("a + * b");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 4u);
    }
    EXPECT_THROW(parse_expression("(a + b"), ParseError);
    EXPECT_THROW(parse_expression("a $ b"), ParseError);
}

TEST_F(Expressions, DifferentialOfRadialFunction)
{
    Form lhs = ctx.evaluate("d(dot(a,a))");
    EXPECT_EQ(lhs, ctx.evaluate("2*dot(a,b)"));
    EXPECT_EQ(ctx.evaluate("aa"), ctx.evaluate("dot(a,a)"));
    EXPECT_EQ(ctx.evaluate("d(aa)"), ctx.evaluate("2*(a1*b1 + a2*b2)"));
}

TEST_F(Expressions, FrameGeneratorsAndCoordinates)
{
    EXPECT_EQ(ctx.evaluate("e1*e2"), s.horizontal(0).wedge(s.horizontal(1)));
    EXPECT_EQ(ctx.evaluate("e2*e1"), -s.horizontal(0).wedge(s.horizontal(1)));
    EXPECT_EQ(ctx.evaluate("a1*b2"), s.vertical(1).scaled(s.fiber_coordinate(0)));
    EXPECT_EQ(ctx.evaluate("dot(b,beta)"), ctx.evaluate("b1*e1 + b2*e2"));
}

TEST_F(Expressions, DefinitionsAndRadicals)
{
    ctx.define("r", "(k+aa)^(1/2)");
    ctx.define("w", "r*e1*e2 - r^(-1)*b1*b2");
    EXPECT_EQ(ctx.evaluate("r*r"), ctx.evaluate("k+aa"));
    EXPECT_TRUE(s.exterior_derivative(ctx.evaluate("w")).is_zero());
    EXPECT_EQ(ctx.evaluate("(e1*b1 + e2*b2)^2"), ctx.evaluate("2*e1*b1*e2*b2"));
}

TEST_F(Expressions, ConstantsReplaceParameters)
{
    equiform::testing::Model flat = s2_model(false);
    EvalContext c(&flat.alphabet, flat.setup->ring(), flat.setup);
    c.set_constant("k", KElem(0));
    EXPECT_EQ(c.evaluate("(k+aa)^(1/2)*(k+aa)^(1/2)"), c.evaluate("aa"));
    EXPECT_EQ(c.constant("3/6 + 1/2"), KElem(1));
    // the radical was declared for k+aa with k symbolic
    ctx.set_constant("k", KElem(0));
    expect_error("(k+aa)^(1/2)", "fractional exponent without declared radical");
}

TEST_F(Expressions, Errors)
{
    expect_error("e1 + b1*b2", "degree mismatch");
    expect_error("dot(a,b) + nonsense", "unknown name");
    expect_error("(1+aa)^(1/2)", "fractional exponent without declared radical");
    expect_error("a + 1", "must appear inside a contraction");
    expect_error("e1 / e2", "");
}

TEST_F(Expressions, LinearizeIntoSyllables)
{
    Dictionary dict = generate_dictionary(model.alphabet);
    auto terms = terms_to_words(dict, linearize(parse_expression("det(a,b)*dot(a,b) + 2*dot(a,b)*det(a,b)"), ctx,
                                                dict.alphabet));
    ASSERT_EQ(terms.size(), 1u);
    // both syllables are odd, so one reordering flips a sign
    EXPECT_TRUE(terms[0].first == Scalar(s.ring(), 1) || terms[0].first == Scalar(s.ring(), -1));
    EXPECT_EQ(terms[0].second.size(), 2u);
}
