#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace equiform;
using namespace equiform::testing;

namespace {

SetupInput tcp2_input()
{
    RingPtr ring = tcp2_ring();
    Splitting split{{2, 3, 4, 5}, {1, 6, 7, 8}};
    LieAlgebraData lie = su3_algebra(ring);
    return {ring, lie, split, isotropy_representation(lie, split)};
}

bool mentions(const SetupError& e, const std::string& text)
{
    for (auto& v : e.violations())
        if (v.find(text) != std::string::npos)
            return true;
    return std::string(e.what()).find(text) != std::string::npos;
}

}  // namespace

TEST(HomogeneousSetup, MaurerCartanFormsSatisfyJacobi)
{
    SetupPtr s = tcp2_setup();
    for (int label = 1; label <= 8; ++label)
        EXPECT_TRUE(s->d_extended(s->maurer_cartan(label)).is_zero()) << "e" << label;
}

TEST(HomogeneousSetup, EveryStructureConstantIsLoadBearing)
{
    SetupInput input = tcp2_input();
    for (std::size_t n = 0; n < input.lie.constants.size(); ++n) {
        SetupInput bad = input;
        bad.lie.constants[n].value += KElem(1);
        EXPECT_THROW(HomogeneousSetup::validate(bad), SetupError) << "constant " << n;
    }
}

TEST(HomogeneousSetup, RejectsBrokenSplittings)
{
    SetupInput overlap = tcp2_input();
    overlap.splitting = {{2, 3, 4, 5}, {1, 5, 7, 8}};
    EXPECT_THROW(HomogeneousSetup::validate(overlap), SetupError);

    SetupInput missing = tcp2_input();
    missing.splitting = {{2, 3, 4}, {1, 6, 7, 8}};
    EXPECT_THROW(HomogeneousSetup::validate(missing), SetupError);

    SetupInput not_subalgebra = tcp2_input();
    not_subalgebra.splitting = {{1, 2, 3, 4}, {5, 6, 7, 8}};
    not_subalgebra.representation = isotropy_representation(not_subalgebra.lie, not_subalgebra.splitting);
    try {
        HomogeneousSetup::validate(not_subalgebra);
        FAIL() << "accepted a gauge part that is not a subalgebra";
    } catch (const SetupError& e) {
        EXPECT_TRUE(mentions(e, "subalgebra") || mentions(e, "reductive"));
    }
}

TEST(HomogeneousSetup, RejectsScaledRepresentation)
{
    SetupInput input = tcp2_input();
    for (auto& m : input.representation.matrices)
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                m.at(i, j) *= KElem(2);
    try {
        HomogeneousSetup::validate(input);
        FAIL() << "accepted a scaled representation";
    } catch (const SetupError& e) {
        EXPECT_TRUE(mentions(e, "homomorphism"));
    }
}

TEST(HomogeneousSetup, RejectsNonOrthogonalRepresentation)
{
    SetupInput input = tcp2_input();
    input.representation.matrices[0].at(0, 0) = KElem(1);
    EXPECT_THROW(HomogeneousSetup::validate(input), SetupError);
}

TEST(HomogeneousSetup, StabilizerDimensions)
{
    SetupPtr s = tcp2_setup();
    EXPECT_EQ(s->stabilizer_algebra(s->origin()).size(), 4u);
    Point generic(s->ring(), {KElem(1), KElem(0), KElem(0), KElem(0)});
    EXPECT_EQ(s->stabilizer_algebra(generic).size(), 1u);
    Point other(s->ring(), {KElem(0), KElem(2), KElem(-1), KElem(2)});
    EXPECT_EQ(s->stabilizer_algebra(other).size(), 1u);

    SetupPtr t = s2_setup();
    EXPECT_EQ(t->stabilizer_algebra(t->origin()).size(), 1u);
    EXPECT_EQ(t->stabilizer_algebra(Point(t->ring(), {KElem(1), KElem(0)})).size(), 0u);
}

TEST(HomogeneousSetup, InvariantDimensionsInLowDegree)
{
    SetupPtr s = tcp2_setup();
    auto origin = s->stabilizer_algebra(s->origin());
    EXPECT_EQ(s->invariant_dimension({0, 0}, origin), 1);
    EXPECT_EQ(s->invariant_dimension({1, 0}, origin), 0);
    EXPECT_EQ(s->invariant_dimension({2, 0}, origin), 1);
    EXPECT_EQ(s->invariant_dimension({4, 4}, origin), 1);
    EXPECT_EQ(s->basic_words({2, 1}).size(), 6u * 4u);
}

TEST(HomogeneousSetup, RadialFunctionDerivative)
{
    SetupPtr s = tcp2_setup();
    Form aa = scalar_form(s->frame(), s->aa());
    Form expected(s->frame());
    for (std::size_t i = 0; i < 4; ++i)
        expected += s->vertical(i).scaled(Scalar(s->ring(), 2) * s->fiber_coordinate(i));
    EXPECT_EQ(s->exterior_derivative(aa), expected);
}

TEST(HomogeneousSetup, BasicAndInvariantForms)
{
    SetupPtr s = tcp2_setup();
    Form e = s->horizontal(0);
    EXPECT_TRUE(s->is_basic(e));
    EXPECT_FALSE(s->is_invariant(e));
    Form kahler = hword(s, {0, 3}) - hword(s, {1, 2});
    EXPECT_TRUE(s->is_invariant(kahler));
    EXPECT_TRUE(s->is_invariant(scalar_form(s->frame(), s->aa())));
    EXPECT_FALSE(s->is_basic(generator_form(s->frame(), s->gauge_gen(0))));
}

TEST(HomogeneousSetup, ExteriorDerivativeSquaresToZero)
{
    SetupPtr s = tcp2_setup();
    std::vector<Form> samples{
        s->vertical(0).scaled(s->fiber_coordinate(1)),
        hword(s, {0, 1}).scaled(s->aa()),
        s->horizontal(2).wedge(s->vertical(3)),
        s->vertical(0).wedge(s->vertical(2)).scaled(Scalar::radical(s->ring(), 0)),
    };
    for (auto& x : samples) {
        Form dx = s->pullback_derivative(x);
        EXPECT_TRUE(s->pullback_derivative(dx).is_zero()) << render(x);
    }
}

TEST(HomogeneousSetup, VerticalConventionIsReported)
{
    EXPECT_FALSE(tcp2_setup()->vertical_convention().empty());
}
