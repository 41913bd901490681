#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace equiform;
using namespace equiform::testing;

namespace {

class ExteriorForms : public ::testing::Test {
protected:
    SetupPtr setup = s2_setup();
    FramePtr frame = setup->frame();
    RingPtr ring = setup->ring();
    std::mt19937 rng{11};

    Form random_form(int degree)
    {
        std::uniform_int_distribution<std::size_t> gen(0, frame->size() - 1);
        std::uniform_int_distribution<int> coeff(-3, 3);
        Form f(frame);
        for (int t = 0; t < 4; ++t) {
            BasisWord w = 0;
            while (std::popcount(w) < degree)
                w |= BasisWord{1} << gen(rng);
            Scalar c = Scalar(ring, coeff(rng)) + Scalar(ring, coeff(rng)) * Scalar::fiber(ring, t % 2);
            f += Form(frame, w, c);
        }
        return f;
    }
};

}  // namespace

TEST_F(ExteriorForms, GeneratorsAnticommute)
{
    Form x = setup->horizontal(0), y = setup->vertical(1);
    EXPECT_TRUE(x.wedge(x).is_zero());
    EXPECT_EQ(x.wedge(y), -y.wedge(x));
}

TEST_F(ExteriorForms, GradedCommutativity)
{
    for (int p = 1; p <= 3; ++p)
        for (int q = 1; q <= 3; ++q) {
            Form x = random_form(p), y = random_form(q);
            Form swapped = y.wedge(x);
            EXPECT_EQ(x.wedge(y), (p * q) % 2 ? -swapped : swapped) << p << "," << q;
        }
}

TEST_F(ExteriorForms, WedgeIsAssociativeAndDistributive)
{
    for (int trial = 0; trial < 10; ++trial) {
        Form x = random_form(1), y = random_form(2), z = random_form(1);
        EXPECT_EQ(x.wedge(y).wedge(z), x.wedge(y.wedge(z)));
        EXPECT_EQ(x.wedge(y + z.wedge(z)), x.wedge(y) + x.wedge(z.wedge(z)));
    }
}

TEST_F(ExteriorForms, InteriorProductIsAntiderivation)
{
    for (std::size_t g = 0; g < frame->size(); ++g) {
        Form x = random_form(2), y = random_form(1);
        EXPECT_EQ(x.wedge(y).interior(g), x.interior(g).wedge(y) + x.wedge(y.interior(g)));
        EXPECT_TRUE(x.interior(g).interior(g).is_zero());
    }
}

TEST_F(ExteriorForms, DegreeAndBidegree)
{
    Form x = setup->horizontal(0).wedge(setup->vertical(0));
    EXPECT_EQ(x.degree(), 2);
    EXPECT_EQ(x.bidegree(), (Bidegree{1, 1}));
    Form mixed = x + setup->horizontal(0).wedge(setup->horizontal(1));
    EXPECT_EQ(mixed.degree(), 2);
    EXPECT_FALSE(mixed.bidegree().has_value());
    EXPECT_EQ(mixed.bidegree_split().size(), 2u);
    EXPECT_FALSE((x + setup->horizontal(0)).degree().has_value());
}

TEST_F(ExteriorForms, WedgePower)
{
    Form omega = setup->horizontal(0).wedge(setup->vertical(0)) + setup->horizontal(1).wedge(setup->vertical(1));
    Form square = wedge_power(omega, 2);
    EXPECT_EQ(square, omega.wedge(omega));
    EXPECT_FALSE(square.is_zero());
    EXPECT_TRUE(wedge_power(omega, 3).is_zero());
}

TEST_F(ExteriorForms, EvaluationIsMultiplicative)
{
    Point pt(ring, {KElem(2), KElem(-1)}, {{"k", KElem(4)}});
    for (int trial = 0; trial < 5; ++trial) {
        Form x = random_form(1), y = random_form(2);
        EXPECT_EQ(evaluate_form(x.wedge(y), pt), evaluate_form(x, pt).wedge(evaluate_form(y, pt)));
    }
}

TEST_F(ExteriorForms, SubstitutionIsHomomorphism)
{
    std::vector<std::optional<Form>> images(frame->size());
    images[setup->horizontal_gen(0)] = setup->horizontal(0) + setup->horizontal(1);
    Form x = random_form(1), y = random_form(1);
    EXPECT_EQ(substitute(x.wedge(y), images), substitute(x, images).wedge(substitute(y, images)));
}

TEST_F(ExteriorForms, WedgeSignCountsInversions)
{
    EXPECT_EQ(wedge_sign(0b10, 0b01), -1);
    EXPECT_EQ(wedge_sign(0b01, 0b10), 1);
    EXPECT_EQ(wedge_sign(0b110, 0b001), 1);
    EXPECT_EQ(wedge_sign(0b100, 0b011), 1);
    EXPECT_EQ(wedge_sign(0b010, 0b101), -1);
}
