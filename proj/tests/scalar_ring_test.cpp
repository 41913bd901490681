#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace equiform;
using namespace equiform::testing;

namespace {

KElem random_kelem(std::mt19937& rng, const SqrtBasisPtr& basis)
{
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 5);
    KElem x(mpq_class(num(rng), den(rng)));
    for (uint32_t mask = 1; mask < basis->dimension(); ++mask)
        x += KElem(basis, mask, mpq_class(num(rng), den(rng)));
    return x;
}

}  // namespace

TEST(KField, SqrtSquaresToConstant)
{
    auto basis = std::make_shared<SqrtBasis>(std::vector<long>{3});
    KElem r = KElem::sqrt_constant(basis, 0);
    EXPECT_EQ(r * r, KElem(3));
    EXPECT_FALSE(r.is_rational());
    EXPECT_EQ(r.sign(), 1);
    EXPECT_EQ((-r).sign(), -1);
}

TEST(KField, ProductsOfTwoRoots)
{
    auto basis = std::make_shared<SqrtBasis>(std::vector<long>{2, 3});
    KElem r2 = KElem::sqrt_constant(basis, 0);
    KElem r3 = KElem::sqrt_constant(basis, 1);
    KElem r6 = r2 * r3;
    EXPECT_EQ(r6 * r6, KElem(6));
    EXPECT_EQ(r6 * r2, r3 * KElem(2));
}

TEST(KField, FieldAxiomsOnRandomElements)
{
    auto basis = std::make_shared<SqrtBasis>(std::vector<long>{2, 3});
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        KElem x = random_kelem(rng, basis), y = random_kelem(rng, basis), z = random_kelem(rng, basis);
        EXPECT_EQ(x * (y + z), x * y + x * z);
        EXPECT_EQ((x * y) * z, x * (y * z));
        EXPECT_EQ(x * y, y * x);
        if (!x.is_zero()) {
            EXPECT_EQ(x * x.inverse(), KElem(1));
        }
    }
}

TEST(KField, SquareRootsOfRationals)
{
    auto basis = std::make_shared<SqrtBasis>(std::vector<long>{3});
    KElem radicand(basis, 0, mpq_class(27, 4));
    auto root = radicand.sqrt();
    ASSERT_TRUE(root.has_value());
    EXPECT_EQ(*root * *root, radicand);
    EXPECT_EQ(*root, KElem::sqrt_constant(basis, 0) * KElem(mpq_class(3, 2)));
    EXPECT_EQ(KElem(mpq_class(9, 4)).sqrt(), KElem(mpq_class(3, 2)));
    EXPECT_FALSE(KElem(-1).sqrt().has_value());
}

TEST(ScalarRing, RadicalSquaresToRelation)
{
    RingPtr ring = tcp2_ring();
    Scalar s = Scalar::radical(ring, 0);
    Scalar aa = Scalar::from_poly(ring, ring->aa());
    EXPECT_EQ(s * s, aa);
    EXPECT_EQ(s * s.inverse(), Scalar(ring, 1));
    EXPECT_EQ(s.inverse() * s.inverse() * aa, Scalar(ring, 1));
}

TEST(ScalarRing, ParameterInverse)
{
    RingPtr ring = tcp2_ring();
    Scalar b = Scalar::param(ring, 0);
    Scalar x = (b + Scalar::fiber(ring, 0)) / b;
    EXPECT_EQ(x * b - Scalar::fiber(ring, 0), b);
    EXPECT_TRUE(x.has_denominator());
}

TEST(ScalarRing, DerivativeOfRadical)
{
    RingPtr ring = tcp2_ring();
    Scalar s = Scalar::radical(ring, 0);
    Scalar a1 = Scalar::fiber(ring, 0);
    // d s / d a1 = a1 / s
    EXPECT_EQ(s.derivative(0), a1 / s);
    EXPECT_EQ(s.pow(-2).derivative(0), Scalar(ring, -2) * a1 * s.pow(-4));
}

TEST(ScalarRing, SphereReduction)
{
    RingPtr ring = tcp2_ring();
    Scalar s = Scalar::radical(ring, 0);
    Scalar aa = Scalar::from_poly(ring, ring->aa());
    EXPECT_TRUE((aa - Scalar(ring, 1)).sphere_reduction().is_zero());
    EXPECT_TRUE((s.pow(3) - Scalar(ring, 1)).sphere_reduction().is_zero());
    EXPECT_FALSE((Scalar::fiber(ring, 0) - Scalar(ring, 1)).sphere_reduction().is_zero());
}

TEST(ScalarRing, EvaluateAtPoint)
{
    RingPtr ring = tcp2_ring();
    Point pt(ring, {KElem(3), KElem(4), KElem(0), KElem(0)}, {{"B", KElem(2)}, {"C", KElem(1)}});
    Scalar s = Scalar::radical(ring, 0);
    EXPECT_EQ(s.evaluate(pt), KElem(5));
    EXPECT_EQ((Scalar::param(ring, 0) / s).evaluate(pt), KElem(mpq_class(2, 5)));
}

TEST(ScalarRing, RadicalRelationWithParameter)
{
    RingPtr ring = s2_ring();
    Scalar u = Scalar::radical(ring, 0);
    Scalar k = Scalar::param(ring, 0);
    EXPECT_EQ(u * u - k, Scalar::from_poly(ring, ring->aa()));
}

TEST(ScalarRing, SubstituteParameter)
{
    RingPtr ring = tcp2_ring();
    Scalar b = Scalar::param(ring, 0);
    Scalar x = b * b + Scalar::fiber(ring, 1) / b;
    Scalar y = x.substitute_params({{0, KElem(2)}});
    EXPECT_EQ(y, Scalar(ring, 4) + Scalar::fiber(ring, 1) * Scalar(ring, KElem(mpq_class(1, 2))));
    EXPECT_THROW(x.substitute_params({{0, KElem(0)}}), Error);
}

TEST(ScalarRing, ParameterInsideRadicalCannotBeSubstituted)
{
    RingPtr ring = s2_ring();
    EXPECT_THROW(Scalar::radical(ring, 0).substitute_params({{0, KElem(0)}}), Error);
}
