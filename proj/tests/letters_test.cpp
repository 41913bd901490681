#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace equiform;
using namespace equiform::testing;

namespace {

using FixtureModel = equiform::testing::Model;

Form pair(const Contraction& m, const Letter& x, const Letter& y)
{
    return contract_syllable(m, std::vector<const Letter*>{&x, &y});
}

}  // namespace

TEST(Letters, BuiltinLettersHaveExpectedBidegrees)
{
    FixtureModel m = tcp2_model();
    std::vector<Bidegree> want{{0, 0}, {0, 1}, {1, 0}, {2, 0}, {3, 0}};
    ASSERT_EQ(m.alphabet.letters.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i)
        EXPECT_EQ(m.alphabet.letters[i].bidegree, want[i]) << m.alphabet.letters[i].name;
}

TEST(Letters, AllModelLettersAreEquivariant)
{
    for (const FixtureModel& model : {tcp2_model(), s2_model()})
        for (auto& l : model.alphabet.letters)
            EXPECT_EQ(equivariance_violation(*model.setup, l.components), 0) << l.name;
}

TEST(Letters, RejectsNonEquivariantComponents)
{
    SetupPtr s = tcp2_setup();
    std::vector<Form> comps{s->horizontal(0), s->horizontal(0), s->horizontal(2), s->horizontal(3)};
    EXPECT_NE(equivariance_violation(*s, comps), 0);
    EXPECT_THROW(make_letter(*s, "bad", comps), Error);
    EXPECT_THROW(letter_from_T_valued_map(*s, "bad", comps), Error);
}

TEST(Letters, RejectsInhomogeneousComponents)
{
    SetupPtr s = tcp2_setup();
    std::vector<Form> comps{s->horizontal(0), s->horizontal(1), s->horizontal(2), hword(s, {0, 3})};
    EXPECT_THROW(make_letter(*s, "bad", comps), Error);
}

TEST(Letters, CovariantDerivativeOfPositionIsVertical)
{
    SetupPtr s = tcp2_setup();
    Letter a = letter_a(*s);
    Letter da = covariant_derivative(*s, a);
    Letter b = letter_b(*s);
    for (std::size_t i = 0; i < 4; ++i)
        EXPECT_EQ(da.components[i], b.components[i]);
    EXPECT_EQ(da.bidegree, (Bidegree{0, 1}));
}

TEST(Letters, CovariantDerivativesAreEquivariant)
{
    FixtureModel m = tcp2_model();
    for (auto& l : m.alphabet.letters) {
        Letter dl = covariant_derivative(*m.setup, l);
        EXPECT_EQ(equivariance_violation(*m.setup, dl.components), 0) << l.name;
    }
}

TEST(Letters, LeibnizRuleForEveryPair)
{
    for (bool tcp : {true, false}) {
        FixtureModel m = tcp ? tcp2_model() : s2_model();
        const auto& s = *m.setup;
        const auto& letters = m.alphabet.letters;
        std::vector<Letter> derived;
        for (auto& l : letters)
            derived.push_back(covariant_derivative(s, l));
        for (auto& c : m.alphabet.contractions) {
            if (c.arity != 2)
                continue;
            for (std::size_t i = 0; i < letters.size(); ++i)
                for (std::size_t j = 0; j < letters.size(); ++j) {
                    Form lhs = s.exterior_derivative(pair(c, letters[i], letters[j]));
                    Form first = pair(c, derived[i], letters[j]);
                    Form second = pair(c, letters[i], derived[j]);
                    Form rhs = letters[i].degree() % 2 ? first - second : first + second;
                    EXPECT_EQ(lhs, rhs) << c.name << "(" << letters[i].name << "," << letters[j].name << ")";
                }
        }
    }
}

TEST(Contractions, BuiltinsAreInvariant)
{
    SetupPtr s = tcp2_setup();
    EXPECT_TRUE(is_invariant_contraction(*s, contraction_dot(4)));
    EXPECT_TRUE(is_invariant_contraction(*s, sigma_contraction()));
    SetupPtr t = s2_setup();
    EXPECT_TRUE(is_invariant_contraction(*t, contraction_det(2)));
}

TEST(Contractions, RejectsNonInvariantTensor)
{
    SetupPtr s = tcp2_setup();
    Contraction m{"first", 2, {}, Symmetry::symmetric};
    m.entries[{0, 0}] = KElem(1);
    int label = 0;
    EXPECT_FALSE(is_invariant_contraction(*s, m, &label));
    EXPECT_NE(label, 0);
    EXPECT_THROW(check_contraction(*s, m), Error);
}

TEST(Contractions, DeterminantEntries)
{
    Contraction det = contraction_det(3);
    EXPECT_EQ(det.entry({0, 1, 2}), KElem(1));
    EXPECT_EQ(det.entry({1, 0, 2}), KElem(-1));
    EXPECT_EQ(det.entry({2, 0, 1}), KElem(1));
    EXPECT_TRUE(det.entry({0, 0, 2}).is_zero());
}

TEST(Contractions, SyllableSymmetry)
{
    FixtureModel m = tcp2_model();
    const auto& L = m.alphabet.letters;
    Contraction sigma = sigma_contraction();
    // a is even: sigma(a, a) vanishes; b is odd: sigma(b, b) does not
    EXPECT_TRUE(pair(sigma, L[0], L[0]).is_zero());
    EXPECT_FALSE(pair(sigma, L[1], L[1]).is_zero());
    EXPECT_EQ(pair(sigma, L[0], L[1]), -pair(sigma, L[1], L[0]));
    EXPECT_EQ(pair(sigma, L[1], L[2]), pair(sigma, L[2], L[1]));
}
