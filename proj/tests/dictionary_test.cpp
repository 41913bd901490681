#include "checks.hpp"
#include "fixtures.hpp"
#include "reference_tables.hpp"

#include <gtest/gtest.h>

using namespace equiform;
using namespace equiform::testing;

namespace {

const Dictionary& tcp2_dictionary()
{
    static const Dictionary dict = generate_dictionary(tcp2_model().alphabet);
    return dict;
}

const Dictionary& s2_dictionary()
{
    static const Dictionary dict = generate_dictionary(s2_model().alphabet);
    return dict;
}

}  // namespace

TEST(Dictionary, GeneratorCountsPerBidegree)
{
    const Dictionary& dict = tcp2_dictionary();
    std::map<Bidegree, int> counts;
    for (auto& g : dict.generators)
        if (g.bidegree.total() > 0)
            ++counts[g.bidegree];
    for (auto& cell : tcp2_generator_table())
        EXPECT_EQ(counts[(Bidegree{cell.p, cell.q})], static_cast<int>(cell.words.size()))
            << "(" << cell.p << "," << cell.q << ")";
    EXPECT_EQ(dict.positive_degree_count(), 95u);
}

TEST(Dictionary, StabilizerDimensionsRecorded)
{
    EXPECT_EQ(tcp2_dictionary().origin_stabilizer_dim, 4);
    EXPECT_EQ(tcp2_dictionary().generic_stabilizer_dim, 1);
    EXPECT_EQ(s2_dictionary().origin_stabilizer_dim, 1);
    EXPECT_EQ(s2_dictionary().generic_stabilizer_dim, 0);
}

TEST(Dictionary, CompletenessInEveryBidegree)
{
    CompletenessReport r = completeness_check(tcp2_dictionary());
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.cells.size(), 25u);
    EXPECT_EQ(r.generic_total(), 96);
    EXPECT_EQ(r.origin_total(), 20);

    CompletenessReport s = completeness_check(s2_dictionary());
    EXPECT_TRUE(s.pass());
    EXPECT_EQ(s.origin_total(), 6);
    EXPECT_EQ(s.generic_total(), 16);
}

TEST(Dictionary, RemovingAGeneratorBreaksCompleteness)
{
    const Dictionary& dict = tcp2_dictionary();
    for (std::size_t i = 0; i < dict.generators.size(); ++i)
        EXPECT_TRUE(generator_is_necessary(dict, i)) << dict.render(dict.generators[i].word);
}

TEST(Dictionary, GenerationIsDeterministic)
{
    Dictionary again = generate_dictionary(tcp2_model().alphabet);
    const Dictionary& dict = tcp2_dictionary();
    ASSERT_EQ(again.generators.size(), dict.generators.size());
    for (std::size_t i = 0; i < dict.generators.size(); ++i)
        EXPECT_EQ(again.generators[i].word, dict.generators[i].word);
    ASSERT_EQ(again.transcript.size(), dict.transcript.size());
    for (std::size_t i = 0; i < dict.transcript.size(); ++i) {
        EXPECT_EQ(again.transcript[i].word, dict.transcript[i].word);
        EXPECT_EQ(again.transcript[i].outcome, dict.transcript[i].outcome);
    }
}

TEST(Dictionary, GeneratorsAreInvariantAndInNormalForm)
{
    const Dictionary& dict = tcp2_dictionary();
    for (auto& g : dict.generators) {
        Word w = g.word;
        EXPECT_EQ(dict.normalize(w), 1);
        EXPECT_EQ(w, g.word);
        EXPECT_TRUE(dict.setup().is_invariant(g.translation)) << dict.render(g.word);
        EXPECT_EQ(g.translation.bidegree(), g.bidegree);
    }
}

TEST(Dictionary, DifferentialSquaresToZeroOnRandomWords)
{
    const Dictionary& dict = tcp2_dictionary();
    const HomogeneousSetup& s = dict.setup();
    for (auto& w : random_words(dict, 50, 3)) {
        Form x = translate_word(dict.syllables, w);
        EXPECT_TRUE(s.exterior_derivative(s.exterior_derivative(x)).is_zero()) << dict.render(w);
    }
}

TEST(Dictionary, NormalizeTracksOddSyllables)
{
    const Dictionary& dict = tcp2_dictionary();
    auto ab = dict.find_syllable("dot", {"a", "b"});
    auto sab = dict.find_syllable("sigma", {"a", "b"});
    auto sbb = dict.find_syllable("sigma", {"b", "b"});
    ASSERT_TRUE(ab && sab && sbb);
    Word odd{std::max(*ab, *sab), std::min(*ab, *sab)};
    EXPECT_EQ(dict.normalize(odd), -1);
    Word even{*sbb, *ab};
    Word expect = even;
    std::sort(expect.begin(), expect.end());
    EXPECT_EQ(dict.normalize(even), 1);
    EXPECT_EQ(even, expect);
}

TEST(Dictionary, WordLengthBound)
{
    DictionaryOptions opts;
    opts.max_length = 1;
    Dictionary short_words = generate_dictionary(s2_model().alphabet, opts);
    for (auto& g : short_words.generators)
        EXPECT_LE(g.word.size(), 1u);
    EXPECT_FALSE(completeness_check(short_words).pass());
}

TEST(Dictionary, DifferentialTableHasNoResiduals)
{
    const Dictionary& dict = tcp2_dictionary();
    auto rows = differential_table(dict, 3);
    EXPECT_EQ(rows.size(), 35u);
    for (auto& r : rows) {
        EXPECT_FALSE(r.combination.residual) << r.label;
        EXPECT_EQ(combination_form(dict, r.combination), r.differential) << r.label;
    }
}

TEST(Dictionary, ExpressRecognizesProducts)
{
    const Dictionary& dict = tcp2_dictionary();
    auto g = dict.find_generator({*dict.find_syllable("sigma", {"b", "b"})});
    ASSERT_TRUE(g);
    Form target = dict.generators[*g].translation.wedge(dict.generators[*g].translation);
    GeneratorCombination c = express_in_generators(dict, target);
    EXPECT_FALSE(c.residual);
    EXPECT_EQ(combination_form(dict, c), target);
}

TEST(Dictionary, FourLetterAlphabetIsAlreadyComplete)
{
    Dictionary dict = generate_dictionary(tcp2_model(false).alphabet);
    CompletenessReport r = completeness_check(dict);
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.generic_total(), 96);
    EXPECT_EQ(dict.positive_degree_count(), tcp2_dictionary().positive_degree_count());
}
