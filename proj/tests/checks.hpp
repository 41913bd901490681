#pragma once

#include "equiform/expression.hpp"

#include <map>
#include <random>
#include <string>
#include <vector>

namespace equiform::testing {

inline std::map<BasisWord, KElem> to_vector(const ConstForm& f)
{
    std::map<BasisWord, KElem> v;
    for (auto& [w, c] : f.terms())
        v.emplace(w, c);
    return v;
}

inline int span_rank(const std::vector<ConstForm>& forms)
{
    EchelonBasis<BasisWord> basis;
    for (auto& f : forms)
        basis.insert(to_vector(f));
    return static_cast<int>(basis.size());
}

/// Words of a generator combination after normal ordering, with the sign of
/// the reordering folded into the coefficient.
inline std::map<Word, Scalar> combination_terms(const Dictionary& dict, const GeneratorCombination& c)
{
    std::map<Word, Scalar> out;
    for (auto& t : c.terms) {
        Word w;
        for (auto g : t.generators) {
            const Word& gw = dict.generators[g].word;
            w.insert(w.end(), gw.begin(), gw.end());
        }
        int sign = dict.normalize(w);
        Scalar s = sign < 0 ? -t.coefficient : t.coefficient;
        auto [it, ins] = out.try_emplace(w, s);
        if (!ins)
            it->second += s;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

/// The same normal-ordered view of an expression written in syllables.
inline std::map<Word, Scalar> expression_terms(const Dictionary& dict, const EvalContext& ctx, const std::string& text)
{
    std::map<Word, Scalar> out;
    for (auto& [c, w] : terms_to_words(dict, linearize(parse_expression(text), ctx, dict.alphabet)))
        out.emplace(w, c);
    return out;
}

inline bool same_terms(const std::map<Word, Scalar>& x, const std::map<Word, Scalar>& y)
{
    if (x.size() != y.size())
        return false;
    for (auto& [w, c] : x) {
        auto it = y.find(w);
        if (it == y.end() || it->second != c)
            return false;
    }
    return true;
}

/// Deterministic random words over the syllables of a dictionary.
inline std::vector<Word> random_words(const Dictionary& dict, std::size_t count, std::size_t max_length,
                                      unsigned seed = 20240611u)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> len(1, max_length);
    std::uniform_int_distribution<std::size_t> pick(0, dict.syllables.size() - 1);
    std::vector<Word> out;
    while (out.size() < count) {
        Word w;
        std::size_t n = len(rng);
        for (std::size_t i = 0; i < n; ++i)
            w.push_back(pick(rng));
        dict.normalize(w);
        if (translate_word(dict.syllables, w).is_zero())
            continue;
        out.push_back(w);
    }
    return out;
}

}  // namespace equiform::testing
