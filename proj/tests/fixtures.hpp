#pragma once

#include "equiform/dictionary.hpp"

#include <string>
#include <tuple>
#include <vector>

namespace equiform::testing {

/// Models built directly in code, independent of the config reader.
struct Model {
    SetupPtr setup;
    Alphabet alphabet;
};

inline KElem sqrt3(const RingPtr& ring)
{
    return KElem::sqrt_constant(ring->basis(), 0);
}

inline RingPtr tcp2_ring()
{
    RingSpec spec;
    spec.sqrt_constants = {3};
    spec.fiber_vars = {"a1", "a2", "a3", "a4"};
    spec.params = {"B", "C"};
    Poly aa;
    for (std::size_t i = 0; i < 4; ++i)
        aa += Poly::variable(i, 2);
    spec.radicals = {{"s", aa}};
    return Ring::create(spec);
}

/// (i, j, k, rational part, sqrt(3) part) with de^i containing value * e^{jk}.
inline std::vector<std::tuple<int, int, int, int, int>> su3_constants()
{
    return {
        {1, 2, 3, -1, 0}, {1, 4, 5, -1, 0}, {1, 6, 7, 2, 0},
        {2, 1, 3, 1, 0},  {2, 4, 6, 1, 0},  {2, 5, 7, -1, 0}, {2, 5, 8, 0, -1},
        {3, 1, 2, -1, 0}, {3, 4, 7, -1, 0}, {3, 4, 8, 0, 1},  {3, 5, 6, -1, 0},
        {4, 1, 5, 1, 0},  {4, 2, 6, -1, 0}, {4, 3, 7, 1, 0},  {4, 3, 8, 0, -1},
        {5, 1, 4, -1, 0}, {5, 2, 7, 1, 0},  {5, 3, 6, 1, 0},  {5, 2, 8, 0, 1},
        {6, 1, 7, -2, 0}, {6, 2, 4, 1, 0},  {6, 3, 5, -1, 0},
        {7, 1, 6, 2, 0},  {7, 2, 5, -1, 0}, {7, 3, 4, -1, 0},
        {8, 2, 5, 0, -1}, {8, 3, 4, 0, 1},
    };
}

inline LieAlgebraData su3_algebra(const RingPtr& ring)
{
    LieAlgebraData lie{8, {}};
    for (auto [i, j, k, q, r] : su3_constants())
        lie.constants.push_back({i, j, k, KElem(q) + KElem(r) * sqrt3(ring)});
    return lie;
}

/// rho(A)_{ij} = -c^{t_i}_{A t_j}: the isotropy action on T.
inline Representation isotropy_representation(const LieAlgebraData& lie, const Splitting& split)
{
    int n = lie.dimension;
    std::vector<KElem> c(static_cast<std::size_t>(n * n * n), KElem(0));
    auto at = [n](int i, int j, int k) { return static_cast<std::size_t>(((i - 1) * n + (j - 1)) * n + (k - 1)); };
    for (auto& sc : lie.constants) {
        c[at(sc.i, sc.j, sc.k)] = sc.value;
        c[at(sc.i, sc.k, sc.j)] = -sc.value;
    }
    Representation rep{static_cast<int>(split.horizontal.size()), {}};
    for (int g : split.gauge) {
        KMatrix m(split.horizontal.size(), split.horizontal.size());
        for (std::size_t i = 0; i < split.horizontal.size(); ++i)
            for (std::size_t j = 0; j < split.horizontal.size(); ++j)
                m.at(i, j) = -c[at(split.horizontal[i], g, split.horizontal[j])];
        rep.matrices.push_back(m);
    }
    return rep;
}

inline SetupPtr tcp2_setup()
{
    RingPtr ring = tcp2_ring();
    Splitting split{{2, 3, 4, 5}, {1, 6, 7, 8}};
    LieAlgebraData lie = su3_algebra(ring);
    Representation rep = isotropy_representation(lie, split);
    return HomogeneousSetup::validate({ring, lie, split, rep});
}

inline Contraction sigma_contraction()
{
    Contraction m{"sigma", 2, {}, Symmetry::antisymmetric};
    m.entries[{0, 3}] = KElem(1);
    m.entries[{3, 0}] = KElem(-1);
    m.entries[{1, 2}] = KElem(-1);
    m.entries[{2, 1}] = KElem(1);
    return m;
}

inline Form hword(const SetupPtr& s, std::vector<std::size_t> positions)
{
    Form f = scalar_form(s->frame(), Scalar(s->ring(), 1));
    for (auto p : positions)
        f = f.wedge(s->horizontal(p));
    return f;
}

/// Letters a, b, beta, eps, betatilde and contractions dot, sigma.
inline Model tcp2_model(bool with_betatilde = true)
{
    Model m;
    m.setup = tcp2_setup();
    const auto& s = m.setup;
    m.alphabet.setup = s;
    m.alphabet.letters.push_back(letter_a(*s));
    m.alphabet.letters.push_back(letter_b(*s));
    std::vector<Form> beta;
    for (std::size_t t = 0; t < 4; ++t)
        beta.push_back(s->horizontal(t));
    m.alphabet.letters.push_back(letter_from_T_valued_map(*s, "beta", beta));
    std::vector<std::vector<Form>> psi(4, std::vector<Form>(4));
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < 4; ++i)
            psi[j][i] = hword(s, {j, i});
    m.alphabet.letters.push_back(letter_from_bilinear_map(*s, "eps", psi));
    if (with_betatilde) {
        std::vector<Form> bt{hword(s, {1, 2, 3}), -hword(s, {0, 2, 3}), hword(s, {0, 1, 3}), -hword(s, {0, 1, 2})};
        m.alphabet.letters.push_back(letter_from_T_valued_map(*s, "betatilde", bt));
    }
    m.alphabet.contractions.push_back(contraction_dot(4));
    m.alphabet.contractions.push_back(sigma_contraction());
    return m;
}

inline RingPtr s2_ring(bool with_k = true)
{
    RingSpec spec;
    spec.fiber_vars = {"a1", "a2"};
    Poly rel = Poly::variable(0, 2) + Poly::variable(1, 2);
    if (with_k) {
        spec.params = {"k"};
        rel += Poly::variable(2);
    }
    spec.radicals = {{"u", rel}};
    return Ring::create(spec);
}

/// de^1 = -e^{23}, de^2 = e^{13}, de^3 = -e^{12}; T = {1,2}, gauge = {3}.
inline SetupPtr s2_setup(bool with_k = true)
{
    RingPtr ring = s2_ring(with_k);
    LieAlgebraData lie{3, {{1, 2, 3, KElem(-1)}, {2, 1, 3, KElem(1)}, {3, 1, 2, KElem(-1)}}};
    Splitting split{{1, 2}, {3}};
    KMatrix r(2, 2);
    r.at(0, 1) = KElem(-1);
    r.at(1, 0) = KElem(1);
    return HomogeneousSetup::validate({ring, lie, split, Representation{2, {r}}});
}

inline Model s2_model(bool with_k = true)
{
    Model m;
    m.setup = s2_setup(with_k);
    const auto& s = m.setup;
    m.alphabet.setup = s;
    m.alphabet.letters.push_back(letter_a(*s));
    m.alphabet.letters.push_back(letter_b(*s));
    m.alphabet.letters.push_back(letter_from_T_valued_map(*s, "beta", {s->horizontal(0), s->horizontal(1)}));
    m.alphabet.contractions.push_back(contraction_dot(2));
    m.alphabet.contractions.push_back(contraction_det(2));
    return m;
}

}  // namespace equiform::testing
