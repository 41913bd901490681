#include "equiform/letters.hpp"

#include <algorithm>
#include <numeric>

namespace equiform {

std::string to_string(Symmetry s)
{
    switch (s) {
    case Symmetry::symmetric:
        return "symmetric";
    case Symmetry::antisymmetric:
        return "antisymmetric";
    case Symmetry::none:
        break;
    }
    return "none";
}

KElem Contraction::entry(const std::vector<int>& index) const
{
    auto it = entries.find(index);
    return it == entries.end() ? KElem(0) : it->second;
}

int equivariance_violation(const HomogeneousSetup& setup, const std::vector<Form>& components)
{
    const std::size_t k = setup.fiber_dim();
    for (std::size_t a = 0; a < setup.gauge_count(); ++a) {
        const KMatrix& rho = setup.rho(a);
        for (std::size_t i = 0; i < k; ++i) {
            Form v = setup.lie_derivative(a, components[i]);
            for (std::size_t j = 0; j < k; ++j)
                if (!rho.at(i, j).is_zero())
                    v += components[j].scaled(Scalar(setup.ring(), rho.at(i, j)));
            if (!v.is_zero())
                return setup.gauge_label(a);
        }
    }
    return 0;
}

Letter make_letter(const HomogeneousSetup& setup, std::string name, std::vector<Form> components)
{
    if (components.size() != setup.fiber_dim())
        throw Error("letter '" + name + "' needs " + std::to_string(setup.fiber_dim()) + " components, got " +
                    std::to_string(components.size()));
    std::optional<Bidegree> bd;
    for (auto& c : components) {
        if (c.frame() && c.frame() != setup.frame())
            throw Error("letter '" + name + "' uses a foreign frame");
        if (!c.frame())
            c = Form(setup.frame());
        if (c.is_zero())
            continue;
        auto cb = c.bidegree();
        if (!cb || (bd && *bd != *cb))
            throw Error("letter '" + name + "' is not bidegree-homogeneous");
        bd = cb;
    }
    for (auto& c : components)
        if (!c.is_zero() && !setup.is_basic(c))
            throw Error("letter '" + name + "' has a component that is not basic");
    if (int label = equivariance_violation(setup, components))
        throw Error("letter '" + name + "' is not equivariant under e" + std::to_string(label));
    return Letter{std::move(name), std::move(components), bd.value_or(Bidegree{0, 0})};
}

Letter letter_a(const HomogeneousSetup& setup, std::string name)
{
    std::vector<Form> comps;
    for (std::size_t i = 0; i < setup.fiber_dim(); ++i)
        comps.push_back(scalar_form(setup.frame(), setup.fiber_coordinate(i)));
    return make_letter(setup, std::move(name), std::move(comps));
}

Letter letter_b(const HomogeneousSetup& setup, std::string name)
{
    std::vector<Form> comps;
    for (std::size_t i = 0; i < setup.fiber_dim(); ++i)
        comps.push_back(setup.vertical(i));
    return make_letter(setup, std::move(name), std::move(comps));
}

namespace {

void require_constant_horizontal(const HomogeneousSetup& setup, const std::string& name, const Form& f)
{
    BasisWord h = setup.frame()->mask(GenKind::horizontal);
    for (auto& [w, c] : f.terms())
        if ((w & ~h) || !c.is_constant())
            throw Error("letter '" + name + "' needs constant horizontal forms, got " + render(f));
}

}  // namespace

Letter letter_from_T_valued_map(const HomogeneousSetup& setup, std::string name, std::vector<Form> components)
{
    for (auto& c : components)
        require_constant_horizontal(setup, name, c);
    return make_letter(setup, std::move(name), std::move(components));
}

Letter letter_from_bilinear_map(const HomogeneousSetup& setup, std::string name,
                                const std::vector<std::vector<Form>>& psi)
{
    const std::size_t k = setup.fiber_dim();
    if (psi.size() != k)
        throw Error("bilinear map for '" + name + "' must be " + std::to_string(k) + "x" + std::to_string(k));
    std::vector<Form> comps(k, Form(setup.frame()));
    for (std::size_t j = 0; j < k; ++j) {
        if (psi[j].size() != k)
            throw Error("bilinear map for '" + name + "' must be " + std::to_string(k) + "x" + std::to_string(k));
        for (std::size_t i = 0; i < k; ++i) {
            require_constant_horizontal(setup, name, psi[j][i]);
            comps[i] += psi[j][i].scaled(setup.fiber_coordinate(j));
        }
    }
    return make_letter(setup, std::move(name), std::move(comps));
}

Letter covariant_derivative(const HomogeneousSetup& setup, const Letter& letter, std::string name)
{
    const std::size_t k = setup.fiber_dim();
    std::vector<Form> ext;
    for (auto& c : letter.components)
        ext.push_back(setup.to_extended(c));
    std::vector<Form> out;
    BasisWord extra = setup.frame()->mask(GenKind::gauge) | setup.frame()->mask(GenKind::raw_vertical);
    for (std::size_t i = 0; i < k; ++i) {
        Form r = setup.d_extended(ext[i]);
        for (std::size_t a = 0; a < setup.gauge_count(); ++a) {
            Form ea = generator_form(setup.frame(), setup.gauge_gen(a));
            for (std::size_t j = 0; j < k; ++j) {
                const KElem& c = setup.connection_entry(a, i, j);
                if (!c.is_zero())
                    r += ea.wedge(ext[j]).scaled(Scalar(setup.ring(), c));
            }
        }
        r = setup.to_mixed(r);
        if (r.support() & extra)
            throw Error("covariant derivative of '" + letter.name + "' is not basic");
        out.push_back(std::move(r));
    }
    if (name.empty())
        name = "D" + letter.name;
    return make_letter(setup, std::move(name), std::move(out));
}

Contraction contraction_dot(std::size_t dim, std::string name)
{
    Contraction m{std::move(name), 2, {}, Symmetry::symmetric};
    for (std::size_t i = 0; i < dim; ++i)
        m.entries[{static_cast<int>(i), static_cast<int>(i)}] = KElem(1);
    return m;
}

Contraction contraction_det(std::size_t dim, std::string name)
{
    Contraction m{std::move(name), static_cast<int>(dim), {}, Symmetry::antisymmetric};
    std::vector<int> perm(dim);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i + 1; j < dim; ++j)
                inversions += perm[i] > perm[j];
        m.entries[perm] = KElem(inversions % 2 ? -1 : 1);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return m;
}

bool is_invariant_contraction(const HomogeneousSetup& setup, const Contraction& m, int* failing_label)
{
    const int k = static_cast<int>(setup.fiber_dim());
    for (auto& [index, v] : m.entries)
        for (int x : index)
            if (x < 0 || x >= k)
                throw Error("contraction '" + m.name + "' has an index out of range");
    for (std::size_t a = 0; a < setup.gauge_count(); ++a) {
        const KMatrix& rho = setup.rho(a);
        // (A.m)(I) = sum_s sum_w m(I[s->w]) rho(w, I_s)
        std::map<std::vector<int>, KElem> variation;
        for (auto& [index, v] : m.entries)
            for (std::size_t s = 0; s < index.size(); ++s)
                for (int t = 0; t < k; ++t) {
                    const KElem& r = rho.at(static_cast<std::size_t>(index[s]), static_cast<std::size_t>(t));
                    if (r.is_zero())
                        continue;
                    std::vector<int> target = index;
                    target[s] = t;
                    variation[target] += v * r;
                }
        for (auto& [index, v] : variation)
            if (!v.is_zero()) {
                if (failing_label)
                    *failing_label = setup.gauge_label(a);
                return false;
            }
    }
    return true;
}

void check_contraction(const HomogeneousSetup& setup, const Contraction& m)
{
    for (auto& [index, v] : m.entries)
        if (static_cast<int>(index.size()) != m.arity)
            throw Error("contraction '" + m.name + "' has an entry of the wrong arity");
    int label = 0;
    if (!is_invariant_contraction(setup, m, &label))
        throw Error("contraction '" + m.name + "' is not invariant under e" + std::to_string(label));
}

Form contract_syllable(const Contraction& m, const std::vector<const Letter*>& letters)
{
    if (static_cast<int>(letters.size()) != m.arity)
        throw Error("contraction '" + m.name + "' takes " + std::to_string(m.arity) + " letters, got " +
                    std::to_string(letters.size()));
    if (letters.empty())
        throw Error("contraction of arity zero");
    const FramePtr& frame = letters.front()->components.front().frame();
    Form r(frame);
    for (auto& [index, v] : m.entries) {
        Form prod = scalar_form(frame, Scalar(frame->ring(), v));
        for (std::size_t s = 0; s < index.size() && !prod.is_zero(); ++s) {
            const Letter& l = *letters[s];
            if (static_cast<std::size_t>(index[s]) >= l.components.size())
                throw Error("contraction '" + m.name + "' index exceeds letter size");
            prod = prod.wedge(l.components[static_cast<std::size_t>(index[s])]);
        }
        r += prod;
    }
    return r;
}

Form contract_syllable(const Contraction& m, const std::vector<Letter>& letters)
{
    std::vector<const Letter*> ptrs;
    for (auto& l : letters)
        ptrs.push_back(&l);
    return contract_syllable(m, ptrs);
}

}  // namespace equiform
