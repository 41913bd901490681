#include "equiform/homogeneous.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace equiform {

namespace {

std::string join(const std::vector<std::string>& items, const std::string& sep)
{
    std::string r;
    for (std::size_t i = 0; i < items.size(); ++i)
        r += (i ? sep : "") + items[i];
    return r;
}

bool is_skew(const KMatrix& m)
{
    return (m + m.transpose()).is_zero();
}

}  // namespace

SetupError::SetupError(std::vector<std::string> violations)
    : Error("invalid homogeneous setup: " + join(violations, "; ")), violations_(std::move(violations))
{
}

SetupPtr validate_setup(SetupInput input)
{
    return HomogeneousSetup::validate(std::move(input));
}

SetupPtr HomogeneousSetup::validate(SetupInput input)
{
    auto s = std::shared_ptr<HomogeneousSetup>(new HomogeneousSetup());
    if (!input.ring)
        throw SetupError({"no coefficient ring"});
    s->ring_ = input.ring;
    s->lie_ = std::move(input.lie);
    s->split_ = std::move(input.splitting);
    s->rep_ = std::move(input.representation);
    const int n = s->lie_.dimension;
    const std::size_t k = static_cast<std::size_t>(s->rep_.dimension);

    if (n < 1)
        throw SetupError({"Lie algebra dimension must be positive"});
    {
        std::set<int> seen;
        for (int l : s->split_.horizontal)
            if (l < 1 || l > n || !seen.insert(l).second)
                throw SetupError({"splitting index " + std::to_string(l) + " is out of range or repeated"});
        for (int l : s->split_.gauge)
            if (l < 1 || l > n || !seen.insert(l).second)
                throw SetupError({"splitting index " + std::to_string(l) + " is out of range or repeated"});
        if (static_cast<int>(seen.size()) != n)
            throw SetupError({"splitting does not partition 1.." + std::to_string(n)});
    }
    if (s->ring_->fiber_count() != k)
        throw SetupError({"ring declares " + std::to_string(s->ring_->fiber_count()) +
                          " fiber variables but the representation has dimension " + std::to_string(k)});
    if (s->rep_.matrices.size() != s->split_.gauge.size())
        throw SetupError({"representation must give one matrix per gauge generator"});
    for (auto& m : s->rep_.matrices)
        if (m.rows() != k || m.cols() != k)
            throw SetupError({"representation matrices must be " + std::to_string(k) + "x" + std::to_string(k)});

    s->c_.assign(static_cast<std::size_t>(n * n * n), KElem(0));
    auto idx = [n](int i, int j, int l) { return static_cast<std::size_t>(((i - 1) * n + (j - 1)) * n + (l - 1)); };
    {
        std::set<std::tuple<int, int, int>> seen;
        for (auto& sc : s->lie_.constants) {
            for (int x : {sc.i, sc.j, sc.k})
                if (x < 1 || x > n)
                    throw SetupError({"structure constant index " + std::to_string(x) + " out of range"});
            if (sc.j == sc.k)
                throw SetupError({"structure constant c^" + std::to_string(sc.i) + "_{" + std::to_string(sc.j) +
                                  std::to_string(sc.k) + "} has repeated lower index"});
            int j = std::min(sc.j, sc.k), l = std::max(sc.j, sc.k);
            KElem v = sc.j < sc.k ? sc.value : -sc.value;
            if (!seen.insert({sc.i, j, l}).second)
                throw SetupError({"structure constant c^" + std::to_string(sc.i) + "_{" + std::to_string(j) + "," +
                                  std::to_string(l) + "} given twice"});
            s->c_[idx(sc.i, j, l)] = v;
            s->c_[idx(sc.i, l, j)] = -v;
        }
    }

    const std::size_t nt = s->split_.horizontal.size();
    const std::size_t ng = s->split_.gauge.size();
    std::vector<Generator> gens;
    for (int l : s->split_.horizontal)
        gens.push_back({"e" + std::to_string(l), GenKind::horizontal, l});
    for (std::size_t i = 0; i < k; ++i)
        gens.push_back({"b" + std::to_string(i + 1), GenKind::vertical, static_cast<int>(i + 1)});
    for (int l : s->split_.gauge)
        gens.push_back({"e" + std::to_string(l), GenKind::gauge, l});
    for (std::size_t i = 0; i < k; ++i)
        gens.push_back({"da" + std::to_string(i + 1), GenKind::raw_vertical, static_cast<int>(i + 1)});
    s->frame_ = std::make_shared<const Frame>(s->ring_, std::move(gens));

    s->lie_gen_.assign(static_cast<std::size_t>(n), 0);
    for (std::size_t t = 0; t < nt; ++t)
        s->lie_gen_[static_cast<std::size_t>(s->split_.horizontal[t] - 1)] = static_cast<int>(s->horizontal_gen(t));
    for (std::size_t a = 0; a < ng; ++a)
        s->lie_gen_[static_cast<std::size_t>(s->split_.gauge[a] - 1)] = static_cast<int>(s->gauge_gen(a));

    s->de_.clear();
    for (int i = 1; i <= n; ++i) {
        Form f(s->frame_);
        for (int j = 1; j <= n; ++j)
            for (int l = j + 1; l <= n; ++l) {
                const KElem& c = s->c_[idx(i, j, l)];
                if (c.is_zero())
                    continue;
                Form w = generator_form(s->frame_, s->lie_gen(j)).wedge(generator_form(s->frame_, s->lie_gen(l)));
                f += w.scaled(Scalar(s->ring_, c));
            }
        s->de_.push_back(std::move(f));
    }

    std::vector<std::string> violations;
    for (int i = 1; i <= n; ++i) {
        Form dd = s->d_extended(s->de_[static_cast<std::size_t>(i - 1)]);
        if (!dd.is_zero())
            violations.push_back("Jacobi identity fails at e^" + std::to_string(i) + ": d(de^" + std::to_string(i) +
                                 ") = " + render(dd));
    }
    for (int t : s->split_.horizontal)
        for (int b : s->split_.gauge)
            for (int c : s->split_.gauge)
                if (b < c && !s->c_[idx(t, b, c)].is_zero())
                    violations.push_back("gauge part is not a subalgebra: c^" + std::to_string(t) + "_{" +
                                         std::to_string(b) + "," + std::to_string(c) + "} != 0");
    for (int a : s->split_.gauge)
        for (int b : s->split_.gauge)
            for (int t : s->split_.horizontal)
                if (!s->c_[idx(a, b, t)].is_zero())
                    violations.push_back("splitting is not reductive: c^" + std::to_string(a) + "_{" +
                                         std::to_string(b) + "," + std::to_string(t) + "} != 0");
    for (std::size_t a = 0; a < ng; ++a)
        if (!is_skew(s->rep_.matrices[a]))
            violations.push_back("representation not orthogonal: rho(e" + std::to_string(s->split_.gauge[a]) +
                                 ") is not skew-symmetric");
    for (std::size_t a = 0; a < ng; ++a)
        for (std::size_t b = a + 1; b < ng; ++b) {
            const KMatrix& ra = s->rep_.matrices[a];
            const KMatrix& rb = s->rep_.matrices[b];
            KMatrix lhs = ra * rb - rb * ra;
            KMatrix rhs(k, k);
            for (std::size_t c = 0; c < ng; ++c) {
                const KElem& v = s->c_[idx(s->split_.gauge[c], s->split_.gauge[a], s->split_.gauge[b])];
                if (!v.is_zero())
                    rhs = rhs - s->rep_.matrices[c].scaled(v);
            }
            if (!(lhs == rhs))
                violations.push_back("representation not a homomorphism on [e" + std::to_string(s->split_.gauge[a]) +
                                     ", e" + std::to_string(s->split_.gauge[b]) + "]");
        }

    for (std::size_t a = 0; a < ng; ++a) {
        KMatrix m(nt, nt);
        for (std::size_t t = 0; t < nt; ++t)
            for (std::size_t u = 0; u < nt; ++u)
                m.at(t, u) = s->c_[idx(s->split_.horizontal[t], s->split_.gauge[a], s->split_.horizontal[u])];
        if (!is_skew(m))
            s->warnings_.push_back("ad(e" + std::to_string(s->split_.gauge[a]) +
                                   ") is not skew on the horizontal basis (basis not orthonormal for an invariant metric)");
        s->ad_t_.push_back(std::move(m));
    }

    if (!violations.empty())
        throw SetupError(std::move(violations));

    auto build = [&](bool row) {
        s->b_ext_.clear();
        for (std::size_t i = 0; i < k; ++i) {
            Form b = generator_form(s->frame_, s->raw_gen(i));
            for (std::size_t a = 0; a < ng; ++a) {
                Scalar coef(s->ring_);
                for (std::size_t j = 0; j < k; ++j) {
                    const KElem& r = row ? s->rep_.matrices[a].at(i, j) : s->rep_.matrices[a].at(j, i);
                    if (!r.is_zero())
                        coef += Scalar::fiber(s->ring_, j) * Scalar(s->ring_, r);
                }
                b += generator_form(s->frame_, s->gauge_gen(a)).scaled(coef);
            }
            s->b_ext_.push_back(std::move(b));
        }
        for (std::size_t a = 0; a < ng; ++a)
            for (auto& b : s->b_ext_)
                if (!s->fundamental_contraction(a, b).is_zero())
                    return false;
        return true;
    };
    if (build(true)) {
        s->convention_ = "b_i = da_i + sum_j a_j rho(omega)_{ij}";
    } else if (build(false)) {
        s->row_convention_ = false;
        s->convention_ = "b_i = da_i + sum_j a_j rho(omega)_{ji}";
    } else {
        throw SetupError({"no index convention for the vertical frame annihilates the fundamental vector fields"});
    }
    s->da_mixed_.clear();
    for (std::size_t i = 0; i < k; ++i) {
        Form d = generator_form(s->frame_, s->vertical_gen(i)) + generator_form(s->frame_, s->raw_gen(i)) - s->b_ext_[i];
        s->da_mixed_.push_back(std::move(d));
    }
    return s;
}

std::size_t HomogeneousSetup::gauge_position(int label) const
{
    for (std::size_t a = 0; a < split_.gauge.size(); ++a)
        if (split_.gauge[a] == label)
            return a;
    throw Error("e" + std::to_string(label) + " is not a gauge generator");
}

std::size_t HomogeneousSetup::lie_gen(int label) const
{
    if (label < 1 || label > lie_.dimension)
        throw Error("Lie algebra index " + std::to_string(label) + " out of range");
    return static_cast<std::size_t>(lie_gen_[static_cast<std::size_t>(label - 1)]);
}

BasisWord HomogeneousSetup::basic_mask() const
{
    return frame_->mask(GenKind::horizontal) | frame_->mask(GenKind::vertical);
}

const KElem& HomogeneousSetup::structure_constant(int i, int j, int k) const
{
    int n = lie_.dimension;
    return c_.at(static_cast<std::size_t>(((i - 1) * n + (j - 1)) * n + (k - 1)));
}

Scalar HomogeneousSetup::aa() const
{
    return Scalar::from_poly(ring_, ring_->aa());
}

const Form& HomogeneousSetup::maurer_cartan(int label) const
{
    return de_.at(static_cast<std::size_t>(label - 1));
}

Form HomogeneousSetup::to_extended(const Form& x) const
{
    if (!(x.support() & frame_->mask(GenKind::vertical)))
        return x;
    std::vector<std::optional<Form>> images(frame_->size());
    for (std::size_t i = 0; i < fiber_dim(); ++i)
        images[vertical_gen(i)] = b_ext_[i];
    return substitute(x, images);
}

Form HomogeneousSetup::to_mixed(const Form& x) const
{
    if (!(x.support() & frame_->mask(GenKind::raw_vertical)))
        return x;
    std::vector<std::optional<Form>> images(frame_->size());
    for (std::size_t i = 0; i < fiber_dim(); ++i)
        images[raw_gen(i)] = da_mixed_[i];
    return substitute(x, images);
}

Form HomogeneousSetup::d_extended(const Form& x) const
{
    if (x.support() & frame_->mask(GenKind::vertical))
        throw Error("d_extended expects a form without b generators");
    std::vector<std::optional<Form>> images(frame_->size());
    for (int l = 1; l <= lie_.dimension; ++l)
        images[lie_gen(l)] = de_[static_cast<std::size_t>(l - 1)];
    auto on_coeff = [this](const Scalar& c) {
        Form r(frame_);
        for (std::size_t i = 0; i < fiber_dim(); ++i) {
            Scalar dc = c.derivative(i);
            if (!dc.is_zero())
                r.add_term(BasisWord{1} << raw_gen(i), dc);
        }
        return r;
    };
    return apply_derivation(x, on_coeff, images, true);
}

Form HomogeneousSetup::pullback_derivative(const Form& x) const
{
    return to_mixed(d_extended(to_extended(x)));
}

Form HomogeneousSetup::exterior_derivative(const Form& x) const
{
    BasisWord extra = frame_->mask(GenKind::gauge) | frame_->mask(GenKind::raw_vertical);
    if (x.support() & extra)
        throw Error("input not basic: " + render(x));
    Form r = pullback_derivative(x);
    if (r.support() & extra)
        throw Error("result not basic: d(" + render(x) + ") has gauge components");
    return r;
}

std::vector<Scalar> HomogeneousSetup::rho_times_a(std::size_t a) const
{
    std::vector<Scalar> r;
    const KMatrix& m = rep_.matrices.at(a);
    for (std::size_t i = 0; i < fiber_dim(); ++i) {
        Scalar s(ring_);
        for (std::size_t j = 0; j < fiber_dim(); ++j)
            if (!m.at(i, j).is_zero())
                s += Scalar::fiber(ring_, j) * Scalar(ring_, m.at(i, j));
        r.push_back(std::move(s));
    }
    return r;
}

Form HomogeneousSetup::fundamental_contraction(std::size_t a, const Form& x) const
{
    Form ext = to_extended(x);
    std::vector<std::optional<Form>> images(frame_->size());
    images[gauge_gen(a)] = scalar_form(frame_, Scalar(ring_, 1));
    auto ra = rho_times_a(a);
    for (std::size_t i = 0; i < fiber_dim(); ++i)
        images[raw_gen(i)] = scalar_form(frame_, -ra[i]);
    return apply_derivation(ext, nullptr, images, true);
}

Form HomogeneousSetup::lie_derivative(std::size_t a, const Form& x) const
{
    BasisWord extra = frame_->mask(GenKind::gauge) | frame_->mask(GenKind::raw_vertical);
    if (x.support() & extra)
        throw Error("Lie derivative is computed on basic-frame forms only");
    auto ra = rho_times_a(a);
    auto on_coeff = [&](const Scalar& c) {
        Scalar v(ring_);
        for (std::size_t i = 0; i < fiber_dim(); ++i)
            if (!ra[i].is_zero())
                v -= ra[i] * c.derivative(i);
        return scalar_form(frame_, v);
    };
    std::vector<std::optional<Form>> images(frame_->size());
    const KMatrix& ad = ad_t_.at(a);
    for (std::size_t t = 0; t < horizontal_count(); ++t) {
        Form img(frame_);
        for (std::size_t u = 0; u < horizontal_count(); ++u)
            if (!ad.at(t, u).is_zero())
                img.add_term(BasisWord{1} << horizontal_gen(u), Scalar(ring_, ad.at(t, u)));
        images[horizontal_gen(t)] = std::move(img);
    }
    const KMatrix& rho_a = rep_.matrices.at(a);
    for (std::size_t i = 0; i < fiber_dim(); ++i) {
        Form img(frame_);
        for (std::size_t j = 0; j < fiber_dim(); ++j)
            if (!rho_a.at(i, j).is_zero())
                img.add_term(BasisWord{1} << vertical_gen(j), Scalar(ring_, -rho_a.at(i, j)));
        images[vertical_gen(i)] = std::move(img);
    }
    return apply_derivation(x, on_coeff, images, false);
}

bool HomogeneousSetup::is_basic(const Form& x) const
{
    BasisWord extra = frame_->mask(GenKind::gauge) | frame_->mask(GenKind::raw_vertical);
    Form mixed = to_mixed(x);
    bool no_gauge = !(mixed.support() & extra);
    bool contractions_vanish = true;
    for (std::size_t a = 0; a < gauge_count() && contractions_vanish; ++a)
        contractions_vanish = fundamental_contraction(a, x).is_zero();
    return no_gauge && contractions_vanish;
}

bool HomogeneousSetup::is_invariant(const Form& x) const
{
    if (!is_basic(x))
        return false;
    Form basic = to_mixed(x);
    for (std::size_t a = 0; a < gauge_count(); ++a)
        if (!lie_derivative(a, basic).is_zero())
            return false;
    return true;
}

std::vector<KVector> HomogeneousSetup::stabilizer_algebra(const Point& pt) const
{
    KVector v = pt.fiber_values();
    KMatrix m(fiber_dim(), gauge_count());
    for (std::size_t a = 0; a < gauge_count(); ++a) {
        KVector col = rep_.matrices[a].apply(v);
        for (std::size_t i = 0; i < fiber_dim(); ++i)
            m.at(i, a) = col[i];
    }
    return kernel(std::move(m));
}

std::vector<BasisWord> HomogeneousSetup::basic_words(Bidegree bd) const
{
    std::vector<BasisWord> words;
    std::size_t nt = horizontal_count(), k = fiber_dim();
    if (bd.p < 0 || bd.q < 0 || static_cast<std::size_t>(bd.p) > nt || static_cast<std::size_t>(bd.q) > k)
        return words;
    for (BasisWord h = 0; h < (BasisWord{1} << nt); ++h) {
        if (std::popcount(h) != bd.p)
            continue;
        for (BasisWord v = 0; v < (BasisWord{1} << k); ++v)
            if (std::popcount(v) == bd.q)
                words.push_back(h | (v << nt));
    }
    std::sort(words.begin(), words.end());
    return words;
}

int HomogeneousSetup::invariant_dimension(Bidegree bd, const std::vector<KVector>& stab_basis,
                                          const std::vector<GroupElement>& extra) const
{
    auto words = basic_words(bd);
    if (words.empty())
        return 0;
    std::map<BasisWord, std::size_t> column;
    for (std::size_t c = 0; c < words.size(); ++c)
        column[words[c]] = c;
    std::vector<std::vector<std::optional<Form>>> actions;
    std::size_t nt = horizontal_count(), k = fiber_dim();
    for (auto& x : stab_basis) {
        if (x.size() != gauge_count())
            throw Error("stabilizer vector has wrong length");
        std::vector<std::optional<Form>> images(frame_->size());
        for (std::size_t t = 0; t < nt; ++t) {
            Form img(frame_);
            for (std::size_t a = 0; a < gauge_count(); ++a) {
                if (x[a].is_zero())
                    continue;
                for (std::size_t u = 0; u < nt; ++u)
                    if (!ad_t_[a].at(t, u).is_zero())
                        img.add_term(BasisWord{1} << horizontal_gen(u), Scalar(ring_, x[a] * ad_t_[a].at(t, u)));
            }
            images[horizontal_gen(t)] = std::move(img);
        }
        for (std::size_t i = 0; i < k; ++i) {
            Form img(frame_);
            for (std::size_t a = 0; a < gauge_count(); ++a) {
                if (x[a].is_zero())
                    continue;
                for (std::size_t j = 0; j < k; ++j)
                    if (!rep_.matrices[a].at(i, j).is_zero())
                        img.add_term(BasisWord{1} << vertical_gen(j), Scalar(ring_, -(x[a] * rep_.matrices[a].at(i, j))));
            }
            images[vertical_gen(i)] = std::move(img);
        }
        actions.push_back(std::move(images));
    }
    std::vector<std::vector<std::optional<Form>>> finite;
    for (auto& g : extra) {
        if (g.on_horizontal.rows() != nt || g.on_horizontal.cols() != nt || g.on_vertical.rows() != k ||
            g.on_vertical.cols() != k)
            throw Error("group element matrices have wrong size");
        if (!(g.on_horizontal * g.on_horizontal.transpose() == KMatrix::identity(nt)) ||
            !(g.on_vertical * g.on_vertical.transpose() == KMatrix::identity(k)))
            throw Error("group element is not orthogonal");
        std::vector<std::optional<Form>> images(frame_->size());
        for (std::size_t t = 0; t < nt; ++t) {
            Form img(frame_);
            for (std::size_t u = 0; u < nt; ++u)
                if (!g.on_horizontal.at(t, u).is_zero())
                    img.add_term(BasisWord{1} << horizontal_gen(u), Scalar(ring_, g.on_horizontal.at(t, u)));
            images[horizontal_gen(t)] = std::move(img);
        }
        for (std::size_t i = 0; i < k; ++i) {
            Form img(frame_);
            for (std::size_t j = 0; j < k; ++j)
                if (!g.on_vertical.at(i, j).is_zero())
                    img.add_term(BasisWord{1} << vertical_gen(j), Scalar(ring_, g.on_vertical.at(i, j)));
            images[vertical_gen(i)] = std::move(img);
        }
        finite.push_back(std::move(images));
    }
    std::size_t blocks = actions.size() + finite.size();
    KMatrix m(blocks * words.size(), words.size());
    for (std::size_t c = 0; c < words.size(); ++c) {
        Form w = word_form(frame_, words[c]);
        std::size_t block = 0;
        for (auto& images : actions) {
            Form img = apply_derivation(w, nullptr, images, false);
            for (auto& [u, coef] : img.terms())
                m.at(block * words.size() + column.at(u), c) = coef.constant_value();
            ++block;
        }
        for (auto& images : finite) {
            Form img = substitute(w, images) - w;
            for (auto& [u, coef] : img.terms())
                m.at(block * words.size() + column.at(u), c) = coef.constant_value();
            ++block;
        }
    }
    return static_cast<int>(words.size() - rank(std::move(m)));
}

Point HomogeneousSetup::origin() const
{
    return Point(ring_, std::vector<KElem>(fiber_dim(), KElem(0)));
}

}  // namespace equiform
