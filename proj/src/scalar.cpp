#include "equiform/scalar.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace equiform {

namespace {

Poly divide_monomial(const Poly& p, const Monomial& m)
{
    Poly r;
    for (auto& [mono, c] : p.terms())
        r.add_term(mono / m, c);
    return r;
}

}  // namespace

Poly reduce_radicals(const Ring& ring, Poly p)
{
    for (std::size_t j = 0; j < ring.radical_count(); ++j) {
        std::size_t var = ring.radical_var(j);
        if (p.degree_in(var) < 2)
            continue;
        Poly r;
        for (auto& [m, c] : p.terms()) {
            unsigned e = m.exp[var];
            if (e < 2) {
                r.add_term(m, c);
                continue;
            }
            Monomial n = m;
            n.exp[var] = static_cast<uint8_t>(e % 2);
            r += ring.relation(j).pow(e / 2).times_monomial(n).scaled(c);
        }
        p = std::move(r);
    }
    return p;
}

std::shared_ptr<const Ring> Ring::create(RingSpec spec)
{
    auto ring = std::shared_ptr<Ring>(new Ring());
    std::set<std::string> seen;
    auto claim = [&](const std::string& n) {
        if (n.empty())
            throw Error("empty variable name");
        if (!seen.insert(n).second)
            throw Error("duplicate name '" + n + "' in ring declaration");
        ring->names_.push_back(n);
    };
    for (auto& n : spec.fiber_vars)
        claim(n);
    for (auto& n : spec.params)
        claim(n);
    for (auto& r : spec.radicals)
        claim(r.name);
    if (ring->names_.size() > kMaxVars)
        throw Error("too many ring variables (at most " + std::to_string(kMaxVars) + ")");
    std::size_t base = spec.fiber_vars.size() + spec.params.size();
    for (auto& r : spec.radicals) {
        if (r.relation.is_zero())
            throw Error("radical '" + r.name + "' has a zero defining polynomial");
        for (auto& [m, c] : r.relation.terms())
            for (std::size_t v = base; v < kMaxVars; ++v)
                if (m.exp[v] != 0)
                    throw Error("defining polynomial of radical '" + r.name + "' involves a radical");
    }
    if (spec.max_laurent < 1)
        throw Error("Laurent bound must be positive");
    ring->basis_ = spec.sqrt_constants.empty() ? nullptr : std::make_shared<const SqrtBasis>(spec.sqrt_constants);
    ring->spec_ = std::move(spec);
    return ring;
}

std::optional<std::size_t> Ring::find_fiber(const std::string& name) const
{
    for (std::size_t i = 0; i < spec_.fiber_vars.size(); ++i)
        if (spec_.fiber_vars[i] == name)
            return i;
    return std::nullopt;
}

std::optional<std::size_t> Ring::find_param(const std::string& name) const
{
    for (std::size_t i = 0; i < spec_.params.size(); ++i)
        if (spec_.params[i] == name)
            return i;
    return std::nullopt;
}

std::optional<std::size_t> Ring::find_radical(const std::string& name) const
{
    for (std::size_t i = 0; i < spec_.radicals.size(); ++i)
        if (spec_.radicals[i].name == name)
            return i;
    return std::nullopt;
}

std::optional<std::size_t> Ring::radical_with_relation(const Poly& p) const
{
    for (std::size_t j = 0; j < spec_.radicals.size(); ++j)
        if (spec_.radicals[j].relation == p)
            return j;
    return std::nullopt;
}

Poly Ring::aa() const
{
    Poly p;
    for (std::size_t i = 0; i < fiber_count(); ++i)
        p += Poly::variable(fiber_var(i), 2);
    return p;
}

std::optional<KElem> Ring::sqrt_of_integer(long n) const
{
    if (n < 0)
        return std::nullopt;
    KElem v = KElem(mpq_class(n));
    if (basis_)
        v = v + KElem(basis_, 0, mpq_class(0));
    return v.sqrt();
}

Point::Point(RingPtr ring, std::vector<KElem> fiber, std::map<std::string, KElem> params) : ring_(std::move(ring))
{
    if (fiber.size() != ring_->fiber_count())
        throw Error("point has " + std::to_string(fiber.size()) + " fiber values, expected " +
                    std::to_string(ring_->fiber_count()));
    values_.assign(ring_->variable_count(), std::nullopt);
    for (std::size_t i = 0; i < fiber.size(); ++i)
        values_[ring_->fiber_var(i)] = fiber[i];
    for (auto& [name, v] : params) {
        auto idx = ring_->find_param(name);
        if (!idx)
            throw Error("unknown parameter '" + name + "'");
        values_[ring_->param_var(*idx)] = v;
    }
    for (std::size_t j = 0; j < ring_->radical_count(); ++j) {
        const Poly& rel = ring_->relation(j);
        bool complete = true;
        for (auto& [m, c] : rel.terms())
            for (std::size_t v = 0; v < values_.size(); ++v)
                if (m.exp[v] != 0 && !values_[v])
                    complete = false;
        if (!complete)
            continue;
        KElem p = rel.evaluate(values_);
        auto root = p.sqrt();
        if (!root)
            throw Error("radical '" + ring_->spec().radicals[j].name + "' has no value in the coefficient field at this point (" +
                        p.to_string() + " is not a square)");
        values_[ring_->radical_var(j)] = *root;
    }
}

std::vector<KElem> Point::fiber_values() const
{
    std::vector<KElem> r;
    for (std::size_t i = 0; i < ring_->fiber_count(); ++i)
        r.push_back(*values_[i]);
    return r;
}

bool Point::is_origin() const
{
    for (std::size_t i = 0; i < ring_->fiber_count(); ++i)
        if (!values_[i]->is_zero())
            return false;
    return true;
}

Scalar::Scalar(RingPtr ring, const KElem& c) : ring_(std::move(ring)), num_(c)
{
    if (ring_) {
        rad_den_.assign(ring_->radical_count(), 0);
        par_den_.assign(ring_->param_count(), 0);
    }
}

Scalar Scalar::from_poly(RingPtr ring, Poly p)
{
    Scalar s(std::move(ring));
    s.rad_den_.assign(s.ring_->radical_count(), 0);
    s.par_den_.assign(s.ring_->param_count(), 0);
    s.num_ = std::move(p);
    s.normalize();
    return s;
}

Scalar Scalar::fiber(RingPtr ring, std::size_t i)
{
    std::size_t v = ring->fiber_var(i);
    return from_poly(std::move(ring), Poly::variable(v));
}

Scalar Scalar::param(RingPtr ring, std::size_t i)
{
    std::size_t v = ring->param_var(i);
    return from_poly(std::move(ring), Poly::variable(v));
}

Scalar Scalar::radical(RingPtr ring, std::size_t j)
{
    std::size_t v = ring->radical_var(j);
    return from_poly(std::move(ring), Poly::variable(v));
}

bool Scalar::has_denominator() const
{
    for (int m : rad_den_)
        if (m)
            return true;
    for (int m : par_den_)
        if (m)
            return true;
    return false;
}

bool Scalar::is_constant() const
{
    return num_.is_constant() && !has_denominator();
}

KElem Scalar::constant_value() const
{
    if (!is_constant())
        throw Error("scalar " + to_string() + " is not constant");
    return num_.constant_term();
}

bool Scalar::depends_on(std::size_t var) const
{
    if (num_.degree_in(var) > 0)
        return true;
    if (!ring_)
        return false;
    if (var >= ring_->param_var(0) && var < ring_->param_var(0) + ring_->param_count())
        return par_den_[var - ring_->param_var(0)] > 0;
    for (std::size_t j = 0; j < ring_->radical_count(); ++j)
        if (rad_den_[j] > 0 && (var == ring_->radical_var(j) || ring_->relation(j).degree_in(var) > 0))
            return true;
    return false;
}

void Scalar::adopt(const RingPtr& r)
{
    if (!r || r == ring_)
        return;
    if (ring_)
        throw Error("scalars belong to different coefficient rings");
    ring_ = r;
    rad_den_.assign(r->radical_count(), 0);
    par_den_.assign(r->param_count(), 0);
}

void Scalar::normalize()
{
    if (!ring_)
        return;
    num_ = reduce_radicals(*ring_, std::move(num_));
    if (num_.is_zero()) {
        std::fill(rad_den_.begin(), rad_den_.end(), 0);
        std::fill(par_den_.begin(), par_den_.end(), 0);
        return;
    }
    for (std::size_t j = 0; j < rad_den_.size(); ++j) {
        while (rad_den_[j] > 0) {
            auto q = num_.divide_exact(ring_->relation(j));
            if (!q)
                break;
            num_ = std::move(*q);
            --rad_den_[j];
        }
    }
    Monomial content;
    bool any = false;
    for (std::size_t i = 0; i < par_den_.size(); ++i) {
        if (par_den_[i] == 0)
            continue;
        int g = std::min(num_.min_degree_in(ring_->param_var(i)), par_den_[i]);
        if (g > 0) {
            content.exp[ring_->param_var(i)] = static_cast<uint8_t>(g);
            par_den_[i] -= g;
            any = true;
        }
    }
    if (any)
        num_ = divide_monomial(num_, content);
    for (std::size_t j = 0; j < rad_den_.size(); ++j) {
        if (rad_den_[j] == 0)
            continue;
        bool all_odd = num_.min_degree_in(ring_->radical_var(j)) == 1;
        int lowest = all_odd ? 1 - 2 * rad_den_[j] : -2 * rad_den_[j];
        if (lowest < -ring_->max_laurent())
            throw Error("radical '" + ring_->spec().radicals[j].name + "' exponent " + std::to_string(lowest) +
                        " exceeds the Laurent bound " + std::to_string(ring_->max_laurent()));
    }
}

void Scalar::bring_to(const std::vector<int>& rad, const std::vector<int>& par)
{
    Poly f(KElem(1));
    for (std::size_t j = 0; j < rad.size(); ++j) {
        int have = j < rad_den_.size() ? rad_den_[j] : 0;
        if (rad[j] > have)
            f = f * ring_->relation(j).pow(static_cast<unsigned>(rad[j] - have));
    }
    Monomial m;
    for (std::size_t i = 0; i < par.size(); ++i) {
        int have = i < par_den_.size() ? par_den_[i] : 0;
        m.exp[ring_->param_var(i)] = static_cast<uint8_t>(par[i] - have);
    }
    num_ = (num_ * f).times_monomial(m);
    rad_den_ = rad;
    par_den_ = par;
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    adopt(o.ring_);
    if (o.is_zero())
        return *this;
    if (is_zero()) {
        RingPtr keep = ring_;
        *this = o;
        adopt(keep);
        return *this;
    }
    if (!ring_) {
        num_ += o.num_;
        return *this;
    }
    std::vector<int> orad = o.rad_den_, opar = o.par_den_;
    orad.resize(rad_den_.size(), 0);
    opar.resize(par_den_.size(), 0);
    if (orad == rad_den_ && opar == par_den_) {
        num_ += o.num_;
        normalize();
        return *this;
    }
    std::vector<int> rad(rad_den_.size()), par(par_den_.size());
    for (std::size_t j = 0; j < rad.size(); ++j)
        rad[j] = std::max(rad_den_[j], orad[j]);
    for (std::size_t i = 0; i < par.size(); ++i)
        par[i] = std::max(par_den_[i], opar[i]);
    Scalar other = o;
    other.adopt(ring_);
    other.rad_den_ = orad;
    other.par_den_ = opar;
    other.bring_to(rad, par);
    bring_to(rad, par);
    num_ += other.num_;
    normalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    return *this += -o;
}

Scalar Scalar::operator-() const
{
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    adopt(o.ring_);
    if (is_zero())
        return *this;
    if (o.is_zero()) {
        num_ = Poly();
        normalize();
        return *this;
    }
    num_ = num_ * o.num_;
    for (std::size_t j = 0; j < o.rad_den_.size(); ++j)
        rad_den_[j] += o.rad_den_[j];
    for (std::size_t i = 0; i < o.par_den_.size(); ++i)
        par_den_[i] += o.par_den_[i];
    bool simple = o.num_.is_constant() && !o.has_denominator();
    if (!simple)
        normalize();
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    return *this *= o.inverse();
}

Scalar Scalar::inverse() const
{
    if (is_zero())
        throw Error("division by zero");
    if (!ring_ || (num_.is_constant() && !has_denominator())) {
        Scalar r = *this;
        r.num_ = Poly(num_.constant_term().inverse());
        return r;
    }
    Poly n = num_;
    std::vector<int> eps(ring_->radical_count(), 0), f(ring_->radical_count(), 0), g(ring_->param_count(), 0);
    for (std::size_t i = 0; i < ring_->fiber_count(); ++i)
        if (n.min_degree_in(ring_->fiber_var(i)) > 0)
            throw Error("non-invertible denominator: " + to_string());
    bool changed = true;
    while (changed && !n.is_constant()) {
        changed = false;
        Monomial content;
        for (std::size_t i = 0; i < ring_->param_count(); ++i) {
            int e = n.min_degree_in(ring_->param_var(i));
            if (e > 0) {
                content.exp[ring_->param_var(i)] = static_cast<uint8_t>(e);
                g[i] += e;
                changed = true;
            }
        }
        for (std::size_t j = 0; j < ring_->radical_count(); ++j) {
            if (eps[j] == 0 && n.min_degree_in(ring_->radical_var(j)) == 1) {
                content.exp[ring_->radical_var(j)] = 1;
                eps[j] += 1;
                changed = true;
            }
        }
        if (changed)
            n = divide_monomial(n, content);
        for (std::size_t j = 0; j < ring_->radical_count() && !n.is_constant(); ++j) {
            while (auto q = n.divide_exact(ring_->relation(j))) {
                n = std::move(*q);
                f[j] += 1;
                changed = true;
            }
        }
    }
    if (!n.is_constant())
        throw Error("non-invertible denominator: " + to_string());
    KElem c = n.constant_term();
    Poly numer(c.inverse());
    for (std::size_t j = 0; j < ring_->radical_count(); ++j) {
        if (rad_den_[j])
            numer = numer * ring_->relation(j).pow(static_cast<unsigned>(rad_den_[j]));
        if (eps[j])
            numer = numer * Poly::variable(ring_->radical_var(j));
    }
    Monomial pm;
    for (std::size_t i = 0; i < ring_->param_count(); ++i)
        pm.exp[ring_->param_var(i)] = static_cast<uint8_t>(par_den_[i]);
    numer = numer.times_monomial(pm);
    Scalar r(ring_);
    r.num_ = std::move(numer);
    r.rad_den_.assign(ring_->radical_count(), 0);
    r.par_den_ = g;
    for (std::size_t j = 0; j < ring_->radical_count(); ++j)
        r.rad_den_[j] = f[j] + eps[j];
    r.normalize();
    return r;
}

Scalar Scalar::pow(int n) const
{
    if (n < 0)
        return inverse().pow(-n);
    Scalar r = ring_ ? Scalar(ring_, 1) : Scalar(nullptr, 1);
    Scalar base = *this;
    while (n) {
        if (n & 1)
            r *= base;
        n >>= 1;
        if (n)
            base *= base;
    }
    return r;
}

Scalar Scalar::derivative(std::size_t i) const
{
    if (!ring_ || is_zero())
        return Scalar(ring_);
    std::size_t var = ring_->fiber_var(i);
    Scalar result(ring_);
    result.num_ = num_.derivative(var);
    result.rad_den_ = rad_den_;
    result.par_den_ = par_den_;
    result.normalize();
    for (std::size_t j = 0; j < ring_->radical_count(); ++j) {
        Poly dp = ring_->relation(j).derivative(var);
        if (dp.is_zero())
            continue;
        std::size_t rv = ring_->radical_var(j);
        Poly odd;
        for (auto& [m, c] : num_.terms())
            if (m.exp[rv] == 1)
                odd.add_term(m, c);
        if (odd.is_zero() && rad_den_[j] == 0)
            continue;
        Poly inner = odd.scaled(KElem(mpq_class(1, 2))) - num_.scaled(KElem(long(rad_den_[j])));
        Scalar term(ring_);
        term.num_ = reduce_radicals(*ring_, dp * inner);
        term.rad_den_ = rad_den_;
        term.rad_den_[j] += 1;
        term.par_den_ = par_den_;
        term.normalize();
        result += term;
    }
    return result;
}

KElem Scalar::evaluate(const Point& pt) const
{
    if (is_zero())
        return KElem(0);
    if (!ring_)
        return num_.constant_term();
    if (pt.ring() != ring_)
        throw Error("point belongs to a different coefficient ring");
    const auto& values = pt.values();
    std::vector<std::string> missing;
    for (std::size_t v = 0; v < ring_->variable_count(); ++v) {
        if (values[v])
            continue;
        bool needed = depends_on(v);
        if (needed)
            missing.push_back(ring_->variable_names()[v]);
    }
    if (!missing.empty()) {
        std::string list;
        for (auto& m : missing)
            list += (list.empty() ? "" : ", ") + m;
        throw Error("unassigned parameter(s): " + list);
    }
    KElem value = num_.evaluate(values);
    KElem den(1);
    for (std::size_t j = 0; j < ring_->radical_count(); ++j)
        for (int e = 0; e < rad_den_[j]; ++e)
            den *= ring_->relation(j).evaluate(values);
    for (std::size_t i = 0; i < ring_->param_count(); ++i)
        for (int e = 0; e < par_den_[i]; ++e)
            den *= *values[ring_->param_var(i)];
    if (den.is_zero())
        throw Error("denominator vanishes at the evaluation point");
    return value / den;
}

Scalar Scalar::substitute_params(const std::map<std::size_t, KElem>& values) const
{
    if (!ring_)
        return *this;
    Scalar r = *this;
    KElem factor(1);
    for (auto& [i, v] : values) {
        std::size_t var = ring_->param_var(i);
        for (std::size_t j = 0; j < ring_->radical_count(); ++j)
            if (ring_->relation(j).degree_in(var) > 0 && depends_on(ring_->radical_var(j)))
                throw Error("cannot substitute parameter '" + ring_->spec().params[i] +
                            "' inside the relation of radical '" + ring_->spec().radicals[j].name + "'");
        r.num_ = r.num_.substitute(var, v);
        for (int e = 0; e < r.par_den_[i]; ++e) {
            if (v.is_zero())
                throw Error("parameter '" + ring_->spec().params[i] + "' substituted by zero in a denominator");
            factor *= v;
        }
        r.par_den_[i] = 0;
    }
    r.num_ = r.num_.scaled(factor.inverse());
    r.normalize();
    return r;
}

Poly Scalar::sphere_reduction() const
{
    if (!ring_ || is_zero())
        return num_;
    Poly aa = ring_->aa();
    Poly n = num_;
    for (std::size_t j = 0; j < ring_->radical_count(); ++j) {
        if (!depends_on(ring_->radical_var(j)))
            continue;
        if (!(ring_->relation(j) == aa))
            throw Error("restriction to the unit sphere needs radicals of aa, radical '" +
                        ring_->spec().radicals[j].name + "' has another relation");
        n = n.substitute(ring_->radical_var(j), KElem(1));
    }
    return n.remainder(aa - Poly(KElem(1)));
}

std::string Scalar::to_string() const
{
    if (!ring_)
        return num_.to_string({});
    std::string n = num_.to_string(ring_->variable_names());
    if (!has_denominator())
        return n;
    std::ostringstream den;
    bool first = true;
    for (std::size_t j = 0; j < rad_den_.size(); ++j) {
        if (!rad_den_[j])
            continue;
        den << (first ? "" : "*") << ring_->spec().radicals[j].name << "^" << 2 * rad_den_[j];
        first = false;
    }
    for (std::size_t i = 0; i < par_den_.size(); ++i) {
        if (!par_den_[i])
            continue;
        den << (first ? "" : "*") << ring_->spec().params[i];
        if (par_den_[i] > 1)
            den << "^" << par_den_[i];
        first = false;
    }
    bool simple_num = num_.size() == 1;
    return (simple_num ? n : "(" + n + ")") + "/(" + den.str() + ")";
}

}  // namespace equiform
