#include "equiform/poly.hpp"

#include <sstream>

namespace equiform {

int Monomial::degree() const
{
    int d = 0;
    for (auto e : exp)
        d += e;
    return d;
}

bool Monomial::divides(const Monomial& other) const
{
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (exp[i] > other.exp[i])
            return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& other) const
{
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        unsigned e = unsigned(exp[i]) + other.exp[i];
        if (e > 255)
            throw Error("monomial exponent overflow");
        r.exp[i] = static_cast<uint8_t>(e);
    }
    return r;
}

Monomial Monomial::operator/(const Monomial& other) const
{
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        r.exp[i] = static_cast<uint8_t>(exp[i] - other.exp[i]);
    return r;
}

Poly::Poly(const KElem& c)
{
    if (!c.is_zero())
        terms_.emplace(Monomial{}, c);
}

Poly Poly::variable(std::size_t index, unsigned power)
{
    if (index >= kMaxVars)
        throw Error("too many polynomial variables");
    Monomial m;
    m.exp[index] = static_cast<uint8_t>(power);
    return term(m, KElem(1));
}

Poly Poly::term(const Monomial& m, const KElem& c)
{
    Poly p;
    p.add_term(m, c);
    return p;
}

bool Poly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

KElem Poly::constant_term() const
{
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? KElem(0) : it->second;
}

int Poly::degree_in(std::size_t var) const
{
    int d = 0;
    for (auto& [m, c] : terms_)
        d = std::max(d, int(m.exp[var]));
    return d;
}

int Poly::min_degree_in(std::size_t var) const
{
    int d = 1 << 20;
    for (auto& [m, c] : terms_)
        d = std::min(d, int(m.exp[var]));
    return terms_.empty() ? 0 : d;
}

int Poly::total_degree() const
{
    int d = 0;
    for (auto& [m, c] : terms_)
        d = std::max(d, m.degree());
    return d;
}

void Poly::add_term(const Monomial& m, const KElem& c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o)
{
    for (auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    for (auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto& [m, c] : r.terms_)
        c = -c;
    return r;
}

Poly operator*(const Poly& a, const Poly& b)
{
    Poly r;
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_)
            r.add_term(ma * mb, ca * cb);
    return r;
}

Poly Poly::scaled(const KElem& c) const
{
    if (c.is_zero())
        return Poly();
    Poly r = *this;
    for (auto& [m, v] : r.terms_)
        v *= c;
    return r;
}

Poly Poly::times_monomial(const Monomial& mono) const
{
    Poly r;
    for (auto& [m, c] : terms_)
        r.terms_.emplace_hint(r.terms_.end(), m * mono, c);
    return r;
}

Poly Poly::pow(unsigned n) const
{
    Poly r(KElem(1));
    Poly base = *this;
    while (n) {
        if (n & 1)
            r = r * base;
        n >>= 1;
        if (n)
            base = base * base;
    }
    return r;
}

bool Poly::operator==(const Poly& o) const
{
    if (terms_.size() != o.terms_.size())
        return false;
    auto it = o.terms_.begin();
    for (auto& [m, c] : terms_) {
        if (m != it->first || c != it->second)
            return false;
        ++it;
    }
    return true;
}

Poly Poly::derivative(std::size_t var) const
{
    Poly r;
    for (auto& [m, c] : terms_) {
        if (m.exp[var] == 0)
            continue;
        Monomial n = m;
        n.exp[var]--;
        r.add_term(n, c * KElem(long(m.exp[var])));
    }
    return r;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const
{
    if (d.is_zero())
        throw Error("polynomial division by zero");
    Poly q;
    Poly f = *this;
    auto lead = d.terms_.rbegin();
    KElem lead_inv = lead->second.inverse();
    while (!f.is_zero()) {
        auto lt = f.terms_.rbegin();
        if (!lead->first.divides(lt->first))
            return std::nullopt;
        Monomial m = lt->first / lead->first;
        KElem c = lt->second * lead_inv;
        q.add_term(m, c);
        f -= d.times_monomial(m).scaled(c);
    }
    return q;
}

Poly Poly::remainder(const Poly& d) const
{
    if (d.is_zero())
        throw Error("polynomial division by zero");
    Poly r;
    Poly f = *this;
    auto lead = d.terms_.rbegin();
    KElem lead_inv = lead->second.inverse();
    while (!f.is_zero()) {
        auto lt = f.terms_.rbegin();
        Monomial lm = lt->first;
        KElem lc = lt->second;
        if (lead->first.divides(lm)) {
            Monomial m = lm / lead->first;
            f -= d.times_monomial(m).scaled(lc * lead_inv);
        } else {
            r.add_term(lm, lc);
            f.terms_.erase(lm);
        }
    }
    return r;
}

Poly Poly::substitute(std::size_t var, const KElem& value) const
{
    Poly r;
    for (auto& [m, c] : terms_) {
        Monomial n = m;
        KElem f = c;
        for (unsigned e = 0; e < m.exp[var]; ++e)
            f *= value;
        n.exp[var] = 0;
        r.add_term(n, f);
    }
    return r;
}

Poly Poly::substitute(std::size_t var, const Poly& value) const
{
    Poly r;
    std::map<unsigned, Poly> powers;
    for (auto& [m, c] : terms_) {
        Monomial n = m;
        unsigned e = m.exp[var];
        n.exp[var] = 0;
        auto it = powers.find(e);
        if (it == powers.end())
            it = powers.emplace(e, value.pow(e)).first;
        r += it->second.times_monomial(n).scaled(c);
    }
    return r;
}

KElem Poly::evaluate(std::span<const std::optional<KElem>> values) const
{
    KElem sum(0);
    for (auto& [m, c] : terms_) {
        KElem t = c;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            if (m.exp[i] == 0)
                continue;
            if (i >= values.size() || !values[i])
                throw Error("polynomial variable without a value");
            for (unsigned e = 0; e < m.exp[i]; ++e)
                t *= *values[i];
        }
        sum += t;
    }
    return sum;
}

std::string Poly::to_string(const std::vector<std::string>& names) const
{
    if (terms_.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Monomial& m = it->first;
        KElem c = it->second;
        bool negative = c.is_monomial() && c.sign() < 0;
        if (negative)
            c = -c;
        if (first)
            out << (negative ? "-" : "");
        else
            out << (negative ? " - " : " + ");
        first = false;
        bool unit = c.is_one();
        if (!unit || m.is_one())
            out << (c.is_monomial() ? c.to_string() : "(" + c.to_string() + ")");
        bool need_star = !unit;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            if (m.exp[i] == 0)
                continue;
            if (need_star)
                out << "*";
            need_star = true;
            out << (i < names.size() ? names[i] : "x" + std::to_string(i));
            if (m.exp[i] > 1)
                out << "^" << int(m.exp[i]);
        }
    }
    return out.str();
}

}  // namespace equiform
