#include "equiform/kfield.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace equiform {

namespace {

bool is_square_free(long d)
{
    for (long p = 2; p * p <= d; ++p)
        if (d % (p * p) == 0)
            return false;
    return true;
}

}  // namespace

bool is_rational_square(const mpq_class& q)
{
    if (sgn(q) < 0)
        return false;
    return mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

std::string rational_to_string(const mpq_class& q)
{
    return q.get_str();
}

SqrtBasis::SqrtBasis(std::vector<long> constants) : constants_(std::move(constants))
{
    if (constants_.size() > 10)
        throw Error("too many square-root constants (at most 10)");
    for (std::size_t i = 0; i < constants_.size(); ++i) {
        long d = constants_[i];
        if (d < 2 || !is_square_free(d))
            throw Error("square-root constant " + std::to_string(d) + " is not a square-free integer > 1");
        for (std::size_t j = 0; j < i; ++j)
            if (constants_[j] == d)
                throw Error("square-root constant " + std::to_string(d) + " declared twice");
    }
    std::size_t dim = dimension();
    products_.resize(dim);
    for (uint32_t s = 0; s < dim; ++s) {
        mpz_class p = 1;
        for (std::size_t i = 0; i < constants_.size(); ++i)
            if (s & (1u << i))
                p *= constants_[i];
        products_[s] = p;
        if (s != 0 && mpz_perfect_square_p(p.get_mpz_t()))
            throw Error("square-root constants are not independent: product " + p.get_str() + " is a square");
    }
    factors_.resize(dim * dim);
    for (uint32_t s = 0; s < dim; ++s)
        for (uint32_t t = 0; t < dim; ++t)
            factors_[s * dim + t] = products_[s & t];
}

std::optional<std::size_t> SqrtBasis::index_of(long d) const
{
    for (std::size_t i = 0; i < constants_.size(); ++i)
        if (constants_[i] == d)
            return i;
    return std::nullopt;
}

KElem::KElem(SqrtBasisPtr basis, uint32_t mask, const mpq_class& coefficient) : basis_(std::move(basis))
{
    std::size_t dim = basis_ ? basis_->dimension() : 1;
    if (mask >= dim)
        throw Error("sqrt basis index out of range");
    c_.assign(dim, mpq_class(0));
    c_[mask] = coefficient;
    c_[mask].canonicalize();
}

KElem KElem::sqrt_constant(SqrtBasisPtr basis, std::size_t index)
{
    if (!basis || index >= basis->size())
        throw Error("unknown square-root constant");
    return KElem(std::move(basis), 1u << index, mpq_class(1));
}

bool KElem::is_zero() const
{
    for (auto& q : c_)
        if (sgn(q) != 0)
            return false;
    return true;
}

bool KElem::is_rational() const
{
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0)
            return false;
    return true;
}

mpq_class KElem::rational() const
{
    if (!is_rational())
        throw Error("element " + to_string() + " is not rational");
    return c_[0];
}

const mpq_class& KElem::coefficient(uint32_t mask) const
{
    static const mpq_class zero(0);
    return mask < c_.size() ? c_[mask] : zero;
}

void KElem::promote(const SqrtBasisPtr& b)
{
    if (!b || b == basis_)
        return;
    if (basis_) {
        if (!basis_->same_as(*b))
            throw Error("elements belong to different number fields");
        basis_ = b;
        return;
    }
    basis_ = b;
    c_.resize(b->dimension(), mpq_class(0));
}

KElem& KElem::operator+=(const KElem& o)
{
    promote(o.basis_);
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] += o.c_[i];
    return *this;
}

KElem& KElem::operator-=(const KElem& o)
{
    promote(o.basis_);
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] -= o.c_[i];
    return *this;
}

KElem& KElem::operator*=(const KElem& o)
{
    if (o.c_.size() == 1) {
        for (auto& q : c_)
            q *= o.c_[0];
        return *this;
    }
    if (c_.size() == 1) {
        mpq_class s = c_[0];
        *this = o;
        for (auto& q : c_)
            q *= s;
        return *this;
    }
    promote(o.basis_);
    std::vector<mpq_class> r(c_.size(), mpq_class(0));
    for (uint32_t s = 0; s < c_.size(); ++s) {
        if (sgn(c_[s]) == 0)
            continue;
        for (uint32_t t = 0; t < o.c_.size(); ++t) {
            if (sgn(o.c_[t]) == 0)
                continue;
            r[s ^ t] += c_[s] * o.c_[t] * mpq_class(basis_->factor(s, t));
        }
    }
    c_ = std::move(r);
    return *this;
}

KElem& KElem::operator/=(const KElem& o)
{
    return *this *= o.inverse();
}

KElem KElem::operator-() const
{
    KElem r = *this;
    for (auto& q : r.c_)
        q = -q;
    return r;
}

bool KElem::operator==(const KElem& o) const
{
    std::size_t n = std::max(c_.size(), o.c_.size());
    for (uint32_t i = 0; i < n; ++i)
        if (coefficient(i) != o.coefficient(i))
            return false;
    return true;
}

int KElem::highest_bit() const
{
    int best = -1;
    for (uint32_t s = 1; s < c_.size(); ++s)
        if (sgn(c_[s]) != 0)
            best = std::max(best, static_cast<int>(std::bit_width(s)) - 1);
    return best;
}

void KElem::split(std::size_t bit, KElem& a, KElem& b) const
{
    a = KElem();
    b = KElem();
    a.promote(basis_);
    b.promote(basis_);
    uint32_t m = 1u << bit;
    for (uint32_t s = 0; s < c_.size(); ++s) {
        if (s & m)
            b.c_[s ^ m] = c_[s];
        else
            a.c_[s] = c_[s];
    }
}

KElem KElem::inverse() const
{
    if (is_zero())
        throw Error("division by zero in number field");
    int bit = highest_bit();
    if (bit < 0) {
        KElem r = *this;
        r.c_[0] = 1 / c_[0];
        return r;
    }
    KElem a, b;
    split(static_cast<std::size_t>(bit), a, b);
    KElem root = sqrt_constant(basis_, static_cast<std::size_t>(bit));
    KElem conj = a - b * root;
    KElem norm = a * a - b * b * KElem(mpq_class(basis_->constant(static_cast<std::size_t>(bit))));
    return conj * norm.inverse();
}

int KElem::sign() const
{
    int bit = highest_bit();
    if (bit < 0)
        return sgn(c_[0]);
    KElem a, b;
    split(static_cast<std::size_t>(bit), a, b);
    int sa = a.sign();
    int sb = b.sign();
    if (sb == 0)
        return sa;
    if (sa == 0 || sa == sb)
        return sb;
    KElem t = a * a - b * b * KElem(mpq_class(basis_->constant(static_cast<std::size_t>(bit))));
    int st = t.sign();
    return sa > 0 ? st : -st;
}

std::optional<KElem> KElem::sqrt() const
{
    if (!is_rational())
        return std::nullopt;
    const mpq_class& q = c_[0];
    if (sgn(q) == 0)
        return KElem(0);
    if (sgn(q) < 0)
        return std::nullopt;
    std::size_t dim = basis_ ? basis_->dimension() : 1;
    for (uint32_t s = 0; s < dim; ++s) {
        mpq_class d = s == 0 ? mpq_class(1) : mpq_class(basis_->subset_product(s));
        mpq_class r = q / d;
        if (!is_rational_square(r))
            continue;
        mpz_class n, m;
        mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
        mpz_sqrt(m.get_mpz_t(), r.get_den_mpz_t());
        mpq_class root(n, m);
        root.canonicalize();
        if (s == 0)
            return KElem(root);
        return KElem(basis_, s, root);
    }
    return std::nullopt;
}

bool KElem::is_monomial() const
{
    int nonzero = 0;
    for (auto& q : c_)
        if (sgn(q) != 0)
            ++nonzero;
    return nonzero <= 1;
}

std::string KElem::to_string() const
{
    std::ostringstream out;
    bool first = true;
    for (uint32_t s = 0; s < c_.size(); ++s) {
        const mpq_class& q = c_[s];
        if (sgn(q) == 0)
            continue;
        mpq_class mag = abs(q);
        if (first)
            out << (sgn(q) < 0 ? "-" : "");
        else
            out << (sgn(q) < 0 ? " - " : " + ");
        first = false;
        if (s == 0) {
            out << mag.get_str();
            continue;
        }
        if (mag != 1)
            out << mag.get_str() << "*";
        out << "sqrt(" << basis_->subset_product(s).get_str() << ")";
    }
    if (first)
        return "0";
    return out.str();
}

}  // namespace equiform
