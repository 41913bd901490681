#pragma once

#include "equiform/kfield.hpp"
#include "equiform/poly.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace equiform {

struct RadicalDecl {
    std::string name;
    Poly relation;  // u^2 = relation, a polynomial in fiber variables and parameters
};

struct RingSpec {
    std::vector<long> sqrt_constants;
    std::vector<std::string> fiber_vars;
    std::vector<std::string> params;
    std::vector<RadicalDecl> radicals;
    int max_laurent = 4;
};

/// Coefficient ring K[a, params, u] localized at the radicals, the radical
/// relations and the parameters. Variables are laid out as fiber variables,
/// then parameters, then radicals.
class Ring {
public:
    static std::shared_ptr<const Ring> create(RingSpec spec);

    const SqrtBasisPtr& basis() const { return basis_; }
    const RingSpec& spec() const { return spec_; }

    std::size_t fiber_count() const { return spec_.fiber_vars.size(); }
    std::size_t param_count() const { return spec_.params.size(); }
    std::size_t radical_count() const { return spec_.radicals.size(); }
    std::size_t fiber_var(std::size_t i) const { return i; }
    std::size_t param_var(std::size_t i) const { return fiber_count() + i; }
    std::size_t radical_var(std::size_t j) const { return fiber_count() + param_count() + j; }
    std::size_t variable_count() const { return fiber_count() + param_count() + radical_count(); }
    const Poly& relation(std::size_t j) const { return spec_.radicals.at(j).relation; }
    const std::vector<std::string>& variable_names() const { return names_; }
    int max_laurent() const { return spec_.max_laurent; }

    std::optional<std::size_t> find_fiber(const std::string& name) const;
    std::optional<std::size_t> find_param(const std::string& name) const;
    std::optional<std::size_t> find_radical(const std::string& name) const;
    std::optional<std::size_t> radical_with_relation(const Poly& p) const;

    /// Sum of squares of the fiber variables.
    Poly aa() const;

    /// Is the sqrt constant basis element for the integer d available?
    std::optional<KElem> sqrt_of_integer(long n) const;

private:
    Ring() = default;
    RingSpec spec_;
    SqrtBasisPtr basis_;
    std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

/// Assignment of fiber variables and (some) parameters; radicals follow.
class Point {
public:
    Point() = default;
    Point(RingPtr ring, std::vector<KElem> fiber, std::map<std::string, KElem> params = {});

    const RingPtr& ring() const { return ring_; }
    const std::vector<std::optional<KElem>>& values() const { return values_; }
    KElem fiber(std::size_t i) const { return *values_.at(i); }
    std::vector<KElem> fiber_values() const;
    bool is_origin() const;

private:
    RingPtr ring_;
    std::vector<std::optional<KElem>> values_;
};

/// Element of the coefficient ring in normal form
///   numerator / (prod_j p_j^{m_j} * prod_i param_i^{n_i}),
/// where the numerator has radical exponents in {0, 1} and shares no
/// factor p_j or param_i with the denominator.
class Scalar {
public:
    Scalar() = default;
    explicit Scalar(RingPtr ring) : ring_(std::move(ring)) {}
    Scalar(RingPtr ring, const KElem& c);
    Scalar(RingPtr ring, long n) : Scalar(std::move(ring), KElem(n)) {}
    static Scalar from_poly(RingPtr ring, Poly p);
    static Scalar fiber(RingPtr ring, std::size_t i);
    static Scalar param(RingPtr ring, std::size_t i);
    static Scalar radical(RingPtr ring, std::size_t j);

    const RingPtr& ring() const { return ring_; }
    const Poly& numerator() const { return num_; }
    const std::vector<int>& radical_denominator() const { return rad_den_; }
    const std::vector<int>& param_denominator() const { return par_den_; }
    bool has_denominator() const;

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const;
    bool is_one() const { return is_constant() && constant_value().is_one(); }
    KElem constant_value() const;
    /// Does the scalar depend on any fiber variable, radical or parameter?
    bool depends_on(std::size_t var) const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    Scalar operator-() const;
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    bool operator==(const Scalar& o) const { return (*this - o).is_zero(); }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar inverse() const;
    Scalar pow(int n) const;

    /// Partial derivative with respect to fiber variable i.
    Scalar derivative(std::size_t i) const;

    KElem evaluate(const Point& pt) const;

    /// Substitute values for some parameters.
    Scalar substitute_params(const std::map<std::size_t, KElem>& values) const;

    /// Restrict to the unit sphere aa = 1: radicals whose relation is aa
    /// become 1 and the numerator is reduced modulo aa - 1. Returns the
    /// reduced numerator (the denominator is a unit on the sphere).
    Poly sphere_reduction() const;

    std::string to_string() const;

private:
    void normalize();
    void adopt(const RingPtr& r);
    void bring_to(const std::vector<int>& rad, const std::vector<int>& par);

    RingPtr ring_;
    Poly num_;
    std::vector<int> rad_den_;
    std::vector<int> par_den_;
};

/// Reduce radical exponents >= 2 using u_j^2 = p_j.
Poly reduce_radicals(const Ring& ring, Poly p);

}  // namespace equiform
