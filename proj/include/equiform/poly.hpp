#pragma once

#include "equiform/kfield.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace equiform {

inline constexpr std::size_t kMaxVars = 16;

struct Monomial {
    std::array<uint8_t, kMaxVars> exp{};

    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;

    int degree() const;
    bool is_one() const { return degree() == 0; }
    bool divides(const Monomial& other) const;
    Monomial operator*(const Monomial& other) const;
    Monomial operator/(const Monomial& other) const;
};

/// Sparse multivariate polynomial over K in at most kMaxVars variables.
/// Terms are ordered lexicographically with variable 0 most significant.
class Poly {
public:
    using Terms = std::map<Monomial, KElem>;

    Poly() = default;
    Poly(const KElem& c);
    static Poly variable(std::size_t index, unsigned power = 1);
    static Poly term(const Monomial& m, const KElem& c);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    KElem constant_term() const;
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    int degree_in(std::size_t var) const;
    int total_degree() const;

    void add_term(const Monomial& m, const KElem& c);

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly operator-() const;
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const KElem& c) const;
    Poly times_monomial(const Monomial& m) const;
    Poly pow(unsigned n) const;
    bool operator==(const Poly& o) const;

    Poly derivative(std::size_t var) const;

    /// Quotient when d divides this exactly, otherwise nullopt.
    std::optional<Poly> divide_exact(const Poly& d) const;
    /// Remainder of division by d (lex order).
    Poly remainder(const Poly& d) const;

    /// Replace variable var by the constant value.
    Poly substitute(std::size_t var, const KElem& value) const;
    /// Replace variable var by a polynomial.
    Poly substitute(std::size_t var, const Poly& value) const;

    /// Evaluate with values[i] for variable i; missing values must not occur.
    KElem evaluate(std::span<const std::optional<KElem>> values) const;

    /// Minimum exponent of var across all terms.
    int min_degree_in(std::size_t var) const;

    std::string to_string(const std::vector<std::string>& names) const;

private:
    Terms terms_;
};

}  // namespace equiform
