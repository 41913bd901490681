#pragma once

#include "equiform/error.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace equiform {

/// The multi-quadratic field Q(sqrt d_1, ..., sqrt d_s).
///
/// A basis over Q is given by the products sqrt(d_S) = prod_{i in S} sqrt(d_i)
/// for subsets S, encoded as bitmasks.
class SqrtBasis {
public:
    explicit SqrtBasis(std::vector<long> constants);

    std::size_t size() const { return constants_.size(); }
    std::size_t dimension() const { return std::size_t{1} << constants_.size(); }
    long constant(std::size_t i) const { return constants_.at(i); }
    const std::vector<long>& constants() const { return constants_; }

    /// sqrt(d_S) * sqrt(d_T) = factor(S, T) * sqrt(d_{S xor T}).
    const mpz_class& factor(uint32_t s, uint32_t t) const { return factors_[s * dimension() + t]; }

    /// Product of the constants indexed by S.
    const mpz_class& subset_product(uint32_t s) const { return products_[s]; }

    std::optional<std::size_t> index_of(long d) const;

    bool same_as(const SqrtBasis& other) const { return constants_ == other.constants_; }

private:
    std::vector<long> constants_;
    std::vector<mpz_class> products_;
    std::vector<mpz_class> factors_;
};

using SqrtBasisPtr = std::shared_ptr<const SqrtBasis>;

/// Element of K = Q(sqrt d_1, ..., sqrt d_s). A null basis means K = Q.
class KElem {
public:
    KElem() : c_(1) {}
    KElem(long n) : c_(1, mpq_class(n)) {}
    KElem(const mpq_class& q) : c_(1, q) { c_[0].canonicalize(); }
    KElem(SqrtBasisPtr basis, uint32_t mask, const mpq_class& coefficient);

    static KElem sqrt_constant(SqrtBasisPtr basis, std::size_t index);

    bool is_zero() const;
    bool is_rational() const;
    bool is_one() const { return is_rational() && c_[0] == 1; }
    const mpq_class& rational_part() const { return c_[0]; }
    mpq_class rational() const;

    const SqrtBasisPtr& basis() const { return basis_; }
    const mpq_class& coefficient(uint32_t mask) const;
    std::size_t width() const { return c_.size(); }

    KElem& operator+=(const KElem& o);
    KElem& operator-=(const KElem& o);
    KElem& operator*=(const KElem& o);
    KElem& operator/=(const KElem& o);
    KElem operator-() const;
    friend KElem operator+(KElem a, const KElem& b) { return a += b; }
    friend KElem operator-(KElem a, const KElem& b) { return a -= b; }
    friend KElem operator*(KElem a, const KElem& b) { return a *= b; }
    friend KElem operator/(KElem a, const KElem& b) { return a /= b; }
    bool operator==(const KElem& o) const;
    bool operator!=(const KElem& o) const { return !(*this == o); }

    KElem inverse() const;

    /// Sign under the real embedding with all sqrt(d_i) > 0.
    int sign() const;

    /// Nonnegative square root, when it exists in K. Only rational radicands
    /// of the shape r^2 * d_S are recognized.
    std::optional<KElem> sqrt() const;

    std::string to_string() const;
    /// True when to_string() is a single signed product (safe as a factor).
    bool is_monomial() const;

private:
    void promote(const SqrtBasisPtr& b);
    void split(std::size_t bit, KElem& a, KElem& b) const;
    int highest_bit() const;

    SqrtBasisPtr basis_;
    std::vector<mpq_class> c_;
};

std::string rational_to_string(const mpq_class& q);
bool is_rational_square(const mpq_class& q);

}  // namespace equiform
