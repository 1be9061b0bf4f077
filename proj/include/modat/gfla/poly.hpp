#pragma once

#include <string>
#include <utility>
#include <vector>

#include "modat/gfla/field.hpp"

namespace modat::gfla {

class FqPolynomial {
public:
    FqPolynomial() = default;
    explicit FqPolynomial(FieldPtr f) : f_(std::move(f)) {}
    FqPolynomial(FieldPtr f, std::vector<Fq> coeffs);  // low to high

    static FqPolynomial x(FieldPtr f) { return FqPolynomial(std::move(f), {0, 1}); }
    static FqPolynomial constant(FieldPtr f, Fq c) { return FqPolynomial(std::move(f), {c}); }

    const FieldPtr& field() const noexcept { return f_; }
    int degree() const noexcept { return int(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
    Fq coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
    Fq leading() const noexcept { return c_.empty() ? 0 : c_.back(); }
    const std::vector<Fq>& coeffs() const noexcept { return c_; }

    FqPolynomial monic() const;
    Fq eval(Fq a) const;
    FqPolynomial derivative() const;

    bool operator==(const FqPolynomial& o) const noexcept { return c_ == o.c_; }
    bool operator<(const FqPolynomial& o) const noexcept;  // degree, then coefficients high to low

    // "x^2 + x + 1" with coefficients as encoded integers
    std::string to_string() const;

    friend FqPolynomial operator+(const FqPolynomial& a, const FqPolynomial& b);
    friend FqPolynomial operator-(const FqPolynomial& a, const FqPolynomial& b);
    friend FqPolynomial operator*(const FqPolynomial& a, const FqPolynomial& b);

private:
    void trim();
    FieldPtr f_;
    std::vector<Fq> c_;
};

std::pair<FqPolynomial, FqPolynomial> divmod(const FqPolynomial& a, const FqPolynomial& b);
FqPolynomial operator%(const FqPolynomial& a, const FqPolynomial& b);
FqPolynomial operator/(const FqPolynomial& a, const FqPolynomial& b);
FqPolynomial gcd(const FqPolynomial& a, const FqPolynomial& b);  // monic
FqPolynomial lcm(const FqPolynomial& a, const FqPolynomial& b);  // monic
FqPolynomial powmod(FqPolynomial base, std::uint64_t e, const FqPolynomial& mod);

struct PolyFactor {
    FqPolynomial factor;  // monic irreducible
    unsigned multiplicity;
};

// monic irreducible factorization, sorted by (degree, coefficients); deterministic
std::vector<PolyFactor> factor(const FqPolynomial& f);
bool is_irreducible(const FqPolynomial& f);

}  // namespace modat::gfla
