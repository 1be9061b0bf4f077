#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "modat/gfla/matrix.hpp"
#include "modat/rep/representation.hpp"

namespace modat::cyclo {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Element of Q(zeta_n) in the power basis 1, z, ..., z^(phi(n)-1) reduced mod Phi_n.
// Always stored at the smallest conductor containing the value.
class Cyclotomic {
public:
    Cyclotomic() : n_(1), c_{0} {}
    Cyclotomic(long long v) : n_(1), c_{Rational(v)} {}
    Cyclotomic(const Rational& v) : n_(1), c_{v} {}

    static Cyclotomic zeta(std::uint64_t n, std::int64_t k = 1);
    // from coefficients in the power basis of Q(zeta_n)
    static Cyclotomic from_coeffs(std::uint64_t n, std::vector<Rational> c);
    // sum of c[i] * zeta_n^i over all i < n (no reduction needed by caller)
    static Cyclotomic from_exponents(std::uint64_t n, const std::vector<Rational>& c);

    std::uint64_t conductor() const noexcept { return n_; }
    const std::vector<Rational>& coeffs() const noexcept { return c_; }
    bool is_rational() const noexcept { return n_ == 1; }
    bool is_zero() const noexcept { return n_ == 1 && c_[0] == 0; }
    bool is_integer() const;
    Rational rational() const;  // throws unless rational
    Integer integer() const;    // throws unless an integer

    // coefficients in the power basis of Q(zeta_m), conductor() | m
    std::vector<Rational> coeffs_at(std::uint64_t m) const;

    Cyclotomic galois(std::int64_t k) const;
    Cyclotomic conj() const { return galois(-1); }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    Cyclotomic operator-() const;
    Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
    Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }
    Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }
    friend Cyclotomic operator/(const Cyclotomic& a, const Rational& d);

    bool operator==(const Cyclotomic& o) const { return n_ == o.n_ && c_ == o.c_; }
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }
    bool operator<(const Cyclotomic& o) const;  // arbitrary total order

    // "cyc(n)[c0,c1,...]"
    std::string to_string() const;
    static Cyclotomic parse(const std::string& s);
    // integers, a/b, quadratic irrationalities as bN, iN, rN; zeta form otherwise
    std::string pretty() const;

private:
    std::uint64_t n_;
    std::vector<Rational> c_;
    void normalize();
};

// Parses "cyc(...)" and simple expressions in integers, fractions, zN, zN^k, bN, bN*, iN, rN, +, -, *, ().
Cyclotomic parse_value(const std::string& s);

std::uint64_t euler_phi(std::uint64_t n);
const std::vector<std::int64_t>& cyclotomic_poly(std::uint64_t n);
// sqrt(d) for a nonzero integer d, as a cyclotomic number
Cyclotomic sqrt_int(std::int64_t d);

// omega^m -> zeta_(q-1)^m with omega the Conway generator of the field
class BrauerLift {
public:
    explicit BrauerLift(gfla::FieldPtr f) : f_(std::move(f)) {}
    const gfla::FieldPtr& field() const noexcept { return f_; }
    Cyclotomic operator()(gfla::Fq x) const;

private:
    gfla::FieldPtr f_;
};

// Brauer character value of an invertible matrix of order prime to p
Cyclotomic brauer_char_value(const gfla::FqMatrix& m);
Cyclotomic brauer_char_value(const rep::Representation& r, const std::vector<std::uint32_t>& word);

}  // namespace modat::cyclo
