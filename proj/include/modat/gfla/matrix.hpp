#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "modat/gfla/field.hpp"
#include "modat/gfla/poly.hpp"

namespace modat::gfla {

// Dense row-major matrix, one byte per entry for q <= 256, two otherwise.
class FqMatrix {
public:
    FqMatrix() = default;
    FqMatrix(FieldPtr f, std::size_t rows, std::size_t cols);

    static FqMatrix identity(FieldPtr f, std::size_t n);
    static FqMatrix from_values(FieldPtr f, std::size_t rows, std::size_t cols, const std::vector<Fq>& v);
    static FqMatrix from_rows(FieldPtr f, const std::vector<std::vector<Fq>>& rows, std::size_t cols);

    const FieldPtr& field() const noexcept { return f_; }
    const Field& F() const noexcept { return *f_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Fq at(std::size_t i, std::size_t j) const noexcept {
        std::size_t o = i * cols_ + j;
        return w_ == 1 ? Fq(d8()[o]) : Fq(d16()[o]);
    }
    void set(std::size_t i, std::size_t j, Fq v) noexcept {
        std::size_t o = i * cols_ + j;
        if (w_ == 1)
            d8()[o] = std::uint8_t(v);
        else
            d16()[o] = std::uint16_t(v);
    }

    void* row_ptr(std::size_t i) noexcept { return data_.data() + i * cols_ * w_; }
    const void* row_ptr(std::size_t i) const noexcept { return data_.data() + i * cols_ * w_; }

    std::vector<Fq> row(std::size_t i) const;
    void set_row(std::size_t i, const std::vector<Fq>& v);
    FqMatrix row_block(std::size_t begin, std::size_t end) const;
    FqMatrix col_block(std::size_t begin, std::size_t end) const;
    FqMatrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;
    void append_rows(const FqMatrix& other);
    void swap_rows(std::size_t a, std::size_t b) noexcept;

    // row i += c * row j of src
    void row_axpy(std::size_t i, const FqMatrix& src, std::size_t j, Fq c);
    void row_scale(std::size_t i, Fq c);
    bool row_zero(std::size_t i) const noexcept;
    bool is_zero() const noexcept;
    bool is_identity() const noexcept;

    std::vector<Fq> values() const;

    bool operator==(const FqMatrix& o) const noexcept;
    bool operator!=(const FqMatrix& o) const noexcept { return !(*this == o); }

private:
    std::uint8_t* d8() noexcept { return data_.data(); }
    const std::uint8_t* d8() const noexcept { return data_.data(); }
    std::uint16_t* d16() noexcept { return reinterpret_cast<std::uint16_t*>(data_.data()); }
    const std::uint16_t* d16() const noexcept { return reinterpret_cast<const std::uint16_t*>(data_.data()); }

    FieldPtr f_;
    std::size_t rows_ = 0, cols_ = 0;
    unsigned w_ = 1;
    std::vector<std::uint8_t> data_;
};

enum class ArithKind { Add, Mul, Kron };

FqMatrix mat_arith(const FqMatrix& a, const FqMatrix& b, ArithKind kind);
FqMatrix operator+(const FqMatrix& a, const FqMatrix& b);
FqMatrix operator-(const FqMatrix& a, const FqMatrix& b);
FqMatrix operator*(const FqMatrix& a, const FqMatrix& b);
FqMatrix kron(const FqMatrix& a, const FqMatrix& b);
FqMatrix scalar_mul(Fq c, const FqMatrix& a);
FqMatrix transpose(const FqMatrix& a);
FqMatrix power(const FqMatrix& a, std::uint64_t e);
FqMatrix vstack(const FqMatrix& a, const FqMatrix& b);

struct Echelon {
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
    FqMatrix transformed;  // reduced row echelon form, zero rows last
};

Echelon echelonize(const FqMatrix& a);
std::size_t rank(const FqMatrix& a);
// rows of the RREF with the zero rows dropped
FqMatrix row_space(const FqMatrix& a);
// basis rows of {v : a v^T = 0}, canonical
FqMatrix nullspace(const FqMatrix& a);
// basis rows of {v : v a = 0}
FqMatrix left_kernel(const FqMatrix& a);
std::optional<FqMatrix> inverse(const FqMatrix& a);

FqPolynomial char_poly(const FqMatrix& a);
FqPolynomial min_poly(const FqMatrix& a);
FqMatrix poly_eval(const FqPolynomial& f, const FqMatrix& a);

FqMatrix random_matrix(FieldPtr f, std::size_t rows, std::size_t cols, std::mt19937_64& rng);

// Incrementally built semi-echelon basis of a subspace of F^n.
class EchelonBasis {
public:
    EchelonBasis(FieldPtr f, std::size_t n);

    std::size_t dim() const noexcept { return count_; }
    std::size_t ambient() const noexcept { return n_; }
    // reduces row r of v in place; true when something nonzero is left
    bool reduce(FqMatrix& v, std::size_t r) const;
    // adds the reduced row when independent, returns true then
    bool add(const FqMatrix& v, std::size_t r);
    bool contains(const FqMatrix& v, std::size_t r) const;
    const FqMatrix& rows() const noexcept { return rows_; }
    const std::vector<std::size_t>& pivots() const noexcept { return piv_; }
    // canonical RREF basis
    FqMatrix basis() const;

private:
    FieldPtr f_;
    std::size_t n_, count_ = 0;
    FqMatrix rows_;
    std::vector<std::size_t> piv_;
};

// Coordinates relative to a fixed basis (rows need not be echelonized).
class Coordinates {
public:
    explicit Coordinates(const FqMatrix& basis);
    std::size_t dim() const noexcept { return rank_; }
    // coefficient row c with c * basis = v, or nothing when v is outside the span
    std::optional<std::vector<Fq>> solve(const FqMatrix& v, std::size_t r) const;
    FqMatrix solve_rows(const FqMatrix& v) const;  // throws NotInvariant when a row is outside

private:
    FqMatrix rref_, transform_;
    std::vector<std::size_t> piv_;
    std::size_t rank_ = 0;
};

}  // namespace modat::gfla
