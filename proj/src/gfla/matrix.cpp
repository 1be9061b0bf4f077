#include "modat/gfla/matrix.hpp"

#include <algorithm>
#include <cstring>

#include "modat/error.hpp"
#include "modat/gfla/kernels.hpp"

namespace modat::gfla {

FqMatrix::FqMatrix(FieldPtr f, std::size_t rows, std::size_t cols)
    : f_(std::move(f)), rows_(rows), cols_(cols), w_(f_->width()), data_(rows * cols * w_, 0) {}

FqMatrix FqMatrix::identity(FieldPtr f, std::size_t n) {
    FqMatrix m(std::move(f), n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FqMatrix FqMatrix::from_values(FieldPtr f, std::size_t rows, std::size_t cols, const std::vector<Fq>& v) {
    if (v.size() != rows * cols) fail(Errc::ShapeMismatch, "value count does not match shape");
    FqMatrix m(f, rows, cols);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] >= f->q()) fail(Errc::InvalidArgument, "entry " + std::to_string(v[i]) + " outside " + f->name());
        m.set(i / cols, i % cols, v[i]);
    }
    return m;
}

FqMatrix FqMatrix::from_rows(FieldPtr f, const std::vector<std::vector<Fq>>& rows, std::size_t cols) {
    std::vector<Fq> v;
    v.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols) fail(Errc::ShapeMismatch, "ragged rows");
        v.insert(v.end(), r.begin(), r.end());
    }
    return from_values(std::move(f), rows.size(), cols, v);
}

std::vector<Fq> FqMatrix::row(std::size_t i) const {
    std::vector<Fq> r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

void FqMatrix::set_row(std::size_t i, const std::vector<Fq>& v) {
    for (std::size_t j = 0; j < cols_; ++j) set(i, j, v[j]);
}

FqMatrix FqMatrix::row_block(std::size_t begin, std::size_t end) const {
    FqMatrix m(f_, end - begin, cols_);
    if (!m.data_.empty()) std::memcpy(m.data_.data(), row_ptr(begin), m.data_.size());
    return m;
}

FqMatrix FqMatrix::col_block(std::size_t begin, std::size_t end) const { return block(0, rows_, begin, end); }

FqMatrix FqMatrix::block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
    FqMatrix m(f_, r1 - r0, c1 - c0);
    for (std::size_t i = r0; i < r1; ++i)
        if (c1 > c0)
            std::memcpy(m.row_ptr(i - r0), static_cast<const std::uint8_t*>(row_ptr(i)) + c0 * w_, (c1 - c0) * w_);
    return m;
}

void FqMatrix::append_rows(const FqMatrix& other) {
    if (other.rows_ == 0) return;
    if (rows_ == 0 && cols_ == 0 && !f_) {
        *this = other;
        return;
    }
    if (other.cols_ != cols_) fail(Errc::ShapeMismatch, "append_rows width");
    data_.insert(data_.end(), other.data_.begin(), other.data_.end());
    rows_ += other.rows_;
}

void FqMatrix::swap_rows(std::size_t a, std::size_t b) noexcept {
    if (a == b) return;
    auto* pa = static_cast<std::uint8_t*>(row_ptr(a));
    auto* pb = static_cast<std::uint8_t*>(row_ptr(b));
    std::swap_ranges(pa, pa + cols_ * w_, pb);
}

void FqMatrix::row_axpy(std::size_t i, const FqMatrix& src, std::size_t j, Fq c) {
    kern::axpy(*f_, row_ptr(i), src.row_ptr(j), c, cols_);
}

void FqMatrix::row_scale(std::size_t i, Fq c) { kern::scale(*f_, row_ptr(i), c, cols_); }

bool FqMatrix::row_zero(std::size_t i) const noexcept {
    const auto* p = static_cast<const std::uint8_t*>(row_ptr(i));
    for (std::size_t k = 0; k < cols_ * w_; ++k)
        if (p[k]) return false;
    return true;
}

bool FqMatrix::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](std::uint8_t b) { return b == 0; });
}

bool FqMatrix::is_identity() const noexcept {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
}

std::vector<Fq> FqMatrix::values() const {
    std::vector<Fq> v(rows_ * cols_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = w_ == 1 ? d8()[i] : d16()[i];
    return v;
}

bool FqMatrix::operator==(const FqMatrix& o) const noexcept {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    if (f_ && o.f_ && !same_field(*f_, *o.f_)) return false;
    return data_ == o.data_;
}

namespace {

void check_same_field(const FqMatrix& a, const FqMatrix& b) {
    if (!same_field(a.F(), b.F())) fail(Errc::FieldMismatch, a.F().name() + " vs " + b.F().name());
}

}  // namespace

FqMatrix operator+(const FqMatrix& a, const FqMatrix& b) {
    check_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols()) fail(Errc::ShapeMismatch, "add");
    FqMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i) c.row_axpy(i, b, i, 1);
    return c;
}

FqMatrix operator-(const FqMatrix& a, const FqMatrix& b) {
    check_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols()) fail(Errc::ShapeMismatch, "sub");
    FqMatrix c = a;
    Fq m1 = a.F().neg(1);
    for (std::size_t i = 0; i < a.rows(); ++i) c.row_axpy(i, b, i, m1);
    return c;
}

FqMatrix operator*(const FqMatrix& a, const FqMatrix& b) {
    check_same_field(a, b);
    if (a.cols() != b.rows()) fail(Errc::ShapeMismatch, "mul");
    FqMatrix c(a.field(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            Fq x = a.at(i, k);
            if (x) c.row_axpy(i, b, k, x);
        }
    return c;
}

FqMatrix kron(const FqMatrix& a, const FqMatrix& b) {
    check_same_field(a, b);
    const Field& F = a.F();
    FqMatrix c(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            Fq x = a.at(i, j);
            if (!x) continue;
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t s = 0; s < b.cols(); ++s) c.set(i * b.rows() + r, j * b.cols() + s, F.mul(x, b.at(r, s)));
        }
    return c;
}

FqMatrix mat_arith(const FqMatrix& a, const FqMatrix& b, ArithKind kind) {
    switch (kind) {
    case ArithKind::Add: return a + b;
    case ArithKind::Mul: return a * b;
    case ArithKind::Kron: return kron(a, b);
    }
    fail(Errc::InvalidArgument, "arith kind");
}

FqMatrix scalar_mul(Fq c, const FqMatrix& a) {
    FqMatrix m = a;
    for (std::size_t i = 0; i < m.rows(); ++i) m.row_scale(i, c);
    return m;
}

FqMatrix transpose(const FqMatrix& a) {
    FqMatrix t(a.field(), a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t.set(j, i, a.at(i, j));
    return t;
}

FqMatrix power(const FqMatrix& a, std::uint64_t e) {
    if (!a.square()) fail(Errc::NotSquare, "power");
    FqMatrix r = FqMatrix::identity(a.field(), a.rows()), b = a;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

FqMatrix vstack(const FqMatrix& a, const FqMatrix& b) {
    FqMatrix c = a;
    c.append_rows(b);
    return c;
}

namespace {

// Gauss-Jordan on the first `width` columns of m, mirroring row ops on companion.
std::vector<std::size_t> rref_inplace(FqMatrix& m, std::size_t width, FqMatrix* companion) {
    const Field& F = m.F();
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < width && r < m.rows(); ++c) {
        std::size_t s = r;
        while (s < m.rows() && m.at(s, c) == 0) ++s;
        if (s == m.rows()) continue;
        m.swap_rows(r, s);
        if (companion) companion->swap_rows(r, s);
        Fq inv = F.inv(m.at(r, c));
        m.row_scale(r, inv);
        if (companion) companion->row_scale(r, inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            Fq x = m.at(i, c);
            if (!x) continue;
            Fq nx = F.neg(x);
            m.row_axpy(i, m, r, nx);
            if (companion) companion->row_axpy(i, *companion, r, nx);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

}  // namespace

Echelon echelonize(const FqMatrix& a) {
    Echelon e;
    e.transformed = a;
    e.pivots = rref_inplace(e.transformed, a.cols(), nullptr);
    e.rank = e.pivots.size();
    return e;
}

std::size_t rank(const FqMatrix& a) { return echelonize(a).rank; }

FqMatrix row_space(const FqMatrix& a) {
    Echelon e = echelonize(a);
    return e.transformed.row_block(0, e.rank);
}

FqMatrix nullspace(const FqMatrix& a) {
    Echelon e = echelonize(a);
    const Field& F = a.F();
    std::vector<bool> is_piv(a.cols(), false);
    for (auto c : e.pivots) is_piv[c] = true;
    FqMatrix ns(a.field(), a.cols() - e.rank, a.cols());
    std::size_t r = 0;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_piv[f]) continue;
        ns.set(r, f, 1);
        for (std::size_t i = 0; i < e.rank; ++i) ns.set(r, e.pivots[i], F.neg(e.transformed.at(i, f)));
        ++r;
    }
    return row_space(ns);
}

FqMatrix left_kernel(const FqMatrix& a) { return nullspace(transpose(a)); }

std::optional<FqMatrix> inverse(const FqMatrix& a) {
    if (!a.square()) fail(Errc::NotSquare, "inverse");
    FqMatrix m = a;
    FqMatrix inv = FqMatrix::identity(a.field(), a.rows());
    auto piv = rref_inplace(m, a.cols(), &inv);
    if (piv.size() != a.rows()) return std::nullopt;
    return inv;
}

FqMatrix random_matrix(FieldPtr f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::uniform_int_distribution<Fq> d(0, f->q() - 1);
    FqMatrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, d(rng));
    return m;
}

EchelonBasis::EchelonBasis(FieldPtr f, std::size_t n) : f_(f), n_(n), rows_(f, n, n) {}

bool EchelonBasis::reduce(FqMatrix& v, std::size_t r) const {
    const Field& F = *f_;
    for (std::size_t i = 0; i < count_; ++i) {
        Fq x = v.at(r, piv_[i]);
        if (x) kern::axpy(F, v.row_ptr(r), rows_.row_ptr(i), F.neg(x), n_);
    }
    return !v.row_zero(r);
}

bool EchelonBasis::add(const FqMatrix& v, std::size_t r) {
    if (v.cols() != n_) fail(Errc::ShapeMismatch, "vector width");
    FqMatrix w = v.row_block(r, r + 1);
    if (!reduce(w, 0)) return false;
    std::size_t c = 0;
    while (w.at(0, c) == 0) ++c;
    w.row_scale(0, f_->inv(w.at(0, c)));
    std::memcpy(rows_.row_ptr(count_), w.row_ptr(0), n_ * f_->width());
    piv_.push_back(c);
    ++count_;
    return true;
}

bool EchelonBasis::contains(const FqMatrix& v, std::size_t r) const {
    FqMatrix w = v.row_block(r, r + 1);
    return !reduce(w, 0);
}

FqMatrix EchelonBasis::basis() const { return row_space(rows_.row_block(0, count_)); }

Coordinates::Coordinates(const FqMatrix& basis) {
    rref_ = basis;
    transform_ = FqMatrix::identity(basis.field(), basis.rows());
    piv_ = rref_inplace(rref_, basis.cols(), &transform_);
    rank_ = piv_.size();
}

std::optional<std::vector<Fq>> Coordinates::solve(const FqMatrix& v, std::size_t r) const {
    const Field& F = rref_.F();
    FqMatrix w = v.row_block(r, r + 1);
    FqMatrix coef(rref_.field(), 1, transform_.cols());
    for (std::size_t i = 0; i < rank_; ++i) {
        Fq x = w.at(0, piv_[i]);
        if (!x) continue;
        kern::axpy(F, w.row_ptr(0), rref_.row_ptr(i), F.neg(x), w.cols());
        kern::axpy(F, coef.row_ptr(0), transform_.row_ptr(i), x, coef.cols());
    }
    if (!w.row_zero(0)) return std::nullopt;
    return coef.row(0);
}

FqMatrix Coordinates::solve_rows(const FqMatrix& v) const {
    FqMatrix out(rref_.field(), v.rows(), transform_.cols());
    for (std::size_t i = 0; i < v.rows(); ++i) {
        auto c = solve(v, i);
        if (!c) fail(Errc::NotInvariant, "vector outside the subspace");
        out.set_row(i, *c);
    }
    return out;
}

namespace {

// Krylov sequence of v under a; returns monic g with v*g(a) in base (or 0 when base is null).
// New reduced vectors are appended to base when extend is set.
FqPolynomial krylov(const FqMatrix& a, const FqMatrix& v0, EchelonBasis* base, bool extend) {
    const Field& F = a.F();
    const std::size_t n = a.cols();
    FqMatrix vecs(a.field(), n + 1, n);
    std::vector<std::vector<Fq>> polys;
    std::vector<std::size_t> piv;

    FqMatrix w = v0;
    std::vector<Fq> wp{1};
    for (;;) {
        if (base) base->reduce(w, 0);
        for (std::size_t i = 0; i < piv.size(); ++i) {
            Fq x = w.at(0, piv[i]);
            if (!x) continue;
            Fq nx = F.neg(x);
            kern::axpy(F, w.row_ptr(0), vecs.row_ptr(i), nx, n);
            if (wp.size() < polys[i].size()) wp.resize(polys[i].size(), 0);
            for (std::size_t j = 0; j < polys[i].size(); ++j) wp[j] = F.add(wp[j], F.mul(nx, polys[i][j]));
        }
        if (w.row_zero(0)) break;
        std::size_t c = 0;
        while (w.at(0, c) == 0) ++c;
        Fq inv = F.inv(w.at(0, c));
        w.row_scale(0, inv);
        for (auto& x : wp) x = F.mul(x, inv);
        std::memcpy(vecs.row_ptr(piv.size()), w.row_ptr(0), n * F.width());
        polys.push_back(wp);
        piv.push_back(c);
        // next: x * (last poly), vector = last vector * a
        w = vecs.row_block(piv.size() - 1, piv.size()) * a;
        wp.assign(1, 0);
        wp.insert(wp.end(), polys.back().begin(), polys.back().end());
    }
    if (extend && base)
        for (std::size_t i = 0; i < piv.size(); ++i) base->add(vecs, i);
    return FqPolynomial(a.field(), wp).monic();
}

}  // namespace

FqPolynomial char_poly(const FqMatrix& a) {
    if (!a.square()) fail(Errc::NotSquare, "char_poly");
    const std::size_t n = a.rows();
    FqPolynomial cp = FqPolynomial::constant(a.field(), 1);
    EchelonBasis base(a.field(), n);
    for (std::size_t i = 0; i < n && base.dim() < n; ++i) {
        FqMatrix e(a.field(), 1, n);
        e.set(0, i, 1);
        if (base.contains(e, 0)) continue;
        cp = cp * krylov(a, e, &base, true);
    }
    return cp;
}

FqPolynomial min_poly(const FqMatrix& a) {
    if (!a.square()) fail(Errc::NotSquare, "min_poly");
    const std::size_t n = a.rows();
    FqPolynomial mp = FqPolynomial::constant(a.field(), 1);
    EchelonBasis span(a.field(), n);
    for (std::size_t i = 0; i < n && span.dim() < n; ++i) {
        FqMatrix e(a.field(), 1, n);
        e.set(0, i, 1);
        if (span.contains(e, 0)) continue;
        mp = lcm(mp, krylov(a, e, nullptr, false));
        FqMatrix v = e;
        while (span.add(v, 0)) v = v * a;
    }
    return mp;
}

FqMatrix poly_eval(const FqPolynomial& f, const FqMatrix& a) {
    if (!a.square()) fail(Errc::NotSquare, "poly_eval");
    FqMatrix r(a.field(), a.rows(), a.cols());
    for (std::size_t i = f.coeffs().size(); i-- > 0;) {
        r = r * a;
        Fq c = f.coeffs()[i];
        if (c)
            for (std::size_t d = 0; d < a.rows(); ++d) r.set(d, d, a.F().add(r.at(d, d), c));
    }
    return r;
}

}  // namespace modat::gfla
