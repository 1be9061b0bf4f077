#include "modat/ctab/rational.hpp"

#include "modat/error.hpp"

namespace modat::ctab {

QEchelon q_echelon(QMatrix a) {
    QEchelon e;
    const std::size_t m = a.size(), n = m ? a[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && a[p][c] == 0) ++p;
        if (p == m) continue;
        std::swap(a[p], a[r]);
        Rational inv = 1 / a[r][c];
        for (std::size_t j = c; j < n; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (std::size_t j = c; j < n; ++j)
                if (a[r][j] != 0) a[i][j] -= f * a[r][j];
        }
        e.pivots.push_back(c);
        ++r;
    }
    a.resize(r);
    e.rref = std::move(a);
    return e;
}

std::size_t q_rank(const QMatrix& a) { return q_echelon(a).rank(); }

std::optional<QMatrix> q_inverse(const QMatrix& a) {
    const std::size_t n = a.size();
    QMatrix aug(n, QVector(2 * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) fail(Errc::NotSquare, "q_inverse");
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = 1;
    }
    auto e = q_echelon(std::move(aug));
    if (e.rank() < n || (n && e.pivots[n - 1] != n - 1)) return std::nullopt;
    QMatrix inv(n, QVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = e.rref[i][n + j];
    return inv;
}

QMatrix q_transpose(const QMatrix& a) {
    if (a.empty()) return {};
    QMatrix t(a[0].size(), QVector(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

QMatrix q_mul(const QMatrix& a, const QMatrix& b) {
    const std::size_t m = a.size(), k = b.size(), n = k ? b[0].size() : 0;
    QMatrix c(m, QVector(n, 0));
    for (std::size_t i = 0; i < m; ++i) {
        if (a[i].size() != k) fail(Errc::ShapeMismatch, "q_mul");
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][t] * b[t][j];
        }
    }
    return c;
}

QSolution q_solve(const QMatrix& a, const QVector& b) {
    const std::size_t m = a.size(), n = m ? a[0].size() : 0;
    if (b.size() != m) fail(Errc::ShapeMismatch, "q_solve: right-hand side");
    QMatrix aug(m, QVector(n + 1));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n] = b[i];
    }
    auto e = q_echelon(std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == n) return {SolveStatus::Inconsistent, {}};
    if (e.rank() < n) return {SolveStatus::Underdetermined, {}};
    QVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = e.rref[i][n];
    return {SolveStatus::Unique, x};
}

QMatrix to_q(const ZMatrix& a) {
    QMatrix q(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (const auto& x : a[i]) q[i].push_back(Rational(x));
    return q;
}

bool all_integral(const QVector& v) {
    for (const auto& x : v)
        if (denominator(x) != 1) return false;
    return true;
}

std::vector<Integer> to_z(const QVector& v) {
    std::vector<Integer> z;
    for (const auto& x : v) z.push_back(numerator(x));
    return z;
}

}  // namespace modat::ctab
