#pragma once

#include <optional>
#include <vector>

#include "modat/cyclo/cyclotomic.hpp"

namespace modat::ctab {

using cyclo::Integer;
using cyclo::Rational;

using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;  // row major
using ZMatrix = std::vector<std::vector<Integer>>;

struct QEchelon {
    QMatrix rref;  // nonzero rows only
    std::vector<std::size_t> pivots;
    std::size_t rank() const noexcept { return pivots.size(); }
};

QEchelon q_echelon(QMatrix a);
std::size_t q_rank(const QMatrix& a);
std::optional<QMatrix> q_inverse(const QMatrix& a);
QMatrix q_transpose(const QMatrix& a);
QMatrix q_mul(const QMatrix& a, const QMatrix& b);

enum class SolveStatus { Unique, Inconsistent, Underdetermined };

struct QSolution {
    SolveStatus status;
    QVector x;
};

// x with A x = b
QSolution q_solve(const QMatrix& a, const QVector& b);

QMatrix to_q(const ZMatrix& a);
bool all_integral(const QVector& v);
std::vector<Integer> to_z(const QVector& v);  // caller checked integrality

}  // namespace modat::ctab
