#pragma once

// Exact scalar types and small dense linear algebra over them.
//
// Every spectral quantity in this library is an exact rational. The dense
// types are plain Eigen matrices over `Rational`; the algorithms Eigen ships
// for floating point (LU with thresholds, eigen solvers) are not used on
// them. Instead the free functions below do exact Gaussian elimination and
// accept any Eigen expression.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bsc {

namespace mp = boost::multiprecision;

using BigInt = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

template <typename Scalar, int Rows, int Cols>
using Matrix = Eigen::Matrix<Scalar, Rows, Cols>;

template <typename Scalar>
using Matrix6 = Eigen::Matrix<Scalar, 6, 6>;
template <typename Scalar>
using Vector6 = Eigen::Matrix<Scalar, 6, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RatMatrix6 = Matrix6<Rational>;
using RatVector6 = Vector6<Rational>;
using RatMatrixX = MatrixX<Rational>;
using RatVectorX = VectorX<Rational>;
using IntMatrix6 = Matrix6<std::int64_t>;

/// q^e for a nonnegative exponent.
BigInt ipow(long base, unsigned exponent);

/// q^e as a rational; negative exponents allowed.
Rational rpow(long base, int exponent);

/// "num/den" with den > 0 and gcd 1. Integers still carry "/1".
std::string to_string(const Rational& r);
std::string to_string(const BigInt& n);

/// Parses "num/den" or "num".
Rational parse_rational(const std::string& text);

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

/// Row-echelon rank over the rationals. Pivots are taken in column order.
template <typename Derived>
Eigen::Index exact_rank(const Eigen::MatrixBase<Derived>& input)
{
    using Scalar = typename Derived::Scalar;
    MatrixX<Scalar> m = input;
    const Eigen::Index rows = m.rows();
    const Eigen::Index cols = m.cols();
    Eigen::Index rank = 0;
    for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
        Eigen::Index pivot = -1;
        for (Eigen::Index r = rank; r < rows; ++r) {
            if (m(r, col) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        m.row(rank).swap(m.row(pivot));
        for (Eigen::Index r = rank + 1; r < rows; ++r) {
            if (m(r, col) == 0) continue;
            const Scalar factor = m(r, col) / m(rank, col);
            m.row(r) -= factor * m.row(rank);
        }
        ++rank;
    }
    return rank;
}

/// Determinant by elimination.
template <typename Derived>
typename Derived::Scalar exact_determinant(const Eigen::MatrixBase<Derived>& input)
{
    using Scalar = typename Derived::Scalar;
    if (input.rows() != input.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    MatrixX<Scalar> m = input;
    const Eigen::Index n = m.rows();
    Scalar det = 1;
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index pivot = -1;
        for (Eigen::Index r = col; r < n; ++r) {
            if (m(r, col) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) return Scalar(0);
        if (pivot != col) {
            m.row(col).swap(m.row(pivot));
            det = -det;
        }
        det *= m(col, col);
        for (Eigen::Index r = col + 1; r < n; ++r) {
            if (m(r, col) == 0) continue;
            const Scalar factor = m(r, col) / m(col, col);
            m.row(r) -= factor * m.row(col);
        }
    }
    return det;
}

/// Solves A X = B by Gauss-Jordan elimination. Returns nullopt when A is singular.
template <typename DerivedA, typename DerivedB>
std::optional<MatrixX<typename DerivedA::Scalar>> exact_solve(const Eigen::MatrixBase<DerivedA>& a,
                                                              const Eigen::MatrixBase<DerivedB>& b)
{
    using Scalar = typename DerivedA::Scalar;
    if (a.rows() != a.cols() || a.rows() != b.rows()) throw std::invalid_argument("exact_solve shape mismatch");
    const Eigen::Index n = a.rows();
    MatrixX<Scalar> aug(n, n + b.cols());
    aug << a, b;
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index pivot = -1;
        for (Eigen::Index r = col; r < n; ++r) {
            if (aug(r, col) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) return std::nullopt;
        aug.row(col).swap(aug.row(pivot));
        const Scalar inv = Scalar(1) / aug(col, col);
        aug.row(col) *= inv;
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r == col || aug(r, col) == 0) continue;
            const Scalar factor = aug(r, col);
            aug.row(r) -= factor * aug.row(col);
        }
    }
    return MatrixX<Scalar>(aug.rightCols(b.cols()));
}

template <typename Derived>
std::optional<MatrixX<typename Derived::Scalar>> exact_inverse(const Eigen::MatrixBase<Derived>& a)
{
    using Scalar = typename Derived::Scalar;
    return exact_solve(a, MatrixX<Scalar>::Identity(a.rows(), a.cols()));
}

/// Rank of the Gram matrix of the given columns under the bilinear form `form`.
template <typename DerivedForm, typename DerivedCols>
Eigen::Index gram_rank(const Eigen::MatrixBase<DerivedForm>& form, const Eigen::MatrixBase<DerivedCols>& columns)
{
    using Scalar = typename DerivedForm::Scalar;
    const MatrixX<Scalar> gram = columns.transpose() * form * columns;
    return exact_rank(gram);
}

/// Leading principal minors, top-left 1x1 through n x n.
template <typename Derived>
std::vector<typename Derived::Scalar> leading_minors(const Eigen::MatrixBase<Derived>& m)
{
    std::vector<typename Derived::Scalar> out;
    for (Eigen::Index n = 1; n <= m.rows(); ++n) out.push_back(exact_determinant(m.topLeftCorner(n, n)));
    return out;
}

template <typename Derived>
bool is_diagonal(const Eigen::MatrixBase<Derived>& m)
{
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (i != j && m(i, j) != 0) return false;
    return true;
}

template <typename Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m)
{
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) return false;
    return true;
}

/// First (row, col) where two same-shaped matrices differ, 0-based.
template <typename DerivedA, typename DerivedB>
std::optional<std::pair<Eigen::Index, Eigen::Index>> first_mismatch(const Eigen::MatrixBase<DerivedA>& a,
                                                                    const Eigen::MatrixBase<DerivedB>& b)
{
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) return std::make_pair(i, j);
    return std::nullopt;
}

template <typename Derived>
RatMatrixX to_rational(const Eigen::MatrixBase<Derived>& m)
{
    RatMatrixX out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
    return out;
}

}  // namespace bsc
