#pragma once

#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cremona/error.hpp"
#include "cremona/gauss.hpp"
#include "cremona/rational.hpp"

namespace cremona {

// Dense exact matrix over a field K.
template <typename K>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows, std::vector<K>(cols, K(0))) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    K& at(size_t i, size_t j) { return a_[i][j]; }
    const K& at(size_t i, size_t j) const { return a_[i][j]; }
    std::vector<K>& row(size_t i) { return a_[i]; }
    const std::vector<K>& row(size_t i) const { return a_[i]; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix r(a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                if (a.a_[i][k].is_zero()) continue;
                for (size_t j = 0; j < b.cols_; ++j)
                    r.a_[i][j] += a.a_[i][k] * b.a_[k][j];
            }
        return r;
    }

private:
    size_t rows_, cols_;
    std::vector<std::vector<K>> a_;
};

// Row echelon reduction, in place. Deterministic pivoting (first row with a
// nonzero entry in the current column). Returns the pivot columns.
//
// The serial variant is the reference implementation; the parallel variant
// performs the same pivot sequence with the row updates of each elimination
// step spread over OpenMP threads, so the two produce identical matrices.
template <typename K>
std::vector<size_t> rref_serial(Matrix<K>& m) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        size_t p = r;
        while (p < m.rows() && m.at(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        std::swap(m.row(p), m.row(r));
        K inv = m.at(r, c).inv();
        for (size_t j = c; j < m.cols(); ++j) m.at(r, j) = m.at(r, j) * inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            K f = m.at(i, c);
            for (size_t j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <typename K>
std::vector<size_t> rref_parallel(Matrix<K>& m) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        size_t p = r;
        while (p < m.rows() && m.at(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        std::swap(m.row(p), m.row(r));
        K inv = m.at(r, c).inv();
        for (size_t j = c; j < m.cols(); ++j) m.at(r, j) = m.at(r, j) * inv;
        const long n = static_cast<long>(m.rows());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
        for (long i = 0; i < n; ++i) {
            if (static_cast<size_t>(i) == r || m.at(i, c).is_zero()) continue;
            K f = m.at(i, c);
            for (size_t j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <typename K>
std::vector<size_t> rref(Matrix<K>& m) {
    // Small systems do not amortize the fork/join.
    if (m.rows() * m.cols() >= 1024) return rref_parallel(m);
    return rref_serial(m);
}

template <typename K>
size_t matrix_rank(Matrix<K> m) {
    return rref(m).size();
}

// Basis of the right kernel {v : A v = 0}.
template <typename K>
std::vector<std::vector<K>> kernel_basis(Matrix<K> m) {
    size_t n = m.cols();
    std::vector<size_t> pivots = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<K>> basis;
    for (size_t free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<K> v(n, K(0));
        v[free_col] = K(1);
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m.at(r, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

// One solution of A v = b; throws InconsistentSystem if none exists.
template <typename K>
std::vector<K> solve_particular(Matrix<K> m, const std::vector<K>& b) {
    size_t n = m.cols();
    Matrix<K> aug(m.rows(), n + 1);
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n) = b[i];
    }
    std::vector<size_t> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == n)
        throw DomainError(ErrorCode::InconsistentSystem, "no solution");
    std::vector<K> v(n, K(0));
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = aug.at(r, n);
    return v;
}

using QMatrix = Matrix<Rational>;
using GMatrix = Matrix<GaussRational>;

}  // namespace cremona
