#ifndef HITCHIN_LINALG_HPP
#define HITCHIN_LINALG_HPP

#include <cmath>
#include <vector>

#include "hitchin/common.hpp"
#include "hitchin/errors.hpp"

namespace hitchin {

// Dense complex matrix, row major.  Everything here is tiny (genus <= a
// handful, Lie rank <= 4), so plain Gaussian elimination with partial
// pivoting is all we need.
struct CMat {
    int rows = 0, cols = 0;
    std::vector<cplx> a;

    CMat() = default;
    CMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}

    cplx& operator()(int i, int j) { return a[size_t(i) * cols + j]; }
    const cplx& operator()(int i, int j) const { return a[size_t(i) * cols + j]; }

    static CMat identity(int n) {
        CMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    CMat transpose() const {
        CMat t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    CMat operator*(const CMat& o) const {
        CMat r(rows, o.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                cplx v = (*this)(i, k);
                if (v == cplx(0.0)) continue;
                for (int j = 0; j < o.cols; ++j) r(i, j) += v * o(k, j);
            }
        return r;
    }

    CMat operator-(const CMat& o) const {
        CMat r(rows, cols);
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
        return r;
    }
    CMat operator+(const CMat& o) const {
        CMat r(rows, cols);
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
        return r;
    }
    CMat operator*(cplx s) const {
        CMat r(rows, cols);
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] * s;
        return r;
    }

    double max_abs() const {
        double m = 0;
        for (const cplx& v : a) m = std::max(m, std::abs(v));
        return m;
    }

    double norm1() const {  // max column sum
        double m = 0;
        for (int j = 0; j < cols; ++j) {
            double s = 0;
            for (int i = 0; i < rows; ++i) s += std::abs((*this)(i, j));
            m = std::max(m, s);
        }
        return m;
    }
};

namespace linalg {

// Solve A X = B in place via partial-pivoted elimination; returns X.
inline CMat solve(CMat A, CMat B) {
    const int n = A.rows;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A(r, col)) > std::abs(A(piv, col))) piv = r;
        if (std::abs(A(piv, col)) == 0.0)
            throw IllConditioned("linalg::solve: singular matrix");
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(A(piv, c), A(col, c));
            for (int c = 0; c < B.cols; ++c) std::swap(B(piv, c), B(col, c));
        }
        for (int r = col + 1; r < n; ++r) {
            cplx f = A(r, col) / A(col, col);
            if (f == cplx(0.0)) continue;
            for (int c = col; c < n; ++c) A(r, c) -= f * A(col, c);
            for (int c = 0; c < B.cols; ++c) B(r, c) -= f * B(col, c);
        }
    }
    CMat X(n, B.cols);
    for (int r = n - 1; r >= 0; --r)
        for (int c = 0; c < B.cols; ++c) {
            cplx s = B(r, c);
            for (int k = r + 1; k < n; ++k) s -= A(r, k) * X(k, c);
            X(r, c) = s / A(r, r);
        }
    return X;
}

inline CMat inverse(const CMat& A) { return solve(A, CMat::identity(A.rows)); }

inline cplx det(CMat A) {
    const int n = A.rows;
    cplx d = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A(r, col)) > std::abs(A(piv, col))) piv = r;
        if (std::abs(A(piv, col)) == 0.0) return 0.0;
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(A(piv, c), A(col, c));
            d = -d;
        }
        d *= A(col, col);
        for (int r = col + 1; r < n; ++r) {
            cplx f = A(r, col) / A(col, col);
            for (int c = col; c < n; ++c) A(r, c) -= f * A(col, c);
        }
    }
    return d;
}

inline double cond1(const CMat& A) {
    return A.norm1() * inverse(A).norm1();
}

// Smallest eigenvalue of a small real symmetric matrix (cyclic Jacobi).
inline double min_eig_sym(std::vector<std::vector<double>> m) {
    const int n = int(m.size());
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += m[i][j] * m[i][j];
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(m[p][q]) < 1e-300) continue;
                double theta = 0.5 * std::atan2(2 * m[p][q], m[q][q] - m[p][p]);
                double c = std::cos(theta), s = std::sin(theta);
                for (int k = 0; k < n; ++k) {
                    double mp = m[p][k], mq = m[q][k];
                    m[p][k] = c * mp - s * mq;
                    m[q][k] = s * mp + c * mq;
                }
                for (int k = 0; k < n; ++k) {
                    double mp = m[k][p], mq = m[k][q];
                    m[k][p] = c * mp - s * mq;
                    m[k][q] = s * mp + c * mq;
                }
            }
    }
    double e = m[0][0];
    for (int i = 1; i < n; ++i) e = std::min(e, m[i][i]);
    return e;
}

}  // namespace linalg
}  // namespace hitchin

#endif
