#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"

namespace chain_eigen {

// Amplitudes indexed by the lexicographic rank of excitation patterns
// within one fixed-excitation subspace.
using StateVector = std::vector<double>;
using ComplexStateVector = std::vector<std::complex<double>>;

// Largest matrix order accepted by the dense eigensolver.
inline constexpr int default_dense_cap = 4096;

struct DenseMatrix {
    int n_rows = 0;
    int n_cols = 0;
    std::vector<double> values; // row-major

    DenseMatrix() = default;
    DenseMatrix(int rows, int cols)
        : n_rows(rows), n_cols(cols),
          values(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0.0) {}

    double& at(int i, int j) { return values[static_cast<std::size_t>(i) * n_cols + j]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * n_cols + j]; }

    static DenseMatrix identity(int n) {
        DenseMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }
};

// Eigenvalues ascending; eigenvector column i pairs with eigenvalues[i].
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    DenseMatrix eigenvectors;
};

inline double frobenius_norm(const DenseMatrix& a) {
    double s = 0.0;
    for (double v : a.values) s += v * v;
    return std::sqrt(s);
}

inline double norm2(const StateVector& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double norm2(const ComplexStateVector& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

inline double inner(const StateVector& a, const StateVector& b) {
    if (a.size() != b.size()) throw domain_error("inner: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Conjugate-linear in the first argument.
inline std::complex<double> inner(const ComplexStateVector& a, const ComplexStateVector& b) {
    if (a.size() != b.size()) throw domain_error("inner: length mismatch");
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

// Determinant via LU with partial pivoting. Returns exactly 0.0 when a
// pivot magnitude falls below 1e-300.
inline double determinant_lu(DenseMatrix a) {
    if (a.n_rows != a.n_cols) throw domain_error("determinant_lu: matrix is not square");
    const int n = a.n_rows;
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(a.at(col, col));
        for (int r = col + 1; r < n; ++r) {
            double mag = std::abs(a.at(r, col));
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best < 1e-300) return 0.0;
        if (pivot != col) {
            for (int c = col; c < n; ++c) std::swap(a.at(col, c), a.at(pivot, c));
            det = -det;
        }
        const double d = a.at(col, col);
        det *= d;
        for (int r = col + 1; r < n; ++r) {
            const double f = a.at(r, col) / d;
            if (f == 0.0) continue;
            for (int c = col + 1; c < n; ++c) a.at(r, c) -= f * a.at(col, c);
        }
    }
    return det;
}

namespace detail {

inline double offdiagonal_norm(const DenseMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.n_rows; ++i)
        for (int j = 0; j < a.n_cols; ++j)
            if (i != j) s += a.at(i, j) * a.at(i, j);
    return std::sqrt(s);
}

} // namespace detail

// Cyclic Jacobi eigensolver for real symmetric matrices. Rotation order is
// fixed (row-major over the upper triangle), so results are deterministic.
inline EigenDecomposition jacobi_eigh(const DenseMatrix& a, double tol = 1e-12,
                                      int max_sweeps = 64, int max_dim = default_dense_cap) {
    if (a.n_rows != a.n_cols) throw domain_error("jacobi_eigh: matrix is not square");
    const int n = a.n_rows;
    if (n > max_dim) throw resource_error("jacobi_eigh: dimension " + std::to_string(n) +
                                          " exceeds dense cap " + std::to_string(max_dim));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(a.at(i, j) - a.at(j, i)) > 1e-12)
                throw domain_error("jacobi_eigh: matrix is not symmetric");

    DenseMatrix w = a;
    DenseMatrix vecs = DenseMatrix::identity(n);
    const double fro = frobenius_norm(a);
    const double target = tol * fro;

    bool converged = (n <= 1) || detail::offdiagonal_norm(w) <= target;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = w.at(p, q);
                if (apq == 0.0) continue;
                const double theta = (w.at(q, q) - w.at(p, p)) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e12) {
                    t = 1.0 / (2.0 * theta);
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = w.at(k, p), akq = w.at(k, q);
                    w.at(k, p) = c * akp - s * akq;
                    w.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = w.at(p, k), aqk = w.at(q, k);
                    w.at(p, k) = c * apk - s * aqk;
                    w.at(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = vecs.at(k, p), vkq = vecs.at(k, q);
                    vecs.at(k, p) = c * vkp - s * vkq;
                    vecs.at(k, q) = s * vkp + c * vkq;
                }
            }
        }
        converged = detail::offdiagonal_norm(w) <= target;
    }
    if (!converged)
        throw convergence_error("jacobi_eigh: off-diagonal residual " +
                                std::to_string(detail::offdiagonal_norm(w)) +
                                " above target " + std::to_string(target) + " after " +
                                std::to_string(max_sweeps) + " sweeps");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return w.at(i, i) < w.at(j, j); });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = DenseMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        out.eigenvalues[j] = w.at(order[j], order[j]);
        for (int i = 0; i < n; ++i) out.eigenvectors.at(i, j) = vecs.at(i, order[j]);
    }
    return out;
}

// G[i][j] = <v_i, v_j>.
inline DenseMatrix gram_matrix(const std::vector<StateVector>& vectors) {
    const int n = static_cast<int>(vectors.size());
    for (const auto& v : vectors)
        if (v.size() != vectors.front().size())
            throw domain_error("gram_matrix: vectors differ in length");
    DenseMatrix g(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const double x = inner(vectors[i], vectors[j]);
            g.at(i, j) = x;
            g.at(j, i) = x;
        }
    }
    return g;
}

} // namespace chain_eigen
