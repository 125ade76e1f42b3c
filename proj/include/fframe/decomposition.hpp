// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "fframe/errors.hpp"
#include "fframe/matrix.hpp"

namespace fframe {

struct SymmetricEig {
    Vector values;  // ascending
    Matrix vectors; // orthonormal columns, vectors.column(i) pairs with values[i]
};

namespace detail {

/// Deterministic sign convention: the entry of largest magnitude (lowest
/// index on ties) is made positive.
inline void fix_column_sign(Matrix& m, std::size_t j) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double a = std::abs(m(i, j));
        if (a > best) {
            best = a;
            arg = i;
        }
    }
    if (m(arg, j) < 0.0)
        for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = -m(i, j);
}

} // namespace detail

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Eigenvalues are returned in ascending order; M = VΛVᵀ.
inline SymmetricEig symmetric_eig(const Matrix& m, double symmetry_tol = 1e-8) {
    if (!m.square()) throw NotSquareError("symmetric_eig: matrix not square");
    const std::size_t n = m.rows();
    const double fro = m.frobenius_norm();
    if (asymmetry_norm(m) > symmetry_tol * std::max(fro, 1e-300))
        throw NotSymmetricError("symmetric_eig: matrix not symmetric within tolerance");

    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + m(j, i));
    Matrix v = Matrix::identity(n);

    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * a(p, q) * a(p, q);
        if (std::sqrt(off) <= 1e-15 * std::max(fro, 1e-300)) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                const double scale = std::abs(a(p, p)) + std::abs(a(q, q));
                if (std::abs(apq) <= 1e-18 * scale + 1e-300) continue;

                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

    SymmetricEig out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
        detail::fix_column_sign(out.vectors, j);
    }
    return out;
}

struct Svd {
    Vector singular_values; // descending, length = cols(A)
    Matrix u;               // m×k, columns beyond the rank are zero
    Matrix v;               // k×k orthogonal

    std::size_t rank(double rank_tol) const {
        if (singular_values.empty()) return 0;
        const double cutoff = rank_tol * singular_values.front();
        std::size_t r = 0;
        for (double s : singular_values)
            if (s > cutoff && s > 0.0) ++r;
        return r;
    }
};

/// Singular value decomposition by one-sided Jacobi column orthogonalization.
/// Accurate for small singular values (no normal-equations squaring).
inline Svd svd(const Matrix& m) {
    const std::size_t rows = m.rows(), k = m.cols();
    Matrix b(m);
    Matrix v = Matrix::identity(k);

    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < k; ++p) {
            for (std::size_t q = p + 1; q < k; ++q) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t i = 0; i < rows; ++i) {
                    alpha += b(i, p) * b(i, p);
                    beta += b(i, q) * b(i, q);
                    gamma += b(i, p) * b(i, q);
                }
                const double ab = std::sqrt(alpha * beta);
                if (ab <= 0.0 || std::abs(gamma) <= 1e-15 * ab) continue;

                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;

                for (std::size_t i = 0; i < rows; ++i) {
                    const double bip = b(i, p), biq = b(i, q);
                    b(i, p) = c * bip - s * biq;
                    b(i, q) = s * bip + c * biq;
                }
                for (std::size_t i = 0; i < k; ++i) {
                    const double vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
                rotated = true;
            }
        }
        if (!rotated) break;
    }

    Vector sigma(k);
    for (std::size_t j = 0; j < k; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows; ++i) s += b(i, j) * b(i, j);
        sigma[j] = std::sqrt(s);
    }

    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    Svd out;
    out.singular_values.resize(k);
    out.u = Matrix(rows, k);
    out.v = Matrix(k, k);
    const double smax = sigma.empty() ? 0.0 : sigma[order[0]];
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t src = order[j];
        out.singular_values[j] = sigma[src];
        for (std::size_t i = 0; i < k; ++i) out.v(i, j) = v(i, src);
        if (sigma[src] > smax * 1e-300 && sigma[src] > 0.0) {
            for (std::size_t i = 0; i < rows; ++i) out.u(i, j) = b(i, src) / sigma[src];
            std::size_t arg = 0;
            double best = -1.0;
            for (std::size_t i = 0; i < rows; ++i) {
                const double aij = std::abs(out.u(i, j));
                if (aij > best) {
                    best = aij;
                    arg = i;
                }
            }
            if (out.u(arg, j) < 0.0) {
                for (std::size_t i = 0; i < rows; ++i) out.u(i, j) = -out.u(i, j);
                for (std::size_t i = 0; i < k; ++i) out.v(i, j) = -out.v(i, j);
            }
        } else {
            detail::fix_column_sign(out.v, j);
        }
    }
    return out;
}

/// Orthonormal basis of span{vectors}: an n×d matrix with QᵀQ = I_d where d
/// is the numerical rank of the input family.
inline Matrix orthonormalize(const std::vector<Vector>& vectors, double rank_tol) {
    if (vectors.empty()) throw EmptyInputError("orthonormalize: no input vectors");
    const std::size_t n = vectors.front().size();
    if (n == 0) throw EmptyInputError("orthonormalize: zero-dimensional vectors");
    for (const Vector& v : vectors)
        if (v.size() != n)
            throw DimensionMismatchError("orthonormalize: mixed ambient dimensions");

    const Svd dec = svd(Matrix::from_columns(vectors));
    const std::size_t r = dec.rank(rank_tol);
    if (r == 0) throw EmptyInputError("orthonormalize: input spans only the zero subspace");
    return dec.u.columns(0, r);
}

/// Orthonormal kernel basis of M. Returns a default (0×0) matrix when the
/// kernel is trivial.
inline Matrix nullspace(const Matrix& m, double rank_tol) {
    const Svd dec = svd(m);
    const std::size_t r = dec.rank(rank_tol);
    const std::size_t k = m.cols();
    if (r == k) return Matrix();
    return dec.v.columns(r, k - r);
}

inline std::size_t numerical_rank(const Matrix& m, double rank_tol) {
    return svd(m).rank(rank_tol);
}

/// Minimum-norm least-squares solution of A x ≈ b.
inline Vector lstsq(const Matrix& a, const Vector& b, double rank_tol) {
    if (a.rows() != b.size())
        throw DimensionMismatchError("lstsq: rhs length differs from row count");
    const Svd dec = svd(a);
    const std::size_t r = dec.rank(rank_tol);
    Vector x(a.cols(), 0.0);
    for (std::size_t j = 0; j < r; ++j) {
        double uj_b = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) uj_b += dec.u(i, j) * b[i];
        const double coef = uj_b / dec.singular_values[j];
        for (std::size_t i = 0; i < a.cols(); ++i) x[i] += coef * dec.v(i, j);
    }
    return x;
}

/// Inverse of a symmetric positive-definite matrix through its spectrum.
inline Matrix inverse_spd(const Matrix& m, double rank_tol = 1e-12) {
    const SymmetricEig eig = symmetric_eig(m);
    const double top = eig.values.back();
    if (!(top > 0.0) || eig.values.front() <= rank_tol * top)
        throw Error("inverse_spd: matrix numerically singular");
    const std::size_t n = m.rows();
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += eig.vectors(i, k) * eig.vectors(j, k) / eig.values[k];
            inv(i, j) = s;
        }
    return inv;
}

} // namespace fframe
