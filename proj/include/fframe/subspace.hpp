// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "fframe/decomposition.hpp"
#include "fframe/errors.hpp"
#include "fframe/matrix.hpp"

namespace fframe {

/// A nonzero closed subspace of H_n, canonicalized to an orthonormal basis
/// at construction. The zero subspace is not representable.
class Subspace {
public:
    Subspace(std::size_t ambient_dim, Matrix orthonormal_basis, double ortho_tol = 1e-10)
        : ambient_(ambient_dim), basis_(std::move(orthonormal_basis)) {
        if (ambient_ == 0) throw EmptyInputError("Subspace: zero ambient dimension");
        if (basis_.rows() != ambient_)
            throw DimensionMismatchError("Subspace: basis rows differ from ambient dimension");
        const std::size_t d = basis_.cols();
        if (d == 0 || d > ambient_)
            throw DimensionMismatchError("Subspace: invalid basis dimension");
        Matrix gram = basis_.transpose() * basis_;
        for (std::size_t i = 0; i < d; ++i) gram(i, i) -= 1.0;
        if (gram.frobenius_norm() > ortho_tol)
            throw RankDeficientBasisError("Subspace: basis columns not orthonormal");
    }

    /// Orthonormalizes a spanning family. Rejects families spanning {0}.
    static Subspace from_span(const std::vector<Vector>& spanning, double rank_tol = 1e-10) {
        Matrix q = orthonormalize(spanning, rank_tol);
        return Subspace(q.rows(), std::move(q));
    }

    static Subspace line(const Vector& direction, double rank_tol = 1e-10) {
        return from_span({direction}, rank_tol);
    }

    /// Span of a subset of coordinate axes.
    static Subspace coordinate_span(std::size_t ambient, const std::vector<std::size_t>& axes) {
        if (axes.empty()) throw EmptyInputError("coordinate_span: no axes");
        Matrix q(ambient, axes.size());
        for (std::size_t j = 0; j < axes.size(); ++j) {
            if (axes[j] >= ambient)
                throw DimensionMismatchError("coordinate_span: axis out of range");
            q(axes[j], j) = 1.0;
        }
        return Subspace(ambient, std::move(q));
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.cols(); }
    const Matrix& basis() const { return basis_; }

    /// Orthogonal projector P = QQᵀ.
    Matrix projector() const { return basis_ * basis_.transpose(); }

    /// Projection of v onto the subspace.
    Vector project(const Vector& v) const {
        if (v.size() != ambient_)
            throw DimensionMismatchError("Subspace::project: vector dimension differs");
        return basis_ * (basis_.transpose() * v);
    }

    /// Membership test: ‖v − QQᵀv‖ ≤ tol·‖v‖.
    bool contains(const Vector& v, double tol) const {
        if (v.size() != ambient_)
            throw DimensionMismatchError("Subspace::contains: vector dimension differs");
        const double nv = norm2(v);
        if (nv == 0.0) return true;
        return norm2(sub(v, project(v))) <= tol * nv;
    }

private:
    std::size_t ambient_;
    Matrix basis_;
};

/// ‖Q1ᵀQ2‖_F ≤ tol.
inline bool is_orthogonal_pair(const Subspace& s1, const Subspace& s2, double tol) {
    if (s1.ambient_dim() != s2.ambient_dim())
        throw DimensionMismatchError("is_orthogonal_pair: ambient dimensions differ");
    return (s1.basis().transpose() * s2.basis()).frobenius_norm() <= tol;
}

inline double orthogonality_defect(const Subspace& s1, const Subspace& s2) {
    if (s1.ambient_dim() != s2.ambient_dim())
        throw DimensionMismatchError("orthogonality_defect: ambient dimensions differ");
    return (s1.basis().transpose() * s2.basis()).frobenius_norm();
}

/// ‖P1 − P2‖_F — the canonical subspace distance used for equality tests.
inline double projector_distance(const Subspace& s1, const Subspace& s2) {
    if (s1.ambient_dim() != s2.ambient_dim())
        throw DimensionMismatchError("projector_distance: ambient dimensions differ");
    return (s1.projector() - s2.projector()).frobenius_norm();
}

/// Direct sum S1 ⊕ S2. Rejects overlapping summands (rank deficiency of the
/// combined basis signals the declared ⊕ is invalid).
inline Subspace direct_sum(const Subspace& s1, const Subspace& s2, double rank_tol = 1e-10) {
    if (s1.ambient_dim() != s2.ambient_dim())
        throw DimensionMismatchError("direct_sum: ambient dimensions differ");
    const Matrix combined = Matrix::hcat({s1.basis(), s2.basis()});
    if (numerical_rank(combined, rank_tol) != s1.dim() + s2.dim())
        throw OverlappingSubspacesError("direct_sum: summands overlap");
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < combined.cols(); ++j) cols.push_back(combined.column(j));
    return Subspace::from_span(cols, rank_tol);
}

/// Image of a subspace under an invertible operator, re-orthonormalized.
inline Subspace apply_operator(const Matrix& op, const Subspace& s, double rank_tol = 1e-10) {
    if (op.cols() != s.ambient_dim())
        throw DimensionMismatchError("apply_operator: operator shape mismatch");
    const Matrix image = op * s.basis();
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < image.cols(); ++j) cols.push_back(image.column(j));
    Matrix q = orthonormalize(cols, rank_tol);
    if (q.cols() != s.dim())
        throw RankDeficientBasisError("apply_operator: operator collapsed the subspace");
    return Subspace(op.rows(), std::move(q));
}

/// Orthogonal complement of `inner` within `outer` (both subspaces of the
/// same ambient space, inner ⊆ outer). Returns nullopt when the complement
/// is trivial.
inline std::optional<Subspace> complement_within(const Subspace& outer, const Subspace& inner,
                                                 double rank_tol = 1e-10) {
    if (outer.ambient_dim() != inner.ambient_dim())
        throw DimensionMismatchError("complement_within: ambient dimensions differ");
    const Matrix p_inner = inner.projector();
    std::vector<Vector> residuals;
    for (std::size_t j = 0; j < outer.dim(); ++j) {
        Vector col = outer.basis().column(j);
        residuals.push_back(sub(col, p_inner * col));
    }
    Matrix stacked = Matrix::from_columns(residuals);
    const std::size_t r = numerical_rank(stacked, rank_tol);
    if (r == 0) return std::nullopt;
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < stacked.cols(); ++j) cols.push_back(stacked.column(j));
    return Subspace(outer.ambient_dim(), orthonormalize(cols, rank_tol));
}

} // namespace fframe
