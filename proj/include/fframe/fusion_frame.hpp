// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "fframe/decomposition.hpp"
#include "fframe/errors.hpp"
#include "fframe/matrix.hpp"
#include "fframe/subspace.hpp"
#include "fframe/tolerance.hpp"

namespace fframe {

struct WeightedSubspace {
    Subspace subspace;
    double weight;
};

/// An ordered, weighted family of subspaces of a common ambient space.
/// Duplicate subspaces are permitted (repeated-subspace constructions rely
/// on them); weights must be strictly positive.
class FusionFrame {
public:
    explicit FusionFrame(std::vector<WeightedSubspace> items) : items_(std::move(items)) {
        if (items_.empty()) throw EmptyInputError("FusionFrame: no items");
        ambient_ = items_.front().subspace.ambient_dim();
        for (const WeightedSubspace& it : items_) {
            if (it.subspace.ambient_dim() != ambient_)
                throw DimensionMismatchError("FusionFrame: mixed ambient dimensions");
            if (!(it.weight > 0.0) || !std::isfinite(it.weight))
                throw NonpositiveWeightError("FusionFrame: weights must be strictly positive");
        }
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t size() const { return items_.size(); }
    const WeightedSubspace& item(std::size_t i) const { return items_.at(i); }
    const std::vector<WeightedSubspace>& items() const { return items_; }

    std::size_t total_local_dim() const {
        std::size_t d = 0;
        for (const WeightedSubspace& it : items_) d += it.subspace.dim();
        return d;
    }

    Vector weights() const {
        Vector w;
        w.reserve(items_.size());
        for (const WeightedSubspace& it : items_) w.push_back(it.weight);
        return w;
    }

    FusionFrame with_weights(const Vector& w) const {
        if (w.size() != items_.size())
            throw LengthMismatchError("with_weights: weight count differs");
        std::vector<WeightedSubspace> out;
        out.reserve(items_.size());
        for (std::size_t i = 0; i < items_.size(); ++i)
            out.push_back({items_[i].subspace, w[i]});
        return FusionFrame(std::move(out));
    }

private:
    std::size_t ambient_;
    std::vector<WeightedSubspace> items_;
};

/// S = Σ ω_i² π_{W_i}; symmetric positive semidefinite.
inline Matrix frame_operator(const FusionFrame& f) {
    Matrix s(f.ambient_dim(), f.ambient_dim());
    for (const WeightedSubspace& it : f.items())
        s = s + it.subspace.projector().scaled(it.weight * it.weight);
    return s;
}

/// Optimal frame bounds: the extreme eigenvalues of the frame operator.
inline std::pair<double, double> frame_bounds(const FusionFrame& f) {
    const SymmetricEig eig = symmetric_eig(frame_operator(f));
    const double lower = std::max(0.0, eig.values.front());
    return {lower, eig.values.back()};
}

inline bool is_frame(const FusionFrame& f, const ToleranceConfig& tol) {
    const auto [a, b] = frame_bounds(f);
    return a > static_cast<double>(f.ambient_dim()) * tol.rank_tol * b;
}

/// Block-column matrix [ω_1 Q_1 | ω_2 Q_2 | …]; satisfies T·Tᵀ = S.
inline Matrix synthesis_matrix(const FusionFrame& f) {
    std::vector<Matrix> blocks;
    blocks.reserve(f.size());
    for (const WeightedSubspace& it : f.items())
        blocks.push_back(it.subspace.basis().scaled(it.weight));
    return Matrix::hcat(blocks);
}

/// Unweighted block-column matrix [Q_1 | Q_2 | …] (local Riesz bases).
inline Matrix unweighted_synthesis_matrix(const FusionFrame& f) {
    std::vector<Matrix> blocks;
    blocks.reserve(f.size());
    for (const WeightedSubspace& it : f.items()) blocks.push_back(it.subspace.basis());
    return Matrix::hcat(blocks);
}

struct ExcessResult {
    std::size_t excess;
    Matrix kernel_basis; // orthonormal columns of the synthesis kernel; 0×0 when trivial
};

/// Excess = dim of the synthesis-matrix kernel (equivalently Σd_i − rank).
inline ExcessResult excess(const FusionFrame& f, double rank_tol = 1e-10) {
    const Matrix t = synthesis_matrix(f);
    Matrix kernel = nullspace(t, rank_tol);
    const std::size_t e = kernel.rows() == 0 ? 0 : kernel.cols();
    return ExcessResult{e, std::move(kernel)};
}

struct FrameAnalysis {
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    bool is_frame = false;
    bool is_tight = false;
    bool is_parseval = false;
    bool is_riesz_basis = false;
    bool is_orthogonal_family = false;
    std::size_t excess = 0;
};

inline bool is_orthogonal_family(const FusionFrame& f, double tol = kTheoremTol) {
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j)
            if (!is_orthogonal_pair(f.item(i).subspace, f.item(j).subspace, tol)) return false;
    return true;
}

inline FrameAnalysis classify(const FusionFrame& f, const ToleranceConfig& tol) {
    FrameAnalysis out;
    const Matrix s = frame_operator(f);
    const SymmetricEig eig = symmetric_eig(s);
    out.lower_bound = std::max(0.0, eig.values.front());
    out.upper_bound = eig.values.back();
    out.is_frame =
        out.lower_bound > static_cast<double>(f.ambient_dim()) * tol.rank_tol * out.upper_bound;

    Matrix s_minus_i(s);
    for (std::size_t i = 0; i < s.rows(); ++i) s_minus_i(i, i) -= 1.0;
    out.is_parseval = out.is_frame && s_minus_i.frobenius_norm() <= tol.residual_tol;
    out.is_tight = out.is_parseval ||
                   (out.is_frame && (out.upper_bound - out.lower_bound) <=
                                        2.0 * tol.residual_tol * std::max(1.0, out.upper_bound));

    out.excess = excess(f, tol.rank_tol).excess;
    out.is_riesz_basis = out.is_frame && out.excess == 0;
    out.is_orthogonal_family = is_orthogonal_family(f);
    return out;
}

/// Unique components f_i ∈ W_i with Σ f_i = f, defined for fusion Riesz
/// bases (solved on the unweighted synthesis matrix).
inline std::vector<Vector> riesz_decompose(const FusionFrame& f, const Vector& v,
                                           const ToleranceConfig& tol) {
    if (v.size() != f.ambient_dim())
        throw DimensionMismatchError("riesz_decompose: vector dimension differs");
    if (!classify(f, tol).is_riesz_basis)
        throw NotRieszBasisError("riesz_decompose: frame is not a fusion Riesz basis");
    const Matrix t0 = unweighted_synthesis_matrix(f);
    const Vector coef = lstsq(t0, v, tol.rank_tol);
    std::vector<Vector> parts;
    parts.reserve(f.size());
    std::size_t off = 0;
    for (const WeightedSubspace& it : f.items()) {
        const std::size_t d = it.subspace.dim();
        Vector local(coef.begin() + off, coef.begin() + off + d);
        parts.push_back(it.subspace.basis() * local);
        off += d;
    }
    return parts;
}

inline Matrix inverse_frame_operator(const FusionFrame& f, const ToleranceConfig& tol) {
    if (!is_frame(f, tol))
        throw NotAFrameError("inverse_frame_operator: family is not a fusion frame");
    return inverse_spd(frame_operator(f), tol.rank_tol);
}

/// Canonical dual {(S⁻¹W_i, ω_i)}: subspaces re-orthonormalized after
/// applying S⁻¹, weights kept verbatim.
inline FusionFrame canonical_dual(const FusionFrame& f, const ToleranceConfig& tol) {
    const Matrix s_inv = inverse_frame_operator(f, tol);
    std::vector<WeightedSubspace> items;
    items.reserve(f.size());
    for (const WeightedSubspace& it : f.items())
        items.push_back({apply_operator(s_inv, it.subspace, tol.rank_tol), it.weight});
    return FusionFrame(std::move(items));
}

struct DualCheck {
    bool is_dual;
    double residual;
};

/// Alternate-dual test: ‖Σ ω_i υ_i π_{V_i} S_W⁻¹ π_{W_i} − I‖_F ≤ tol.
inline DualCheck is_dual(const FusionFrame& candidate, const FusionFrame& frame, double tol,
                         const ToleranceConfig& cfg) {
    if (candidate.ambient_dim() != frame.ambient_dim())
        throw DimensionMismatchError("is_dual: ambient dimensions differ");
    if (candidate.size() != frame.size())
        throw LengthMismatchError("is_dual: frame lengths differ");
    const Matrix s_inv = inverse_frame_operator(frame, cfg);
    const std::size_t n = frame.ambient_dim();
    Matrix acc(n, n);
    for (std::size_t i = 0; i < frame.size(); ++i) {
        const double w = frame.item(i).weight * candidate.item(i).weight;
        acc = acc + (candidate.item(i).subspace.projector() * s_inv *
                     frame.item(i).subspace.projector())
                        .scaled(w);
    }
    for (std::size_t i = 0; i < n; ++i) acc(i, i) -= 1.0;
    const double residual = acc.frobenius_norm();
    return DualCheck{residual <= tol, residual};
}

/// Frame with every subspace mapped through an orthogonal operator.
inline FusionFrame transform_frame(const Matrix& u, const FusionFrame& f,
                                   double rank_tol = 1e-10) {
    std::vector<WeightedSubspace> items;
    items.reserve(f.size());
    for (const WeightedSubspace& it : f.items())
        items.push_back({apply_operator(u, it.subspace, rank_tol), it.weight});
    return FusionFrame(std::move(items));
}

} // namespace fframe
