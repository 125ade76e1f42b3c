// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "fframe/fusion_frame.hpp"
#include "fframe/lp.hpp"
#include "fframe/matrix.hpp"
#include "fframe/nnls.hpp"
#include "fframe/tolerance.hpp"

namespace fframe {

enum class ScalingStatus {
    StrictlyScalable,
    ScalableWithZeroWeights,
    Infeasible,
};

inline const char* to_string(ScalingStatus s) {
    switch (s) {
        case ScalingStatus::StrictlyScalable: return "strictly_scalable";
        case ScalingStatus::ScalableWithZeroWeights: return "scalable_with_zero_weights";
        case ScalingStatus::Infeasible: return "infeasible";
    }
    return "unknown";
}

/// Solver verdict for the weight-scaling problem Σ (ω_i γ_i)² π_{W_i} = I.
/// coefficients hold c_i = (ω_i γ_i)²; gamma_i = √c_i / ω_i (zero where the
/// coefficient vanished). residual is Frobenius feasibility at the returned
/// coefficients; min_coefficient is min_i c_i at the max-min optimum.
struct ScalingSolution {
    ScalingStatus status;
    Vector coefficients;
    Vector gamma;
    double residual;
    double min_coefficient;

    /// ω_i·γ_i = √c_i — the weights of the scaled frame. The structural
    /// checkers consume these (the 1-uniform presentation of the results).
    Vector scaled_weights() const {
        Vector g(coefficients.size());
        for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::sqrt(std::max(0.0, coefficients[i]));
        return g;
    }
};

/// Frobenius-isometric vectorization of the upper triangle of a symmetric
/// matrix (off-diagonal entries scaled by √2), so Euclidean residuals in the
/// vectorized system equal Frobenius residuals of the matrix equation.
inline Vector vectorize_symmetric(const Matrix& m) {
    if (!m.square()) throw NotSquareError("vectorize_symmetric: matrix not square");
    const std::size_t n = m.rows();
    Vector out;
    out.reserve(n * (n + 1) / 2);
    const double root2 = std::sqrt(2.0);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(m(i, i));
        for (std::size_t j = i + 1; j < n; ++j) out.push_back(root2 * 0.5 * (m(i, j) + m(j, i)));
    }
    return out;
}

struct ScalingSystem {
    Matrix a; // n(n+1)/2 × k, column i = vec(π_{W_i})
    Vector b; // vec(I)
};

inline ScalingSystem build_scaling_system(const FusionFrame& f) {
    std::vector<Vector> cols;
    cols.reserve(f.size());
    for (const WeightedSubspace& it : f.items())
        cols.push_back(vectorize_symmetric(it.subspace.projector()));
    return ScalingSystem{Matrix::from_columns(cols),
                         vectorize_symmetric(Matrix::identity(f.ambient_dim()))};
}

/// ‖Σ (ω_i γ_i)² π_{W_i} − I‖_F for a candidate family of weights.
inline double verify_scaling(const FusionFrame& f, const Vector& gamma) {
    if (gamma.size() != f.size())
        throw LengthMismatchError("verify_scaling: gamma length differs from frame size");
    for (double g : gamma)
        if (!(g > 0.0) || !std::isfinite(g))
            throw NonpositiveGammaError("verify_scaling: gamma must be strictly positive");
    const std::size_t n = f.ambient_dim();
    Matrix acc(n, n);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double c = f.item(i).weight * gamma[i];
        acc = acc + f.item(i).subspace.projector().scaled(c * c);
    }
    for (std::size_t i = 0; i < n; ++i) acc(i, i) -= 1.0;
    return acc.frobenius_norm();
}

/// Decides weight-scalability.
///
/// Phase 1 (NNLS) finds the global minimum of ‖Ac − b‖ over c ≥ 0; a residual
/// above residual_tol certifies infeasibility by convexity. Phase 2 (max-min
/// LP over the least-squares affine slice) selects the coefficient vector
/// with the largest minimum entry, separating strict scalability from
/// feasibility that forces zero weights.
inline ScalingSolution solve_scaling(const FusionFrame& f, const ToleranceConfig& tol) {
    const ScalingSystem sys = build_scaling_system(f);
    const NnlsResult base = nnls(sys.a, sys.b);

    ScalingSolution out;
    out.coefficients = base.coefficients;
    out.residual = base.residual;

    if (base.residual > tol.residual_tol) {
        out.status = ScalingStatus::Infeasible;
    } else if (auto lp = maxmin_lp(sys.a, sys.b, tol.residual_tol, tol.rank_tol)) {
        out.coefficients = lp->coefficients;
        out.residual = lp->residual;
        out.status = lp->min_coefficient >= tol.positivity_eps
                         ? ScalingStatus::StrictlyScalable
                         : ScalingStatus::ScalableWithZeroWeights;
    } else {
        // Feasible at tolerance but the exact affine slice misses the cone;
        // fall back to the NNLS point.
        double cmin = std::numeric_limits<double>::infinity();
        for (double c : base.coefficients) cmin = std::min(cmin, c);
        out.status = cmin >= tol.positivity_eps ? ScalingStatus::StrictlyScalable
                                                : ScalingStatus::ScalableWithZeroWeights;
    }

    out.min_coefficient = std::numeric_limits<double>::infinity();
    for (double c : out.coefficients) out.min_coefficient = std::min(out.min_coefficient, c);

    out.gamma.assign(f.size(), 0.0);
    for (std::size_t i = 0; i < f.size(); ++i)
        if (out.coefficients[i] > 0.0)
            out.gamma[i] = std::sqrt(out.coefficients[i]) / f.item(i).weight;

    return out;
}

} // namespace fframe
