// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "fframe/errors.hpp"

namespace fframe {

/// Numeric thresholds shared across the toolkit.
///
/// residual_tol   — Frobenius-norm feasibility tolerance (scales with ambient dim)
/// rank_tol       — relative singular-value cutoff for rank decisions
/// positivity_eps — smallest coefficient that still counts as strictly positive
struct ToleranceConfig {
    double residual_tol;
    double rank_tol;
    double positivity_eps;

    ToleranceConfig(double residual, double rank, double positivity)
        : residual_tol(residual), rank_tol(rank), positivity_eps(positivity) {
        if (!(residual_tol > 0.0) || !(rank_tol > 0.0) || !(positivity_eps > 0.0))
            throw InvalidSpecError("ToleranceConfig: all tolerances must be strictly positive");
    }

    static ToleranceConfig defaults(std::size_t ambient_dim) {
        return ToleranceConfig(1e-9 * static_cast<double>(ambient_dim), 1e-10, 1e-8);
    }

    ToleranceConfig with_residual_tol(double value) const {
        return ToleranceConfig(value, rank_tol, positivity_eps);
    }
    ToleranceConfig with_positivity_eps(double value) const {
        return ToleranceConfig(residual_tol, rank_tol, value);
    }
};

/// Absolute tolerance used by the structural theorem checkers for residuals
/// and inequality slacks.
inline constexpr double kTheoremTol = 1e-8;

} // namespace fframe
