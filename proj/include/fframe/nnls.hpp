// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "fframe/decomposition.hpp"
#include "fframe/errors.hpp"
#include "fframe/matrix.hpp"

namespace fframe {

struct NnlsResult {
    Vector coefficients; // c ≥ 0
    double residual;     // ‖Ac − b‖₂ at the (global, by convexity) minimum
};

namespace detail {

inline Vector ls_on_subset(const Matrix& a, const Vector& b,
                           const std::vector<std::size_t>& passive, double rank_tol) {
    std::vector<Vector> cols;
    cols.reserve(passive.size());
    for (std::size_t j : passive) cols.push_back(a.column(j));
    const Vector z = lstsq(Matrix::from_columns(cols), b, rank_tol);
    Vector full(a.cols(), 0.0);
    for (std::size_t t = 0; t < passive.size(); ++t) full[passive[t]] = z[t];
    return full;
}

} // namespace detail

/// Active-set nonnegative least squares (Lawson–Hanson). The entering rule is
/// deterministic: largest positive gradient component, lowest index on ties.
/// Throws IterationLimitError after 10·cols iterations.
inline NnlsResult nnls(const Matrix& a, const Vector& b, double rank_tol = 1e-12) {
    if (a.rows() != b.size())
        throw DimensionMismatchError("nnls: rhs length differs from row count");
    const std::size_t k = a.cols();

    Vector c(k, 0.0);
    std::vector<bool> passive(k, false);
    std::vector<std::size_t> passive_list;

    double atb_scale = 0.0;
    {
        const Vector atb = a.transpose() * b;
        for (double x : atb) atb_scale = std::max(atb_scale, std::abs(x));
    }
    const double grad_tol = 1e-12 * std::max(1.0, atb_scale);

    const std::size_t max_iter = 10 * std::max<std::size_t>(k, 1);
    std::size_t iter = 0;

    while (true) {
        Vector residual_vec = sub(b, a * c);
        Vector w = a.transpose() * residual_vec;

        std::size_t enter = k;
        double best = grad_tol;
        for (std::size_t j = 0; j < k; ++j) {
            if (passive[j]) continue;
            if (w[j] > best) {
                best = w[j];
                enter = j;
            }
        }
        if (enter == k) break; // KKT satisfied: all inactive gradients ≤ 0

        passive[enter] = true;
        passive_list.push_back(enter);
        std::sort(passive_list.begin(), passive_list.end());

        while (true) {
            if (++iter > max_iter)
                throw IterationLimitError("nnls: iteration limit exceeded");

            Vector z = detail::ls_on_subset(a, b, passive_list, rank_tol);

            double zmin = std::numeric_limits<double>::infinity();
            for (std::size_t j : passive_list) zmin = std::min(zmin, z[j]);
            if (zmin > 0.0) {
                c = std::move(z);
                break;
            }

            // Step toward z until the first passive coefficient hits zero.
            double alpha = std::numeric_limits<double>::infinity();
            for (std::size_t j : passive_list)
                if (z[j] <= 0.0) {
                    const double denom = c[j] - z[j];
                    if (denom > 0.0) alpha = std::min(alpha, c[j] / denom);
                }
            if (!std::isfinite(alpha)) alpha = 0.0;

            for (std::size_t j : passive_list) c[j] += alpha * (z[j] - c[j]);

            std::vector<std::size_t> kept;
            for (std::size_t j : passive_list) {
                if (z[j] <= 0.0 && c[j] <= 1e-12 * std::max(1.0, atb_scale)) {
                    c[j] = 0.0;
                    passive[j] = false;
                } else {
                    kept.push_back(j);
                }
            }
            passive_list = std::move(kept);
            if (passive_list.empty()) {
                std::fill(c.begin(), c.end(), 0.0);
                break;
            }
        }
    }

    for (double& x : c)
        if (x < 0.0) x = 0.0;
    return NnlsResult{c, norm2(sub(a * c, b))};
}

} // namespace fframe
