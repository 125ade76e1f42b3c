// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "fframe/decomposition.hpp"
#include "fframe/errors.hpp"
#include "fframe/matrix.hpp"

namespace fframe {

namespace detail {

/// Dense tableau simplex for  min cᵀx  s.t.  Ax = b, x ≥ 0  with Bland's
/// rule (lowest index) for both the entering and leaving choices, so runs
/// are deterministic and cycling-free.
class Simplex {
public:
    Simplex(const Matrix& a, const Vector& b) : m_(a.rows()), n_(a.cols()), cols_(a.cols()) {
        tab_.assign(m_ * (n_ + 1), 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            const double sign = b[i] < 0.0 ? -1.0 : 1.0;
            for (std::size_t j = 0; j < n_; ++j) at(i, j) = sign * a(i, j);
            rhs(i) = sign * b[i];
        }
    }

    enum class Status { Optimal, Unbounded, Infeasible };

    /// Runs both phases. On success `solution` holds the n-vector x.
    Status solve(const Vector& cost, Vector& solution) {
        // Phase 1: artificial basis, minimize the artificial sum.
        const std::size_t total = n_ + m_;
        std::vector<double> wide(m_ * (total + 1), 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) wide[i * (total + 1) + j] = at(i, j);
            wide[i * (total + 1) + n_ + i] = 1.0;
            wide[i * (total + 1) + total] = rhs(i);
        }
        tab_.swap(wide);
        cols_ = total;
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;

        Vector phase1_cost(total, 0.0);
        for (std::size_t j = n_; j < total; ++j) phase1_cost[j] = 1.0;
        build_cost_row(phase1_cost);
        if (iterate(n_) == Status::Unbounded)
            return Status::Infeasible; // phase-1 objective is bounded below by 0
        if (objective_value() > 1e-9) return Status::Infeasible;

        // Phase 2: real cost; artificial columns may not re-enter.
        Vector phase2_cost(total, 0.0);
        for (std::size_t j = 0; j < n_; ++j) phase2_cost[j] = cost[j];
        build_cost_row(phase2_cost);
        const Status st = iterate(n_);
        if (st != Status::Optimal) return st;

        solution.assign(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_) solution[basis_[i]] = rhs(i);
        return Status::Optimal;
    }

private:
    double& at(std::size_t i, std::size_t j) { return tab_[i * (cols_ + 1) + j]; }
    double& rhs(std::size_t i) { return tab_[i * (cols_ + 1) + cols_]; }

    void build_cost_row(const Vector& cost) {
        cost_row_.assign(cols_ + 1, 0.0);
        for (std::size_t j = 0; j < cols_; ++j) cost_row_[j] = cost[j];
        for (std::size_t i = 0; i < m_; ++i) {
            const double cb = cost[basis_[i]];
            if (cb == 0.0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) cost_row_[j] -= cb * tab_[i * (cols_ + 1) + j];
        }
    }

    double objective_value() const { return -cost_row_[cols_]; }

    Status iterate(std::size_t enter_limit) {
        const double eps = 1e-11;
        const std::size_t max_pivots = 200 * (m_ + cols_ + 1);
        for (std::size_t pivots = 0;; ++pivots) {
            if (pivots > max_pivots)
                throw IterationLimitError("simplex: pivot limit exceeded");
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < enter_limit; ++j)
                if (cost_row_[j] < -eps) {
                    enter = j;
                    break;
                }
            if (enter == cols_) return Status::Optimal;

            std::size_t leave = m_;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                const double aij = at(i, enter);
                if (aij > eps) {
                    const double ratio = rhs(i) / aij;
                    if (ratio < best_ratio - eps ||
                        (ratio < best_ratio + eps && (leave == m_ || basis_[i] < basis_[leave]))) {
                        best_ratio = ratio;
                        leave = i;
                    }
                }
            }
            if (leave == m_) return Status::Unbounded;
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        const double p = at(row, col);
        for (std::size_t j = 0; j <= cols_; ++j) tab_[row * (cols_ + 1) + j] /= p;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row) continue;
            const double f = at(i, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= cols_; ++j)
                tab_[i * (cols_ + 1) + j] -= f * tab_[row * (cols_ + 1) + j];
        }
        const double fc = cost_row_[col];
        if (fc != 0.0)
            for (std::size_t j = 0; j <= cols_; ++j)
                cost_row_[j] -= fc * tab_[row * (cols_ + 1) + j];
        basis_[row] = col;
    }

    std::size_t m_, n_, cols_ = 0;
    std::vector<double> tab_;
    Vector cost_row_;
    std::vector<std::size_t> basis_;
};

} // namespace detail

struct MaxMinResult {
    Vector coefficients;
    double min_coefficient;
    double residual;
};

/// Maximizes min_i c_i over {c ≥ 0 : c lies on the least-squares affine
/// solution set of Ac ≈ b}. Every point of that set attains the global
/// minimum residual, so feasibility at `residual_tol` reduces to the
/// nonnegative slice being nonempty. Returns nullopt when it is empty.
inline std::optional<MaxMinResult> maxmin_lp(const Matrix& a, const Vector& b,
                                             double residual_tol, double rank_tol = 1e-10) {
    if (a.rows() != b.size())
        throw DimensionMismatchError("maxmin_lp: rhs length differs from row count");
    const std::size_t k = a.cols();

    const Svd dec = svd(a);
    const std::size_t r = dec.rank(rank_tol);
    Vector c0(k, 0.0);
    for (std::size_t j = 0; j < r; ++j) {
        double uj_b = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) uj_b += dec.u(i, j) * b[i];
        const double coef = uj_b / dec.singular_values[j];
        for (std::size_t i = 0; i < k; ++i) c0[i] += coef * dec.v(i, j);
    }
    const double base_residual = norm2(sub(a * c0, b));
    if (base_residual > residual_tol) return std::nullopt;

    const std::size_t p = k - r;
    Vector c;
    if (p == 0) {
        double scale = 1.0;
        for (double x : c0) scale = std::max(scale, std::abs(x));
        double cmin = std::numeric_limits<double>::infinity();
        for (double x : c0) cmin = std::min(cmin, x);
        if (cmin < -1e-11 * scale) return std::nullopt;
        c = c0;
    } else {
        const Matrix n_basis = dec.v.columns(r, p);
        // Variables: [z⁺(p), z⁻(p), t⁺, t⁻, s(k), s_cap]. Rows 0..k-1:
        // −Nz + t·1 + s = c0. The last row caps t (the max-min is unbounded
        // only when the kernel contains an entrywise-positive direction,
        // which vectorized-projector systems exclude; the cap keeps the
        // general operation total).
        double cap = 1.0;
        for (double x : c0) cap = std::max(cap, std::abs(x));
        cap *= 1e6;
        const std::size_t nvar = 2 * p + 2 + k + 1;
        Matrix rows(k + 1, nvar);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t jp = 0; jp < p; ++jp) {
                rows(i, jp) = -n_basis(i, jp);
                rows(i, p + jp) = n_basis(i, jp);
            }
            rows(i, 2 * p) = 1.0;
            rows(i, 2 * p + 1) = -1.0;
            rows(i, 2 * p + 2 + i) = 1.0;
        }
        rows(k, 2 * p) = 1.0;
        rows(k, 2 * p + 1) = -1.0;
        rows(k, 2 * p + 2 + k) = 1.0;
        Vector rhs(c0);
        rhs.push_back(cap);
        Vector cost(nvar, 0.0);
        cost[2 * p] = -1.0; // maximize t
        cost[2 * p + 1] = 1.0;

        detail::Simplex lp(rows, rhs);
        Vector x;
        const auto st = lp.solve(cost, x);
        if (st == detail::Simplex::Status::Infeasible) return std::nullopt;
        if (st == detail::Simplex::Status::Unbounded)
            throw Error("maxmin_lp: unbounded objective");

        const double t = x[2 * p] - x[2 * p + 1];
        if (t < -1e-10) return std::nullopt;
        c = c0;
        for (std::size_t jp = 0; jp < p; ++jp) {
            const double z = x[jp] - x[p + jp];
            if (z == 0.0) continue;
            for (std::size_t i = 0; i < k; ++i) c[i] += z * n_basis(i, jp);
        }

        // Re-project onto the least-squares affine set to shed tableau
        // drift (the correction lives in the row space, so the max-min
        // value is unchanged up to roundoff).
        Vector err = sub(a * c, b);
        for (std::size_t j = 0; j < r; ++j) {
            double uj_e = 0.0;
            for (std::size_t i = 0; i < a.rows(); ++i) uj_e += dec.u(i, j) * err[i];
            const double coef = uj_e / dec.singular_values[j];
            for (std::size_t i = 0; i < k; ++i) c[i] -= coef * dec.v(i, j);
        }
    }

    for (double& x : c)
        if (x < 0.0) x = 0.0;
    double cmin = std::numeric_limits<double>::infinity();
    for (double x : c) cmin = std::min(cmin, x);
    return MaxMinResult{c, cmin, norm2(sub(a * c, b))};
}

} // namespace fframe
