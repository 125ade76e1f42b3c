// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <cstddef>
#include <random>
#include <vector>

#include "fframe/decomposition.hpp"
#include "fframe/errors.hpp"
#include "fframe/fusion_frame.hpp"
#include "fframe/matrix.hpp"
#include "fframe/subspace.hpp"

namespace fframe {

/// Seeded generator with hand-rolled uniform/gaussian draws so streams are
/// identical across standard-library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { // [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    std::uint64_t raw() { return eng_(); }

    std::size_t uniform_index(std::size_t count) {
        return static_cast<std::size_t>(raw() % count);
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

inline Matrix random_gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.gaussian();
    return m;
}

inline Matrix random_orthogonal(std::size_t n, Rng& rng, double rank_tol = 1e-10) {
    while (true) {
        const Matrix g = random_gaussian_matrix(n, n, rng);
        std::vector<Vector> cols;
        for (std::size_t j = 0; j < n; ++j) cols.push_back(g.column(j));
        const Matrix q = orthonormalize(cols, rank_tol);
        if (q.cols() == n) return q;
    }
}

inline Subspace random_subspace(std::size_t n, std::size_t d, Rng& rng,
                                double rank_tol = 1e-10) {
    while (true) {
        const Matrix g = random_gaussian_matrix(n, d, rng);
        std::vector<Vector> cols;
        for (std::size_t j = 0; j < d; ++j) cols.push_back(g.column(j));
        const Matrix q = orthonormalize(cols, rank_tol);
        if (q.cols() == d) return Subspace(n, q);
    }
}

inline Vector random_unit_vector(std::size_t n, Rng& rng) {
    while (true) {
        Vector v(n);
        for (double& x : v) x = rng.gaussian();
        const double nv = norm2(v);
        if (nv > 1e-6) return scaled(v, 1.0 / nv);
    }
}

/// Orthogonal decomposition of H_n into subspaces of the given dimensions
/// (Σ dims must equal n), rotated by a random orthogonal map.
inline std::vector<Subspace> random_orthogonal_split(std::size_t n,
                                                     const std::vector<std::size_t>& dims,
                                                     Rng& rng) {
    std::size_t total = 0;
    for (std::size_t d : dims) total += d;
    if (total != n)
        throw InvalidSpecError("random_orthogonal_split: dimensions must sum to the ambient");
    const Matrix u = random_orthogonal(n, rng);
    std::vector<Subspace> out;
    std::size_t off = 0;
    for (std::size_t d : dims) {
        out.emplace_back(n, u.columns(off, d));
        off += d;
    }
    return out;
}

/// Fusion Riesz basis with the given dimension split (Σ dims = n). The
/// non-orthogonal variant rejection-samples until the family is a Riesz
/// basis whose subspaces are pairwise clearly non-orthogonal, keeping the
/// orthogonality flag far from the decision threshold.
inline std::vector<Subspace> random_riesz_subspaces(std::size_t n,
                                                    const std::vector<std::size_t>& dims,
                                                    bool orthogonal, Rng& rng,
                                                    double rank_tol = 1e-10) {
    std::size_t total = 0;
    for (std::size_t d : dims) total += d;
    if (total != n)
        throw InvalidSpecError("random_riesz_subspaces: dimensions must sum to the ambient");
    if (orthogonal) return random_orthogonal_split(n, dims, rng);

    for (int attempt = 0; attempt < 256; ++attempt) {
        std::vector<Subspace> subs;
        for (std::size_t d : dims) subs.push_back(random_subspace(n, d, rng, rank_tol));

        std::vector<Matrix> blocks;
        for (const Subspace& s : subs) blocks.push_back(s.basis());
        if (numerical_rank(Matrix::hcat(blocks), rank_tol) != n) continue;

        bool separated = dims.size() > 1;
        double min_defect = 1e9;
        for (std::size_t i = 0; i < subs.size(); ++i)
            for (std::size_t j = i + 1; j < subs.size(); ++j)
                min_defect = std::min(min_defect, orthogonality_defect(subs[i], subs[j]));
        if (separated && min_defect < 1e-3) continue;
        return subs;
    }
    throw Error("random_riesz_subspaces: rejection sampling failed");
}

inline FusionFrame random_fusion_frame(std::size_t n, const std::vector<std::size_t>& dims,
                                       Rng& rng, bool unit_weights = true) {
    std::vector<WeightedSubspace> items;
    for (std::size_t d : dims) {
        const double w = unit_weights ? 1.0 : 0.25 + 2.0 * rng.uniform();
        items.push_back({random_subspace(n, d, rng), w});
    }
    return FusionFrame(std::move(items));
}

inline Vector random_positive_weights(std::size_t count, Rng& rng) {
    Vector w(count);
    for (double& x : w) x = 0.25 + 2.0 * rng.uniform();
    return w;
}

} // namespace fframe
