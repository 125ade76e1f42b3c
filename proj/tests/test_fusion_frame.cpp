#include <doctest.h>

#include <cmath>

#include "fframe/fixtures.hpp"
#include "fframe/fusion_frame.hpp"
#include "fframe/generate.hpp"

using namespace fframe;

namespace {

FusionFrame orthonormal_decomposition(std::size_t n) {
    std::vector<WeightedSubspace> items;
    for (std::size_t i = 0; i < n; ++i)
        items.push_back({Subspace::coordinate_span(n, {i}), 1.0});
    return FusionFrame(std::move(items));
}

FusionFrame riesz_u_frame(const Vector& u, double w1, double w2) {
    std::vector<WeightedSubspace> items;
    items.push_back({Subspace::line(u), w1});
    items.push_back({Subspace::coordinate_span(3, {1, 2}), w2});
    return FusionFrame(std::move(items));
}

} // namespace

TEST_CASE("fusion frame construction rules") {
    CHECK_THROWS_AS(FusionFrame({}), EmptyInputError);
    CHECK_THROWS_AS(FusionFrame({{Subspace::coordinate_span(2, {0}), 0.0}}),
                    NonpositiveWeightError);
    CHECK_THROWS_AS(FusionFrame({{Subspace::coordinate_span(2, {0}), 1.0},
                                 {Subspace::coordinate_span(3, {0}), 1.0}}),
                    DimensionMismatchError);
    // duplicate subspaces are allowed
    CHECK(FusionFrame({{Subspace::coordinate_span(2, {0}), 1.0},
                       {Subspace::coordinate_span(2, {0}), 2.0}})
              .size() == 2);
}

TEST_CASE("frame_operator on frozen cases") {
    CHECK((frame_operator(orthonormal_decomposition(2)) - Matrix::identity(2))
              .frobenius_norm() <= 1e-14);

    // span{u} with the e2-e3 plane: entries w1²u_iu_j with w2² added on the
    // trailing diagonal.
    const double w1 = 1.5, w2 = 0.7;
    const Vector u{0.6, 0.8, 0.0};
    const Matrix s = frame_operator(riesz_u_frame(u, w1, w2));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            double expected = w1 * w1 * u[i] * u[j];
            if (i == j && i >= 1) expected += w2 * w2;
            CHECK(s(i, j) == doctest::Approx(expected).epsilon(1e-12));
        }

    const Matrix mb = frame_operator(make_fixture("mercedes_benz").frame);
    CHECK((mb - Matrix::identity(2).scaled(1.5)).frobenius_norm() <= 1e-12);
}

TEST_CASE("frame_bounds on frozen cases") {
    const auto [a1, b1] = frame_bounds(orthonormal_decomposition(3));
    CHECK(a1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b1 == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<WeightedSubspace> items;
    items.push_back({Subspace::coordinate_span(2, {0}), 1.0});
    items.push_back({Subspace::coordinate_span(2, {0}), 1.0});
    items.push_back({Subspace::coordinate_span(2, {1}), 1.0});
    const auto [a2, b2] = frame_bounds(FusionFrame(std::move(items)));
    CHECK(a2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b2 == doctest::Approx(2.0).epsilon(1e-12));

    // independent route: sum the projectors of two_excess_h4 directly
    const FusionFrame h4 = make_fixture("two_excess_h4").frame;
    Matrix direct(4, 4);
    for (const auto& it : h4.items()) direct = direct + it.subspace.projector();
    const SymmetricEig eig = symmetric_eig(direct);
    const auto [a3, b3] = frame_bounds(h4);
    CHECK(a3 == doctest::Approx(eig.values.front()).epsilon(1e-12));
    CHECK(b3 == doctest::Approx(eig.values.back()).epsilon(1e-12));
    CHECK(a3 == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(b3 == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("synthesis_matrix") {
    std::vector<WeightedSubspace> single{{Subspace::coordinate_span(3, {0}), 2.0}};
    const Matrix t = synthesis_matrix(FusionFrame(std::move(single)));
    CHECK(t.cols() == 1);
    CHECK(t(0, 0) == doctest::Approx(2.0));
    CHECK(t(1, 0) == 0.0);

    const FusionFrame h3 = make_fixture("two_excess_h3").frame;
    const Matrix synth = synthesis_matrix(h3);
    CHECK(synth.rows() == 3);
    CHECK(synth.cols() == 5);
    CHECK((synth * synth.transpose() - frame_operator(h3)).frobenius_norm() <= 1e-10);
}

TEST_CASE("synthesis identity and local-global bounds on random frames") {
    Rng rng(404);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 2 + rng.uniform_index(5);
        std::vector<std::size_t> dims;
        const std::size_t count = 1 + rng.uniform_index(4);
        for (std::size_t i = 0; i < count; ++i) dims.push_back(1 + rng.uniform_index(n));
        const FusionFrame f = random_fusion_frame(n, dims, rng, false);
        const Matrix t = synthesis_matrix(f);
        CHECK((t * t.transpose() - frame_operator(f)).frobenius_norm() <= 1e-10);

        // flattening the local orthonormal bases reproduces the bounds
        const SymmetricEig eig = symmetric_eig(t * t.transpose());
        const auto [a, b] = frame_bounds(f);
        CHECK(a == doctest::Approx(std::max(0.0, eig.values.front())).epsilon(1e-9));
        CHECK(b == doctest::Approx(eig.values.back()).epsilon(1e-9));
    }
}

TEST_CASE("excess on frozen cases") {
    CHECK(excess(orthonormal_decomposition(4)).excess == 0);
    CHECK(excess(make_fixture("two_excess_h3").frame).excess == 2);
    for (std::size_t m : {std::size_t{1}, std::size_t{2}, std::size_t{5}}) {
        const FusionFrame f =
            make_fixture("shift_trunc", {{"m", static_cast<double>(m)}}).frame;
        CHECK(excess(f).excess == 1);
    }

    const ExcessResult r = excess(make_fixture("two_excess_h3").frame);
    CHECK(r.kernel_basis.cols() == 2);
    const Matrix synth = synthesis_matrix(make_fixture("two_excess_h3").frame);
    CHECK((synth * r.kernel_basis).frobenius_norm() <= 1e-10);
}

TEST_CASE("excess additivity across orthogonal blocks") {
    Rng rng(17);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n1 = 2 + rng.uniform_index(3), n2 = 2 + rng.uniform_index(3);
        std::vector<std::size_t> d1{1 + rng.uniform_index(n1), 1 + rng.uniform_index(n1)};
        std::vector<std::size_t> d2{1 + rng.uniform_index(n2), 1 + rng.uniform_index(n2)};
        const FusionFrame f1 = random_fusion_frame(n1, d1, rng);
        const FusionFrame f2 = random_fusion_frame(n2, d2, rng);

        std::vector<WeightedSubspace> merged;
        for (const auto& it : f1.items()) {
            Matrix big(n1 + n2, it.subspace.dim());
            for (std::size_t i = 0; i < n1; ++i)
                for (std::size_t j = 0; j < it.subspace.dim(); ++j)
                    big(i, j) = it.subspace.basis()(i, j);
            merged.push_back({Subspace(n1 + n2, big), it.weight});
        }
        for (const auto& it : f2.items()) {
            Matrix big(n1 + n2, it.subspace.dim());
            for (std::size_t i = 0; i < n2; ++i)
                for (std::size_t j = 0; j < it.subspace.dim(); ++j)
                    big(n1 + i, j) = it.subspace.basis()(i, j);
            merged.push_back({Subspace(n1 + n2, big), it.weight});
        }
        CHECK(excess(FusionFrame(std::move(merged))).excess ==
              excess(f1).excess + excess(f2).excess);
    }
}

TEST_CASE("classify on frozen cases") {
    const ToleranceConfig tol3 = ToleranceConfig::defaults(3);
    const FrameAnalysis ortho = classify(orthonormal_decomposition(3), tol3);
    CHECK(ortho.is_parseval);
    CHECK(ortho.is_tight);
    CHECK(ortho.is_riesz_basis);
    CHECK(ortho.is_orthogonal_family);
    CHECK(ortho.excess == 0);

    const FrameAnalysis riesz = classify(riesz_u_frame({1.0, 0.0, 0.0}, 1.0, 1.0), tol3);
    CHECK(riesz.is_riesz_basis);
    CHECK(riesz.is_orthogonal_family);
    CHECK(riesz.is_parseval);

    const FrameAnalysis slanted = classify(
        riesz_u_frame({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0}, 1.0, 1.0), tol3);
    CHECK(slanted.is_riesz_basis);
    CHECK_FALSE(slanted.is_orthogonal_family);
    CHECK_FALSE(slanted.is_parseval);

    // 2-tight truncation: A = B = 2 with unit weights, Parseval after
    // scaling every weight by sqrt(1/2).
    const FusionFrame t9 = make_fixture("tight2_h9").frame;
    const ToleranceConfig tol9 = ToleranceConfig::defaults(9);
    const FrameAnalysis unscaled = classify(t9, tol9);
    CHECK(unscaled.is_tight);
    CHECK_FALSE(unscaled.is_parseval);
    CHECK(unscaled.lower_bound == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(unscaled.upper_bound == doctest::Approx(2.0).epsilon(1e-10));

    const double r = std::sqrt(0.5);
    const FrameAnalysis scaled_frame = classify(t9.with_weights({r, r, r}), tol9);
    CHECK(scaled_frame.is_parseval);
    CHECK(scaled_frame.lower_bound == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("classification flags satisfy their implications on random frames") {
    Rng rng(88);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t n = 2 + rng.uniform_index(4);
        std::vector<std::size_t> dims;
        const std::size_t count = 1 + rng.uniform_index(3);
        for (std::size_t i = 0; i < count; ++i) dims.push_back(1 + rng.uniform_index(n));
        const FusionFrame f = random_fusion_frame(n, dims, rng, false);
        const FrameAnalysis a = classify(f, ToleranceConfig::defaults(n));
        CHECK(a.lower_bound <= a.upper_bound + 1e-12);
        if (a.is_parseval) CHECK(a.is_tight);
        if (a.is_tight) CHECK(a.is_frame);
        if (a.is_riesz_basis) CHECK(a.excess == 0);
    }
}

TEST_CASE("riesz_decompose") {
    const ToleranceConfig tol = ToleranceConfig::defaults(2);
    const FusionFrame ortho = orthonormal_decomposition(2);
    const auto parts = riesz_decompose(ortho, {1.0, 1.0}, tol);
    CHECK(norm2(sub(parts[0], {1.0, 0.0})) <= 1e-10);
    CHECK(norm2(sub(parts[1], {0.0, 1.0})) <= 1e-10);

    // span{e1} and span{e1+e2}: e2 = -e1 + (e1+e2)
    std::vector<WeightedSubspace> items;
    items.push_back({Subspace::coordinate_span(2, {0}), 1.0});
    items.push_back({Subspace::line({1.0, 1.0}), 1.0});
    const FusionFrame slanted(std::move(items));
    const auto parts2 = riesz_decompose(slanted, {0.0, 1.0}, tol);
    CHECK(norm2(sub(parts2[0], {-1.0, 0.0})) <= 1e-9);
    CHECK(norm2(sub(parts2[1], {1.0, 1.0})) <= 1e-9);
    CHECK(norm2(sub(add(parts2[0], parts2[1]), Vector{0.0, 1.0})) <= 1e-9);

    CHECK_THROWS_AS(riesz_decompose(make_fixture("two_excess_h3").frame, {1, 0, 0},
                                    ToleranceConfig::defaults(3)),
                    NotRieszBasisError);
}

TEST_CASE("riesz_decompose components lie in their subspaces on random bases") {
    Rng rng(123);
    for (int rep = 0; rep < 15; ++rep) {
        const std::size_t n = 2 + rng.uniform_index(4);
        std::vector<std::size_t> dims;
        std::size_t left = n;
        while (left > 0) {
            const std::size_t d = 1 + rng.uniform_index(left);
            dims.push_back(d);
            left -= d;
        }
        const auto subs = random_riesz_subspaces(n, dims, false, rng);
        std::vector<WeightedSubspace> items;
        for (const auto& s : subs) items.push_back({s, 0.5 + rng.uniform()});
        const FusionFrame f(std::move(items));
        const Vector v = random_unit_vector(n, rng);
        const auto parts = riesz_decompose(f, v, ToleranceConfig::defaults(n));
        Vector total(n, 0.0);
        for (std::size_t i = 0; i < parts.size(); ++i) {
            CHECK(f.item(i).subspace.contains(parts[i], 1e-7));
            total = add(total, parts[i]);
        }
        CHECK(norm2(sub(total, v)) <= 1e-8);
    }
}

TEST_CASE("canonical_dual") {
    const ToleranceConfig tol = ToleranceConfig::defaults(3);

    // Parseval input: dual equals the input subspace-wise.
    const FusionFrame ortho = orthonormal_decomposition(3);
    const FusionFrame dual_p = canonical_dual(ortho, tol);
    for (std::size_t i = 0; i < ortho.size(); ++i)
        CHECK(projector_distance(dual_p.item(i).subspace, ortho.item(i).subspace) <= 1e-9);

    // Tight frame: S = A·I preserves every span and weight.
    const FusionFrame mb = make_fixture("mercedes_benz").frame;
    const FusionFrame dual_mb = canonical_dual(mb, ToleranceConfig::defaults(2));
    for (std::size_t i = 0; i < mb.size(); ++i) {
        CHECK(projector_distance(dual_mb.item(i).subspace, mb.item(i).subspace) <= 1e-9);
        CHECK(dual_mb.item(i).weight == mb.item(i).weight);
    }

    // Slanted Riesz basis: dual subspaces are orthogonal to the other
    // original members.
    const double r = 1.0 / std::sqrt(2.0);
    const FusionFrame slanted = riesz_u_frame({r, r, 0.0}, 1.0, 1.0);
    const FusionFrame dual_s = canonical_dual(slanted, tol);
    for (std::size_t i = 0; i < slanted.size(); ++i)
        for (std::size_t j = 0; j < slanted.size(); ++j)
            if (i != j)
                CHECK(is_orthogonal_pair(dual_s.item(i).subspace, slanted.item(j).subspace,
                                         1e-8));

    CHECK_THROWS_AS(canonical_dual(FusionFrame({{Subspace::coordinate_span(2, {0}), 1.0}}),
                                   ToleranceConfig::defaults(2)),
                    NotAFrameError);
}

TEST_CASE("is_dual") {
    const ToleranceConfig tol2 = ToleranceConfig::defaults(2);
    const FusionFrame mb = make_fixture("mercedes_benz").frame;

    // a Parseval frame is its own dual
    const double g = std::sqrt(2.0 / 3.0);
    const FusionFrame parseval = mb.with_weights({g, g, g});
    const DualCheck self = is_dual(parseval, parseval, 1e-8, tol2);
    CHECK(self.is_dual);
    CHECK(self.residual <= 1e-10);

    Rng rng(55);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = 2 + rng.uniform_index(3);
        std::vector<std::size_t> dims{1 + rng.uniform_index(n), 1 + rng.uniform_index(n)};
        const FusionFrame f = random_fusion_frame(n, dims, rng, false);
        const ToleranceConfig tol = ToleranceConfig::defaults(n);
        if (!is_frame(f, tol)) continue;
        const DualCheck check = is_dual(canonical_dual(f, tol), f, 1e-8, tol);
        CHECK(check.is_dual);
    }

    CHECK_THROWS_AS(is_dual(mb, orthonormal_decomposition(2), 1e-8, tol2),
                    LengthMismatchError);
}

TEST_CASE("dual-subspace and operator identities agree on random Riesz bases") {
    Rng rng(909);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 2 + rng.uniform_index(4);
        std::vector<std::size_t> dims;
        std::size_t left = n;
        while (left > 0) {
            const std::size_t d = 1 + rng.uniform_index(left);
            dims.push_back(d);
            left -= d;
        }
        if (dims.size() < 2) continue;
        const bool orthogonal = rep % 2 == 0;
        const auto subs = random_riesz_subspaces(n, dims, orthogonal, rng);
        std::vector<WeightedSubspace> items;
        for (const auto& s : subs) items.push_back({s, 0.5 + rng.uniform()});
        const FusionFrame f(std::move(items));
        const ToleranceConfig tol = ToleranceConfig::defaults(n);

        CHECK(classify(f, tol).is_riesz_basis);
        const Matrix s_inv = inverse_frame_operator(f, tol);

        for (std::size_t i = 0; i < f.size(); ++i) {
            const Subspace dual_i = apply_operator(s_inv, f.item(i).subspace, tol.rank_tol);
            for (std::size_t j = 0; j < f.size(); ++j) {
                const Matrix pi = f.item(i).subspace.projector();
                const Matrix pj = f.item(j).subspace.projector();
                Matrix op = (pi * s_inv * pj).scaled(f.item(i).weight * f.item(i).weight);
                if (i == j) {
                    op = op - pj;
                } else {
                    CHECK(orthogonality_defect(dual_i, f.item(j).subspace) <= 1e-8);
                }
                CHECK(op.frobenius_norm() <= 1e-8);
            }
        }
    }
}

TEST_CASE("classification is unitarily invariant") {
    Rng rng(3030);
    for (int rep = 0; rep < 12; ++rep) {
        const std::size_t n = 2 + rng.uniform_index(4);
        std::vector<std::size_t> dims{1 + rng.uniform_index(n), 1 + rng.uniform_index(n)};
        const FusionFrame f = random_fusion_frame(n, dims, rng, false);
        const Matrix u = random_orthogonal(n, rng);
        const FusionFrame g = transform_frame(u, f);
        const ToleranceConfig tol = ToleranceConfig::defaults(n);
        const FrameAnalysis fa = classify(f, tol), ga = classify(g, tol);
        CHECK(fa.is_frame == ga.is_frame);
        CHECK(fa.is_tight == ga.is_tight);
        CHECK(fa.is_parseval == ga.is_parseval);
        CHECK(fa.is_riesz_basis == ga.is_riesz_basis);
        CHECK(fa.excess == ga.excess);
        CHECK(fa.lower_bound == doctest::Approx(ga.lower_bound).epsilon(1e-8));
        CHECK(fa.upper_bound == doctest::Approx(ga.upper_bound).epsilon(1e-8));
    }
}
