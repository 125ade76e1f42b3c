// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fframe/errors.hpp"
#include "fframe/excess_decomposition.hpp"
#include "fframe/fusion_frame.hpp"
#include "fframe/matrix.hpp"
#include "fframe/subspace.hpp"

namespace fframe {

struct Fixture {
    FusionFrame frame;
    std::optional<ExcessDecomposition> decomposition;
    std::string label;
};

using FixtureParams = std::map<std::string, double>;

namespace detail {

inline Vector unit(std::size_t n, std::size_t i) {
    Vector v(n, 0.0);
    v.at(i) = 1.0;
    return v;
}

inline double param(const FixtureParams& p, const std::string& key, double fallback) {
    const auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

inline std::size_t int_param(const FixtureParams& p, const std::string& key,
                             std::size_t fallback) {
    const auto it = p.find(key);
    if (it == p.end()) return fallback;
    if (it->second < 0.0 || it->second != std::floor(it->second))
        throw ParameterOutOfRangeError("fixture: parameter " + key +
                                       " must be a nonnegative integer");
    return static_cast<std::size_t>(it->second);
}

inline void reject_unknown(const FixtureParams& p, std::initializer_list<const char*> known) {
    for (const auto& [key, value] : p) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok) throw ParameterOutOfRangeError("fixture: unknown parameter " + key);
    }
}

} // namespace detail

/// Two-member fusion Riesz basis of H_3: span{u} plus the e2-e3 plane.
inline Fixture make_riesz_u(const FixtureParams& p) {
    detail::reject_unknown(p, {"u1", "u2", "u3", "w1", "w2"});
    Vector u{detail::param(p, "u1", 1.0), detail::param(p, "u2", 0.0),
             detail::param(p, "u3", 0.0)};
    const double nu = norm2(u);
    if (nu <= 0.0 || std::abs(u[0]) <= 1e-12)
        throw ParameterOutOfRangeError("riesz_u: u must be nonzero with u1 != 0");
    u = scaled(u, 1.0 / nu);
    const double w1 = detail::param(p, "w1", 1.0), w2 = detail::param(p, "w2", 1.0);
    if (!(w1 > 0.0) || !(w2 > 0.0))
        throw ParameterOutOfRangeError("riesz_u: weights must be positive");
    std::vector<WeightedSubspace> items;
    items.push_back({Subspace::line(u), w1});
    items.push_back({Subspace::coordinate_span(3, {1, 2}), w2});
    return Fixture{FusionFrame(std::move(items)), std::nullopt,
                   "riesz_u: span{u} with the e2-e3 plane in H_3"};
}

/// One-excess frame in H_n (n >= 4): a standalone excess line against a
/// deliberately non-orthogonal Riesz basis; strictly scalable for
/// 0 < alpha < sqrt(2)/2 with closed-form weights.
inline Fixture make_one_excess_alpha(const FixtureParams& p) {
    detail::reject_unknown(p, {"alpha", "n"});
    const double alpha = detail::param(p, "alpha", 0.5);
    const std::size_t n = detail::int_param(p, "n", 4);
    if (!(alpha > 0.0) || !(alpha < std::sqrt(2.0) / 2.0))
        throw ParameterOutOfRangeError("one_excess_alpha: alpha must lie in (0, sqrt(2)/2)");
    if (n < 4) throw ParameterOutOfRangeError("one_excess_alpha: n must be at least 4");

    const double root = std::sqrt(1.0 - alpha * alpha);
    Vector x(n, 0.0);
    x[0] = alpha;
    x[1] = -root;

    std::vector<WeightedSubspace> items;
    items.push_back({Subspace::line(x), 1.0});                     // V0
    items.push_back({Subspace::coordinate_span(n, {0}), 1.0});     // W1
    items.push_back({Subspace::line(add(detail::unit(n, 0), detail::unit(n, 1))), 1.0}); // W2
    std::vector<std::size_t> tail;
    for (std::size_t i = 2; i < n; ++i) tail.push_back(i);
    items.push_back({Subspace::coordinate_span(n, tail), 1.0});    // W3

    ExcessDecomposition dec;
    dec.riesz_items = {1, 2, 3};
    ExcessSpecDecl spec;
    spec.vector = x;
    Vector comp1(n, 0.0);
    comp1[0] = alpha + root;
    Vector comp2(n, 0.0);
    comp2[0] = -root;
    comp2[1] = -root;
    spec.components = {{1, comp1}, {2, comp2}};
    dec.specs = {spec};

    return Fixture{FusionFrame(std::move(items)), dec,
                   "one_excess_alpha: standalone excess line over a non-orthogonal Riesz basis"};
}

/// One-excess frame in H_4 with a parameterized excess line and a Riesz
/// basis that is orthogonal exactly when beta = 0.
inline Fixture make_h4_beta(const FixtureParams& p) {
    detail::reject_unknown(p, {"a1", "a2", "a3", "a4", "beta"});
    const double a1 = detail::param(p, "a1", 0.0), a2 = detail::param(p, "a2", 0.0);
    const double a3 = detail::param(p, "a3", 1.0), a4 = detail::param(p, "a4", 0.0);
    const double beta = detail::param(p, "beta", 0.0);
    Vector x{a1, a2, a3, a4};
    if (norm2(x) <= 1e-12)
        throw ParameterOutOfRangeError("h4_beta: excess vector must be nonzero");

    Vector w2_dir{beta, 0.0, 1.0, 0.0};
    std::vector<WeightedSubspace> items;
    items.push_back({Subspace::line(x), 1.0});                  // V0
    items.push_back({Subspace::coordinate_span(4, {0, 1}), 1.0}); // W1
    items.push_back({Subspace::line(w2_dir), 1.0});             // W2
    items.push_back({Subspace::coordinate_span(4, {3}), 1.0});  // W3

    ExcessDecomposition dec;
    dec.riesz_items = {1, 2, 3};
    ExcessSpecDecl spec;
    spec.vector = x;
    spec.components = {{1, Vector{a1 - a3 * beta, a2, 0.0, 0.0}},
                       {2, Vector{a3 * beta, 0.0, a3, 0.0}},
                       {3, Vector{0.0, 0.0, 0.0, a4}}};
    dec.specs = {spec};

    return Fixture{FusionFrame(std::move(items)), dec,
                   "h4_beta: standalone excess line in H_4; Riesz part orthogonal iff beta = 0"};
}

/// Two-excess frame of H_3 made of the duplicated e1-e2 plane and span{e3}.
inline Fixture make_two_excess_h3(const FixtureParams& p) {
    detail::reject_unknown(p, {});
    std::vector<WeightedSubspace> items;
    items.push_back({Subspace::coordinate_span(3, {0, 1}), 1.0});
    items.push_back({Subspace::coordinate_span(3, {0, 1}), 1.0});
    items.push_back({Subspace::coordinate_span(3, {2}), 1.0});

    ExcessDecomposition dec;
    dec.riesz_items = {2};
    ExcessSpecDecl sx, sy;
    sx.host = 0;
    sx.vector = detail::unit(3, 1);
    sx.components = {{1, detail::unit(3, 1)}};
    sy.host = 1;
    sy.vector = detail::unit(3, 0);
    sy.components = {{0, detail::unit(3, 0)}};
    dec.specs = {sx, sy};

    return Fixture{FusionFrame(std::move(items)), dec,
                   "two_excess_h3: duplicated plane plus an axis in H_3"};
}

/// Two-excess frame of H_4 whose four members all scale by sqrt(2/3).
inline Fixture make_two_excess_h4(const FixtureParams& p) {
    detail::reject_unknown(p, {});
    const double h = 0.5, s = std::sqrt(3.0) / 2.0;
    const Vector x{0.0, h, 0.0, s};
    const Vector y{h, 0.0, s, 0.0};
    const Vector w3{0.0, h, 0.0, -s};
    const Vector w4{h, 0.0, -s, 0.0};

    std::vector<WeightedSubspace> items;
    items.push_back({Subspace::from_span({detail::unit(4, 0), x}), 1.0}); // V1
    items.push_back({Subspace::from_span({detail::unit(4, 1), y}), 1.0}); // V2
    items.push_back({Subspace::line(w3), 1.0});
    items.push_back({Subspace::line(w4), 1.0});

    ExcessDecomposition dec;
    dec.riesz_items = {2, 3};
    ExcessSpecDecl sx, sy;
    sx.host = 0;
    sx.vector = x;
    sx.components = {{1, detail::unit(4, 1)}, {2, scaled(w3, -1.0)}};
    sy.host = 1;
    sy.vector = y;
    sy.components = {{0, detail::unit(4, 0)}, {3, scaled(w4, -1.0)}};
    dec.specs = {sx, sy};

    return Fixture{FusionFrame(std::move(items)), dec,
                   "two_excess_h4: two hosted excess lines with uniform scaling sqrt(2/3)"};
}

/// Two-excess frame of H_3 with an orthogonal Riesz part that nevertheless
/// admits no strictly positive scaling.
inline Fixture make_nonscalable_h3(const FixtureParams& p) {
    detail::reject_unknown(p, {});
    std::vector<WeightedSubspace> items;
    items.push_back({Subspace::coordinate_span(3, {0, 1}), 1.0});
    items.push_back({Subspace::coordinate_span(3, {1, 2}), 1.0});
    items.push_back({Subspace::coordinate_span(3, {2}), 1.0});

    ExcessDecomposition dec;
    dec.riesz_items = {2};
    ExcessSpecDecl sx, sy;
    sx.host = 0;
    sx.vector = detail::unit(3, 1);
    sx.components = {{1, detail::unit(3, 1)}};
    sy.host = 1;
    sy.vector = detail::unit(3, 2);
    sy.components = {{2, detail::unit(3, 2)}};
    dec.specs = {sx, sy};

    return Fixture{FusionFrame(std::move(items)), dec,
                   "nonscalable_h3: chained planes whose scaling forces a zero weight"};
}

/// Two-excess frame of H_7 with separated excess supports; never
/// weight-scalable for admissible parameters.
inline Fixture make_big_h7(const FixtureParams& p) {
    detail::reject_unknown(p, {"a1", "a2", "a3", "a4", "a5", "a6", "a7", "beta"});
    const double a1 = detail::param(p, "a1", 1.0), a2 = detail::param(p, "a2", 1.0);
    const double a3 = detail::param(p, "a3", 1.0), a4 = detail::param(p, "a4", 1.0);
    const double a5 = detail::param(p, "a5", 1.0), a6 = detail::param(p, "a6", 1.0);
    const double a7 = detail::param(p, "a7", 1.0);
    const double beta = detail::param(p, "beta", 1.0);
    if (std::abs(a4) <= 1e-12 || std::abs(a6) <= 1e-12)
        throw ParameterOutOfRangeError("big_h7: a4 and a6 must be nonzero");

    const std::size_t n = 7;
    Vector y(n, 0.0);
    y[0] = a1 + beta * a3;
    y[1] = a2;
    y[3] = beta * a4;
    y[5] = a7;
    if (norm2(y) <= 1e-12)
        throw ParameterOutOfRangeError("big_h7: second excess vector must be nonzero");

    Vector dir14(n, 0.0);
    dir14[0] = a3;
    dir14[3] = a4;
    Vector dir25(n, 0.0);
    dir25[1] = a5;
    dir25[4] = a6;

    std::vector<WeightedSubspace> items;
    items.push_back({Subspace::coordinate_span(n, {0, 1, 2}), 1.0});               // V1
    items.push_back({Subspace::from_span({detail::unit(n, 2), y}), 1.0});          // V2
    items.push_back({Subspace::from_span({dir14, dir25, detail::unit(n, 5)}), 1.0}); // V3
    items.push_back({Subspace::coordinate_span(n, {6}), 1.0});                     // V4

    ExcessDecomposition dec;
    dec.riesz_items = {2, 3};
    ExcessSpecDecl sx, sy;
    sx.host = 0;
    sx.vector = detail::unit(n, 2);
    sx.components = {{1, detail::unit(n, 2)}};
    sy.host = 1;
    sy.vector = y;
    Vector y3(n, 0.0);
    y3[0] = beta * a3;
    y3[3] = beta * a4;
    y3[5] = a7;
    Vector y1(n, 0.0);
    y1[0] = a1;
    y1[1] = a2;
    sy.components = {{0, y1}, {2, y3}};
    dec.specs = {sx, sy};

    return Fixture{FusionFrame(std::move(items)), dec,
                   "big_h7: two hosted excess lines with separated supports in H_7"};
}

/// Finite truncation (radius m) of the pair of half-axis spans overlapping
/// in a single shared axis; 1-excess and never strictly scalable.
inline Fixture make_shift_trunc(const FixtureParams& p) {
    detail::reject_unknown(p, {"m"});
    const std::size_t m = detail::int_param(p, "m", 2);
    if (m < 1) throw ParameterOutOfRangeError("shift_trunc: m must be at least 1");
    const std::size_t n = 2 * m + 1; // coordinate i stands for axis index i - m

    std::vector<std::size_t> upper, lower;
    for (std::size_t i = m; i < n; ++i) upper.push_back(i);
    for (std::size_t i = 0; i <= m; ++i) lower.push_back(i);

    std::vector<WeightedSubspace> items;
    items.push_back({Subspace::coordinate_span(n, upper), 1.0});
    items.push_back({Subspace::coordinate_span(n, lower), 1.0});

    ExcessDecomposition dec;
    dec.riesz_items = {1};
    ExcessSpecDecl spec;
    spec.host = 0;
    spec.vector = detail::unit(n, m); // the shared axis
    spec.components = {{1, detail::unit(n, m)}};
    dec.specs = {spec};

    return Fixture{FusionFrame(std::move(items)), dec,
                   "shift_trunc: truncation radius m=" + std::to_string(m) +
                       " of two half-axis spans sharing one axis"};
}

/// Finite truncation of the swap-structure dual pair: two spans extended
/// across each other by n+1 and m axes. Excess is n+m+1; strictly scalable
/// only in the full-swap truncation (radius = n = m).
inline Fixture make_zdual_trunc(const FixtureParams& p) {
    detail::reject_unknown(p, {"n", "m", "radius"});
    const std::size_t nn = detail::int_param(p, "n", 2);
    const std::size_t mm = detail::int_param(p, "m", 2);
    const std::size_t radius = detail::int_param(p, "radius", std::max(nn, mm) + 2);
    if (nn < 1 || mm < 1)
        throw ParameterOutOfRangeError("zdual_trunc: n and m must be at least 1");
    if (radius < std::max(nn, mm))
        throw ParameterOutOfRangeError("zdual_trunc: radius must cover n and m");
    const std::size_t dim = 2 * radius + 1; // coordinate i stands for axis i - radius

    std::vector<std::size_t> z1, z2;
    for (std::size_t i = radius - nn; i < dim; ++i) z1.push_back(i);
    for (std::size_t i = 0; i <= radius + mm; ++i) z2.push_back(i);

    std::vector<WeightedSubspace> items;
    items.push_back({Subspace::coordinate_span(dim, z1), 1.0});
    items.push_back({Subspace::coordinate_span(dim, z2), 1.0});

    ExcessDecomposition dec;
    ExcessSpecDecl spec;
    for (std::size_t i = radius - nn; i <= radius; ++i) {
        spec = ExcessSpecDecl{};
        spec.host = 0;
        spec.vector = detail::unit(dim, i);
        spec.components = {{1, detail::unit(dim, i)}};
        dec.specs.push_back(spec);
    }
    for (std::size_t i = radius + 1; i <= radius + mm; ++i) {
        spec = ExcessSpecDecl{};
        spec.host = 1;
        spec.vector = detail::unit(dim, i);
        spec.components = {{0, detail::unit(dim, i)}};
        dec.specs.push_back(spec);
    }

    return Fixture{FusionFrame(std::move(items)), dec,
                   "zdual_trunc: radius-" + std::to_string(radius) +
                       " truncation of the swapped half-axis pair (n=" + std::to_string(nn) +
                       ", m=" + std::to_string(mm) + ")"};
}

/// Three lines of H_2 at mutual angles of 120 degrees.
inline Fixture make_mercedes_benz(const FixtureParams& p) {
    detail::reject_unknown(p, {});
    const double s = std::sqrt(3.0) / 2.0;
    const Vector v1{0.0, 1.0}, v2{-s, -0.5}, v3{s, -0.5};
    std::vector<WeightedSubspace> items;
    items.push_back({Subspace::line(v1), 1.0});
    items.push_back({Subspace::line(v2), 1.0});
    items.push_back({Subspace::line(v3), 1.0});

    ExcessDecomposition dec;
    dec.riesz_items = {0, 1};
    ExcessSpecDecl spec;
    spec.vector = v3;
    spec.components = {{0, scaled(v1, -1.0)}, {1, scaled(v2, -1.0)}};
    dec.specs = {spec};

    return Fixture{FusionFrame(std::move(items)), dec,
                   "mercedes_benz: three lines of H_2 at mutual angle 120 degrees"};
}

/// H_2 frame repeating one line n extra times next to a second member that
/// is orthogonal (or deliberately slanted when orthogonal=0).
inline Fixture make_repeated_subspace(const FixtureParams& p) {
    detail::reject_unknown(p, {"n", "orthogonal"});
    const std::size_t n = detail::int_param(p, "n", 2);
    const bool orthogonal = detail::param(p, "orthogonal", 1.0) != 0.0;
    if (n < 1) throw ParameterOutOfRangeError("repeated_subspace: n must be at least 1");

    std::vector<WeightedSubspace> items;
    for (std::size_t i = 0; i <= n; ++i)
        items.push_back({Subspace::coordinate_span(2, {0}), 1.0});
    items.push_back({orthogonal ? Subspace::coordinate_span(2, {1})
                                : Subspace::line(Vector{1.0, 1.0}),
                     1.0});

    ExcessDecomposition dec;
    dec.riesz_items = {0, n + 1};
    for (std::size_t i = 1; i <= n; ++i) {
        ExcessSpecDecl spec;
        spec.vector = detail::unit(2, 0);
        spec.components = {{0, detail::unit(2, 0)}};
        dec.specs.push_back(spec);
    }

    return Fixture{FusionFrame(std::move(items)), dec,
                   "repeated_subspace: one line repeated " + std::to_string(n) +
                       " extra times in H_2"};
}

/// H_9 truncation of the 2-tight swap construction: two 6-dimensional
/// containers over a 3-member orthogonal split, plus the tail block.
inline Fixture make_tight2_h9(const FixtureParams& p) {
    detail::reject_unknown(p, {});
    const std::size_t n = 9;
    const double r = std::sqrt(0.5);
    auto plus = [&](std::size_t a, std::size_t b) {
        Vector v(n, 0.0);
        v[a] = r;
        v[b] = r;
        return v;
    };
    auto minus = [&](std::size_t a, std::size_t b) {
        Vector v(n, 0.0);
        v[a] = r;
        v[b] = -r;
        return v;
    };

    const std::vector<Vector> v1_extra{detail::unit(n, 1), detail::unit(n, 2), plus(3, 4),
                                       plus(5, 6), plus(7, 8)};
    const std::vector<Vector> v2_extra{detail::unit(n, 0), minus(3, 4), minus(5, 6),
                                       minus(7, 8)};

    std::vector<Vector> v1_basis{detail::unit(n, 0)};
    v1_basis.insert(v1_basis.end(), v1_extra.begin(), v1_extra.end());
    std::vector<Vector> v2_basis{detail::unit(n, 1), detail::unit(n, 2)};
    v2_basis.insert(v2_basis.end(), v2_extra.begin(), v2_extra.end());

    std::vector<WeightedSubspace> items;
    items.push_back({Subspace::from_span(v1_basis), 1.0});
    items.push_back({Subspace::from_span(v2_basis), 1.0});
    std::vector<std::size_t> tail;
    for (std::size_t i = 3; i < n; ++i) tail.push_back(i);
    items.push_back({Subspace::coordinate_span(n, tail), 1.0});

    ExcessDecomposition dec;
    dec.riesz_items = {2};
    for (const Vector& x : v1_extra) {
        ExcessSpecDecl spec;
        spec.host = 0;
        spec.vector = x;
        const bool in_w2 = std::abs(x[1]) + std::abs(x[2]) > 0.5;
        spec.components = {{in_w2 ? std::size_t{1} : std::size_t{2}, x}};
        dec.specs.push_back(spec);
    }
    for (const Vector& x : v2_extra) {
        ExcessSpecDecl spec;
        spec.host = 1;
        spec.vector = x;
        const bool in_w1 = std::abs(x[0]) > 0.5;
        spec.components = {{in_w1 ? std::size_t{0} : std::size_t{2}, x}};
        dec.specs.push_back(spec);
    }

    return Fixture{FusionFrame(std::move(items)), dec,
                   "tight2_h9: radius-9 truncation of the 2-tight double-container split"};
}

/// All excess directions adjoined to a single host container; the scaling
/// system is residual-infeasible.
inline Fixture make_single_host_excess(const FixtureParams& p) {
    detail::reject_unknown(p, {});
    const std::size_t n = 4;
    const double r = std::sqrt(0.5);
    const Vector x{0.0, r, r, 0.0};
    const Vector y{0.0, 0.0, r, r};

    std::vector<Vector> v1_basis{detail::unit(n, 0), x, y};
    std::vector<WeightedSubspace> items;
    items.push_back({Subspace::from_span(v1_basis), 1.0});
    items.push_back({Subspace::coordinate_span(n, {1}), 1.0});
    items.push_back({Subspace::coordinate_span(n, {2}), 1.0});
    items.push_back({Subspace::coordinate_span(n, {3}), 1.0});

    ExcessDecomposition dec;
    dec.riesz_items = {1, 2, 3};
    ExcessSpecDecl sx, sy;
    sx.host = 0;
    sx.vector = x;
    sx.components = {{1, Vector{0.0, r, 0.0, 0.0}}, {2, Vector{0.0, 0.0, r, 0.0}}};
    sy.host = 0;
    sy.vector = y;
    sy.components = {{2, Vector{0.0, 0.0, r, 0.0}}, {3, Vector{0.0, 0.0, 0.0, r}}};
    dec.specs = {sx, sy};

    return Fixture{FusionFrame(std::move(items)), dec,
                   "single_host_excess: two excess directions adjoined to one container in H_4"};
}

inline Fixture make_fixture(const std::string& name, const FixtureParams& params = {}) {
    if (name == "riesz_u") return make_riesz_u(params);
    if (name == "one_excess_alpha") return make_one_excess_alpha(params);
    if (name == "h4_beta") return make_h4_beta(params);
    if (name == "two_excess_h3") return make_two_excess_h3(params);
    if (name == "two_excess_h4") return make_two_excess_h4(params);
    if (name == "nonscalable_h3") return make_nonscalable_h3(params);
    if (name == "big_h7") return make_big_h7(params);
    if (name == "shift_trunc") return make_shift_trunc(params);
    if (name == "zdual_trunc") return make_zdual_trunc(params);
    if (name == "mercedes_benz") return make_mercedes_benz(params);
    if (name == "repeated_subspace") return make_repeated_subspace(params);
    if (name == "tight2_h9") return make_tight2_h9(params);
    if (name == "single_host_excess") return make_single_host_excess(params);
    throw UnknownExampleError("unknown example: " + name);
}

inline std::vector<std::string> fixture_names() {
    return {"riesz_u",        "one_excess_alpha", "h4_beta",        "two_excess_h3",
            "two_excess_h4",  "nonscalable_h3",   "big_h7",         "shift_trunc",
            "zdual_trunc",    "mercedes_benz",    "repeated_subspace", "tight2_h9",
            "single_host_excess"};
}

} // namespace fframe
