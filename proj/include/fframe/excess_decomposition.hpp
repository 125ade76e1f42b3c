// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fframe/errors.hpp"
#include "fframe/fusion_frame.hpp"
#include "fframe/matrix.hpp"
#include "fframe/subspace.hpp"
#include "fframe/tolerance.hpp"

namespace fframe {

struct ExcessComponentDecl {
    std::size_t item; // frame item carrying the Riesz member the component lives in
    Vector vector;
};

/// One declared excess vector. `host` names the frame item that contains it
/// as V = W ⊕ span{x}; a standalone vector is its own 1-dimensional frame
/// item (matched by span).
struct ExcessSpecDecl {
    std::optional<std::size_t> host;
    Vector vector;
    std::vector<ExcessComponentDecl> components;
};

/// A declared split of a fusion frame into a Riesz part and excess vectors.
/// Declarations are validated, never auto-discovered.
struct ExcessDecomposition {
    std::vector<std::size_t> riesz_items;
    std::vector<ExcessSpecDecl> specs;
};

/// Resolved view of a declared decomposition. `members` is the effective
/// Riesz family in ascending item order: the subspace of each pure Riesz
/// item, plus — for each host — the orthogonal complement of its excess
/// directions inside the container.
struct ValidatedDecomposition {
    struct Member {
        std::size_t item;
        Subspace subspace;
        bool from_host;
    };
    struct Spec {
        std::optional<std::size_t> host;            // container item
        std::optional<std::size_t> standalone_item; // matched span item
        Vector vector;                              // unit excess direction
        bool normalized_input = false;
        std::vector<Vector> components;             // aligned with members
        std::vector<std::size_t> support;           // member positions with ‖x_i‖ > tol
    };

    std::vector<Member> members;
    std::vector<Spec> specs;

    std::size_t member_position(std::size_t item) const {
        for (std::size_t p = 0; p < members.size(); ++p)
            if (members[p].item == item) return p;
        throw BadDecompositionError("decomposition: item is not a Riesz member");
    }

    /// The effective Riesz part as a fusion frame (host members keep the
    /// host item's weight).
    FusionFrame riesz_frame(const FusionFrame& f) const {
        std::vector<WeightedSubspace> items;
        items.reserve(members.size());
        for (const Member& m : members) items.push_back({m.subspace, f.item(m.item).weight});
        return FusionFrame(std::move(items));
    }
};

inline ValidatedDecomposition validate_decomposition(const FusionFrame& frame,
                                                     const ExcessDecomposition& dec,
                                                     const ToleranceConfig& tol) {
    const std::size_t count = frame.size();
    const std::size_t n = frame.ambient_dim();

    std::vector<int> role(count, 0); // 0 unassigned, 1 riesz, 2 host, 3 standalone excess
    if (dec.riesz_items.empty() && dec.specs.empty())
        throw BadDecompositionError("decomposition: empty declaration");
    for (std::size_t idx : dec.riesz_items) {
        if (idx >= count) throw BadDecompositionError("decomposition: riesz index out of range");
        if (role[idx] != 0) throw BadDecompositionError("decomposition: duplicate riesz index");
        role[idx] = 1;
    }
    for (const ExcessSpecDecl& spec : dec.specs) {
        if (spec.vector.size() != n)
            throw BadDecompositionError("decomposition: excess vector has wrong dimension");
        if (spec.host) {
            if (*spec.host >= count)
                throw BadDecompositionError("decomposition: host index out of range");
            if (role[*spec.host] == 1)
                throw BadDecompositionError("decomposition: host cannot also be a riesz item");
            if (role[*spec.host] == 3)
                throw BadDecompositionError("decomposition: host collides with a standalone item");
            role[*spec.host] = 2;
        }
    }

    ValidatedDecomposition out;
    out.specs.resize(dec.specs.size());

    // Resolve standalone excess vectors to their span items, in declaration
    // order, lowest candidate index first.
    for (std::size_t s = 0; s < dec.specs.size(); ++s) {
        const ExcessSpecDecl& spec = dec.specs[s];
        if (spec.host) continue;
        const double nv = norm2(spec.vector);
        if (nv <= tol.rank_tol)
            throw BadDecompositionError("decomposition: zero excess vector");
        const Subspace span = Subspace::line(spec.vector, tol.rank_tol);
        bool matched = false;
        for (std::size_t idx = 0; idx < count; ++idx) {
            if (role[idx] != 0) continue;
            if (frame.item(idx).subspace.dim() != 1) continue;
            if (projector_distance(frame.item(idx).subspace, span) <= kTheoremTol) {
                role[idx] = 3;
                out.specs[s].standalone_item = idx;
                matched = true;
                break;
            }
        }
        if (!matched)
            throw BadDecompositionError(
                "decomposition: standalone excess vector matches no remaining item");
    }
    for (std::size_t idx = 0; idx < count; ++idx)
        if (role[idx] == 0)
            throw BadDecompositionError("decomposition: frame item not covered by declaration");

    // Derive host members: W = V ∩ (excess span)^⊥.
    std::vector<std::optional<Subspace>> derived(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
        if (role[idx] != 2) continue;
        std::vector<Vector> directions;
        for (const ExcessSpecDecl& spec : dec.specs)
            if (spec.host && *spec.host == idx) directions.push_back(spec.vector);
        const Subspace& container = frame.item(idx).subspace;
        for (const Vector& x : directions)
            if (!container.contains(x, kTheoremTol))
                throw BadDecompositionError("decomposition: excess vector not inside its host");
        const Matrix q = orthonormalize(directions, tol.rank_tol);
        if (q.cols() != directions.size())
            throw BadDecompositionError("decomposition: dependent excess vectors in one host");
        const auto complement =
            complement_within(container, Subspace(n, q), tol.rank_tol);
        if (!complement || complement->dim() != container.dim() - directions.size())
            throw BadDecompositionError(
                "decomposition: host excess directions do not leave a Riesz complement");
        derived[idx] = *complement;
    }

    for (std::size_t idx = 0; idx < count; ++idx) {
        if (role[idx] == 1)
            out.members.push_back({idx, frame.item(idx).subspace, false});
        else if (role[idx] == 2)
            out.members.push_back({idx, *derived[idx], true});
    }
    if (out.members.empty())
        throw BadDecompositionError("decomposition: empty Riesz part");

    if (!classify(out.riesz_frame(frame), tol).is_riesz_basis)
        throw BadDecompositionError("decomposition: declared Riesz part is not a fusion Riesz basis");

    // Normalize excess vectors and validate their components.
    for (std::size_t s = 0; s < dec.specs.size(); ++s) {
        const ExcessSpecDecl& spec = dec.specs[s];
        ValidatedDecomposition::Spec& v = out.specs[s];
        v.host = spec.host;
        const double nv = norm2(spec.vector);
        if (nv <= tol.rank_tol)
            throw BadDecompositionError("decomposition: zero excess vector");
        v.normalized_input = std::abs(nv - 1.0) > kTheoremTol;
        v.vector = scaled(spec.vector, 1.0 / nv);

        v.components.assign(out.members.size(), Vector(n, 0.0));
        for (const ExcessComponentDecl& comp : spec.components) {
            const std::size_t pos = out.member_position(comp.item);
            if (comp.vector.size() != n)
                throw BadDecompositionError("decomposition: component has wrong dimension");
            const Vector scaled_comp = scaled(comp.vector, 1.0 / nv);
            if (norm2(scaled_comp) > kTheoremTol &&
                !out.members[pos].subspace.contains(scaled_comp, kTheoremTol))
                throw BadDecompositionError(
                    "decomposition: component does not lie in its Riesz member");
            v.components[pos] = add(v.components[pos], scaled_comp);
        }

        Vector total(n, 0.0);
        for (const Vector& c : v.components) total = add(total, c);
        if (norm2(sub(total, v.vector)) > kTheoremTol)
            throw BadDecompositionError("decomposition: components do not sum to the excess vector");

        for (std::size_t p = 0; p < out.members.size(); ++p)
            if (norm2(v.components[p]) > kTheoremTol) v.support.push_back(p);
    }

    return out;
}

} // namespace fframe
