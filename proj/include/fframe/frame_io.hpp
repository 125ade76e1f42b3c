// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fframe/errors.hpp"
#include "fframe/excess_decomposition.hpp"
#include "fframe/fusion_frame.hpp"
#include "fframe/matrix.hpp"
#include "fframe/subspace.hpp"
#include "fframe/tolerance.hpp"

namespace fframe {

using json = nlohmann::ordered_json;

struct ParsedFrame {
    FusionFrame frame;
    std::optional<ExcessDecomposition> decomposition;
    std::vector<std::string> labels; // one per frame item
    std::string file_label;          // free-form description carried by the file
};

namespace detail {

inline Vector parse_vector(const json& node, std::size_t dim, const char* what) {
    if (!node.is_array())
        throw ParseError(std::string("frame file: ") + what + " must be an array of numbers");
    Vector v;
    v.reserve(node.size());
    for (const json& x : node) {
        if (!x.is_number())
            throw ParseError(std::string("frame file: ") + what + " entries must be numbers");
        v.push_back(x.get<double>());
    }
    if (v.size() != dim)
        throw ParseError(std::string("frame file: ") + what + " has wrong length");
    return v;
}

inline std::size_t resolve_label(const std::vector<std::string>& labels,
                                 const std::string& label) {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return i;
    throw BadDecompositionError("frame file: decomposition references unknown label '" + label +
                                "'");
}

} // namespace detail

/// Parses a frame file. Bases are orthonormalized on load; a declared
/// decomposition is validated (errors, not warnings, on violation).
inline ParsedFrame parse_frame_json(const json& doc, const ToleranceConfig* tol_override = nullptr) {
    if (!doc.is_object()) throw ParseError("frame file: top level must be an object");
    if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long>() <= 0)
        throw ParseError("frame file: 'dim' must be a positive integer");
    const std::size_t dim = doc["dim"].get<std::size_t>();
    const ToleranceConfig tol =
        tol_override ? *tol_override : ToleranceConfig::defaults(dim);

    if (!doc.contains("subspaces") || !doc["subspaces"].is_array() || doc["subspaces"].empty())
        throw ParseError("frame file: 'subspaces' must be a nonempty array");

    std::vector<WeightedSubspace> items;
    std::vector<std::string> labels;
    for (const json& s : doc["subspaces"]) {
        if (!s.is_object() || !s.contains("basis") || !s["basis"].is_array() ||
            s["basis"].empty())
            throw ParseError("frame file: each subspace needs a nonempty 'basis' array");

        std::vector<Vector> rows;
        for (const json& row : s["basis"])
            rows.push_back(detail::parse_vector(row, dim, "basis row"));

        double weight = 1.0;
        if (s.contains("weight")) {
            if (!s["weight"].is_number())
                throw ParseError("frame file: 'weight' must be a number");
            weight = s["weight"].get<double>();
        }
        if (!(weight > 0.0))
            throw NonpositiveWeightError("frame file: weights must be strictly positive");

        Matrix q = orthonormalize(rows, tol.rank_tol);
        if (q.cols() != rows.size())
            throw RankDeficientBasisError(
                "frame file: declared basis rows are linearly dependent");
        items.push_back({Subspace(dim, std::move(q)), weight});

        std::string label = "s" + std::to_string(labels.size());
        if (s.contains("label")) {
            if (!s["label"].is_string())
                throw ParseError("frame file: 'label' must be a string");
            label = s["label"].get<std::string>();
        }
        for (const std::string& existing : labels)
            if (existing == label)
                throw ParseError("frame file: duplicate subspace label '" + label + "'");
        labels.push_back(label);
    }

    ParsedFrame out{FusionFrame(std::move(items)), std::nullopt, std::move(labels), ""};
    if (doc.contains("label")) {
        if (!doc["label"].is_string()) throw ParseError("frame file: 'label' must be a string");
        out.file_label = doc["label"].get<std::string>();
    }

    if (doc.contains("decomposition") && !doc["decomposition"].is_null()) {
        const json& d = doc["decomposition"];
        if (!d.is_object()) throw ParseError("frame file: 'decomposition' must be an object");
        ExcessDecomposition dec;
        if (d.contains("riesz")) {
            if (!d["riesz"].is_array())
                throw ParseError("frame file: decomposition 'riesz' must be an array");
            for (const json& l : d["riesz"]) {
                if (!l.is_string())
                    throw ParseError("frame file: riesz labels must be strings");
                dec.riesz_items.push_back(
                    detail::resolve_label(out.labels, l.get<std::string>()));
            }
        }
        if (d.contains("excess")) {
            if (!d["excess"].is_array())
                throw ParseError("frame file: decomposition 'excess' must be an array");
            for (const json& e : d["excess"]) {
                if (!e.is_object() || !e.contains("vector"))
                    throw ParseError("frame file: each excess entry needs a 'vector'");
                ExcessSpecDecl spec;
                spec.vector = detail::parse_vector(e["vector"], dim, "excess vector");
                if (e.contains("host") && !e["host"].is_null()) {
                    if (!e["host"].is_string())
                        throw ParseError("frame file: excess 'host' must be a label or null");
                    spec.host = detail::resolve_label(out.labels, e["host"].get<std::string>());
                }
                if (e.contains("components")) {
                    if (!e["components"].is_array())
                        throw ParseError("frame file: 'components' must be an array");
                    for (const json& c : e["components"]) {
                        if (!c.is_object() || !c.contains("riesz") || !c.contains("vector") ||
                            !c["riesz"].is_string())
                            throw ParseError(
                                "frame file: each component needs 'riesz' and 'vector'");
                        spec.components.push_back(
                            {detail::resolve_label(out.labels, c["riesz"].get<std::string>()),
                             detail::parse_vector(c["vector"], dim, "component vector")});
                    }
                }
                dec.specs.push_back(std::move(spec));
            }
        }
        validate_decomposition(out.frame, dec, tol);
        out.decomposition = std::move(dec);
    }
    return out;
}

inline ParsedFrame parse_frame_file(const std::string& path,
                                    const ToleranceConfig* tol_override = nullptr) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open frame file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("frame file: ") + e.what());
    }
    return parse_frame_json(doc, tol_override);
}

inline json emit_frame_json(const FusionFrame& frame,
                            const std::optional<ExcessDecomposition>& dec = std::nullopt,
                            std::vector<std::string> labels = {},
                            const std::string& file_label = "") {
    if (labels.empty())
        for (std::size_t i = 0; i < frame.size(); ++i) labels.push_back("s" + std::to_string(i));
    if (labels.size() != frame.size())
        throw LengthMismatchError("emit_frame_json: label count differs from frame size");

    json doc;
    doc["dim"] = frame.ambient_dim();
    if (!file_label.empty()) doc["label"] = file_label;
    doc["subspaces"] = json::array();
    for (std::size_t i = 0; i < frame.size(); ++i) {
        json s;
        s["label"] = labels[i];
        s["weight"] = frame.item(i).weight;
        s["basis"] = json::array();
        const Matrix& q = frame.item(i).subspace.basis();
        for (std::size_t col = 0; col < q.cols(); ++col) {
            json row = json::array();
            for (std::size_t r = 0; r < q.rows(); ++r) row.push_back(q(r, col));
            s["basis"].push_back(std::move(row));
        }
        doc["subspaces"].push_back(std::move(s));
    }
    if (dec) {
        json d;
        d["riesz"] = json::array();
        for (std::size_t idx : dec->riesz_items) d["riesz"].push_back(labels.at(idx));
        d["excess"] = json::array();
        for (const ExcessSpecDecl& spec : dec->specs) {
            json e;
            e["vector"] = spec.vector;
            e["host"] = spec.host ? json(labels.at(*spec.host)) : json(nullptr);
            e["components"] = json::array();
            for (const ExcessComponentDecl& c : spec.components) {
                json cj;
                cj["riesz"] = labels.at(c.item);
                cj["vector"] = c.vector;
                e["components"].push_back(std::move(cj));
            }
            d["excess"].push_back(std::move(e));
        }
        doc["decomposition"] = std::move(d);
    }
    return doc;
}

inline void write_frame_file(const std::string& path, const FusionFrame& frame,
                             const std::optional<ExcessDecomposition>& dec = std::nullopt,
                             std::vector<std::string> labels = {},
                             const std::string& file_label = "") {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write frame file: " + path);
    out << emit_frame_json(frame, dec, std::move(labels), file_label).dump(2) << "\n";
}

} // namespace fframe
