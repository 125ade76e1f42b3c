// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "fframe/fusion_frame.hpp"
#include "fframe/scaling.hpp"
#include "fframe/theorems.hpp"

namespace fframe {

inline nlohmann::ordered_json to_json(const FrameAnalysis& a) {
    nlohmann::ordered_json j;
    j["lower_bound"] = a.lower_bound;
    j["upper_bound"] = a.upper_bound;
    j["is_frame"] = a.is_frame;
    j["is_tight"] = a.is_tight;
    j["is_parseval"] = a.is_parseval;
    j["is_riesz_basis"] = a.is_riesz_basis;
    j["is_orthogonal_family"] = a.is_orthogonal_family;
    j["excess"] = a.excess;
    return j;
}

inline nlohmann::ordered_json to_json(const ScalingSolution& s) {
    nlohmann::ordered_json j;
    j["status"] = to_string(s.status);
    j["coefficients"] = s.coefficients;
    j["gamma"] = s.gamma;
    j["residual"] = s.residual;
    j["min_coefficient"] = s.min_coefficient;
    return j;
}

inline nlohmann::ordered_json to_json(const ExcessResult& e) {
    nlohmann::ordered_json j;
    j["excess"] = e.excess;
    j["kernel_basis"] = nlohmann::ordered_json::array();
    if (e.excess > 0)
        for (std::size_t col = 0; col < e.kernel_basis.cols(); ++col)
            j["kernel_basis"].push_back(e.kernel_basis.column(col));
    return j;
}

inline nlohmann::ordered_json to_json(const DualCheck& d) {
    nlohmann::ordered_json j;
    j["is_dual"] = d.is_dual;
    j["residual"] = d.residual;
    return j;
}

inline nlohmann::ordered_json to_json(const TheoremReport& r) {
    nlohmann::ordered_json j;
    j["theorem_id"] = r.theorem_id;
    j["conditions"] = nlohmann::ordered_json::array();
    for (const TheoremCondition& c : r.conditions) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["holds"] = c.holds;
        cj["witness"] = c.witness;
        j["conditions"].push_back(std::move(cj));
    }
    j["verdict_consistent_with_solver"] = r.verdict_consistent_with_solver;
    return j;
}

/// FNV-1a digest of a file's bytes, as a hex string.
inline std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::uint64_t h = 1469598103934665603ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace fframe
