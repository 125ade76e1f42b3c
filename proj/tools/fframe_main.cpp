// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: frame-file analysis, weight-scaling, excess and
// dual computations, structural checks, built-in example fixtures, and
// random frame generation. Reports are JSON on standard output; diagnostics
// go to standard error.
//
// Exit codes: 0 success/affirmative, 1 negative mathematical verdict
// (scale/check/dual), 2 input error.

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fframe/errors.hpp"
#include "fframe/fixtures.hpp"
#include "fframe/frame_io.hpp"
#include "fframe/fusion_frame.hpp"
#include "fframe/generate.hpp"
#include "fframe/report.hpp"
#include "fframe/scaling.hpp"
#include "fframe/theorems.hpp"
#include "fframe/tolerance.hpp"

namespace {

struct OutputOptions {
    bool pretty = false;
};

void emit(const nlohmann::ordered_json& payload, const OutputOptions& opts) {
    std::cout << (opts.pretty ? payload.dump(2) : payload.dump()) << "\n";
}

nlohmann::ordered_json report_shell(const std::string& command, const std::string& digest,
                                    double wall_ms) {
    nlohmann::ordered_json r;
    r["command"] = command;
    r["input_digest"] = digest;
    r["wall_time_ms"] = wall_ms;
    return r;
}

/// Tolerances for a given ambient dimension: FF_TOL overrides the residual
/// default, an explicit --tol flag beats both.
fframe::ToleranceConfig resolve_tolerances(std::size_t dim, std::optional<double> tol_flag,
                                           std::optional<double> min_weight_flag) {
    fframe::ToleranceConfig cfg = fframe::ToleranceConfig::defaults(dim);
    if (const char* env = std::getenv("FF_TOL")) {
        try {
            const double v = std::stod(env);
            if (v > 0.0) cfg = cfg.with_residual_tol(v);
        } catch (...) {
            throw fframe::InvalidSpecError("FF_TOL is not a number");
        }
    }
    if (tol_flag && *tol_flag > 0.0) cfg = cfg.with_residual_tol(*tol_flag);
    if (min_weight_flag && *min_weight_flag > 0.0)
        cfg = cfg.with_positivity_eps(*min_weight_flag);
    return cfg;
}

enum class TheoremKind {
    RieszScalable,
    OneExcess,
    OneExcessStructure,
    TwoExcess,
    TwoExcessH3,
    KExcess,
    SwapStructure,
};

TheoremKind resolve_theorem_id(const std::string& id) {
    static const std::map<std::string, TheoremKind> table = {
        {"riesz-scalable", TheoremKind::RieszScalable},
        {"prop-3.3", TheoremKind::RieszScalable},
        {"one-excess", TheoremKind::OneExcess},
        {"thm-3.5", TheoremKind::OneExcess},
        {"cor-3.7", TheoremKind::OneExcess},
        {"cor-3.9", TheoremKind::OneExcess},
        {"one-excess-structure", TheoremKind::OneExcessStructure},
        {"thm-3.8", TheoremKind::OneExcessStructure},
        {"two-excess", TheoremKind::TwoExcess},
        {"prop-4.1", TheoremKind::TwoExcess},
        {"thm-4.2", TheoremKind::TwoExcess},
        {"thm-4.4", TheoremKind::TwoExcess},
        {"two-excess-h3", TheoremKind::TwoExcessH3},
        {"cor-4.5", TheoremKind::TwoExcessH3},
        {"k-excess", TheoremKind::KExcess},
        {"prop-5.1", TheoremKind::KExcess},
        {"cor-5.2", TheoremKind::KExcess},
        {"swap-structure", TheoremKind::SwapStructure},
        {"thm-5.3", TheoremKind::SwapStructure},
        {"cor-5.4", TheoremKind::SwapStructure},
        {"cor-5.5", TheoremKind::SwapStructure},
        {"thm-5.6", TheoremKind::SwapStructure},
    };
    const auto it = table.find(id);
    if (it == table.end()) throw fframe::UnknownTheoremIdError("unknown theorem id: " + id);
    return it->second;
}

int run_analyze(const std::string& path, std::optional<double> tol, const OutputOptions& opts) {
    fframe::Stopwatch watch;
    const fframe::ParsedFrame parsed = fframe::parse_frame_file(path);
    const auto cfg = resolve_tolerances(parsed.frame.ambient_dim(), tol, std::nullopt);
    const fframe::FrameAnalysis analysis = fframe::classify(parsed.frame, cfg);
    auto r = report_shell("analyze", fframe::file_digest(path), watch.elapsed_ms());
    r["analysis"] = fframe::to_json(analysis);
    emit(r, opts);
    return 0;
}

int run_scale(const std::string& path, std::optional<double> tol,
              std::optional<double> min_weight, const OutputOptions& opts) {
    fframe::Stopwatch watch;
    const fframe::ParsedFrame parsed = fframe::parse_frame_file(path);
    const auto cfg = resolve_tolerances(parsed.frame.ambient_dim(), tol, min_weight);
    const fframe::ScalingSolution sol = fframe::solve_scaling(parsed.frame, cfg);
    auto r = report_shell("scale", fframe::file_digest(path), watch.elapsed_ms());
    r["scaling"] = fframe::to_json(sol);
    emit(r, opts);
    return sol.status == fframe::ScalingStatus::StrictlyScalable ? 0 : 1;
}

int run_excess(const std::string& path, const OutputOptions& opts) {
    fframe::Stopwatch watch;
    const fframe::ParsedFrame parsed = fframe::parse_frame_file(path);
    const auto cfg = resolve_tolerances(parsed.frame.ambient_dim(), std::nullopt, std::nullopt);
    const fframe::ExcessResult result = fframe::excess(parsed.frame, cfg.rank_tol);
    auto r = report_shell("excess", fframe::file_digest(path), watch.elapsed_ms());
    r["excess"] = fframe::to_json(result);
    emit(r, opts);
    return 0;
}

int run_dual(const std::string& path_candidate, const std::string& path_frame,
             std::optional<double> tol, const OutputOptions& opts) {
    fframe::Stopwatch watch;
    const fframe::ParsedFrame candidate = fframe::parse_frame_file(path_candidate);
    const fframe::ParsedFrame frame = fframe::parse_frame_file(path_frame);
    const auto cfg = resolve_tolerances(frame.frame.ambient_dim(), std::nullopt, std::nullopt);
    const double dual_tol = tol && *tol > 0.0 ? *tol : fframe::kTheoremTol;
    const fframe::DualCheck check = fframe::is_dual(candidate.frame, frame.frame, dual_tol, cfg);
    auto r = report_shell(
        "dual", fframe::file_digest(path_candidate) + "," + fframe::file_digest(path_frame),
        watch.elapsed_ms());
    r["dual"] = fframe::to_json(check);
    emit(r, opts);
    return check.is_dual ? 0 : 1;
}

int run_check(const std::string& path, const std::string& theorem_id, std::optional<double> tol,
              const OutputOptions& opts) {
    fframe::Stopwatch watch;
    const TheoremKind kind = resolve_theorem_id(theorem_id);
    const fframe::ParsedFrame parsed = fframe::parse_frame_file(path);
    const auto cfg = resolve_tolerances(parsed.frame.ambient_dim(), tol, std::nullopt);

    fframe::TheoremReport report;
    if (kind == TheoremKind::RieszScalable) {
        report = fframe::check_riesz_scalable(parsed.frame, cfg);
    } else {
        if (!parsed.decomposition)
            throw fframe::BadDecompositionError(
                "check: this theorem needs a decomposition block in the frame file");
        const fframe::ScalingSolution sol = fframe::solve_scaling(parsed.frame, cfg);
        switch (kind) {
            case TheoremKind::OneExcess:
                report = fframe::check_one_excess(parsed.frame, *parsed.decomposition, sol, cfg);
                break;
            case TheoremKind::OneExcessStructure:
                report =
                    fframe::check_one_excess_structure(parsed.frame, *parsed.decomposition, cfg);
                break;
            case TheoremKind::TwoExcess:
                report = fframe::check_two_excess(parsed.frame, *parsed.decomposition, sol, cfg);
                break;
            case TheoremKind::TwoExcessH3:
                report = fframe::check_two_excess_h3_orthogonality(
                    parsed.frame, *parsed.decomposition, sol, cfg);
                break;
            case TheoremKind::KExcess:
                report = fframe::check_k_excess(parsed.frame, *parsed.decomposition, sol, cfg);
                break;
            case TheoremKind::SwapStructure:
                report =
                    fframe::check_swap_structure(parsed.frame, *parsed.decomposition, sol, cfg);
                break;
            default:
                break;
        }
    }

    auto r = report_shell("check", fframe::file_digest(path), watch.elapsed_ms());
    r["theorem"] = fframe::to_json(report);
    emit(r, opts);
    return report.verdict_consistent_with_solver ? 0 : 1;
}

int run_example(const std::string& name, const std::vector<std::string>& params,
                std::string out_path) {
    fframe::FixtureParams fixture_params;
    for (const std::string& kv : params) {
        const auto pos = kv.find('=');
        if (pos == std::string::npos || pos == 0)
            throw fframe::ParameterOutOfRangeError("example: parameters take the form k=v");
        try {
            fixture_params[kv.substr(0, pos)] = std::stod(kv.substr(pos + 1));
        } catch (const fframe::Error&) {
            throw;
        } catch (...) {
            throw fframe::ParameterOutOfRangeError("example: parameter value is not a number");
        }
    }
    const fframe::Fixture fixture = fframe::make_fixture(name, fixture_params);
    if (out_path.empty()) out_path = name + ".json";
    fframe::write_frame_file(out_path, fixture.frame, fixture.decomposition, {}, fixture.label);
    std::cout << out_path << "\n";
    return 0;
}

int run_gen(std::size_t dim, const std::string& dims_text, std::uint64_t seed, bool orthogonal,
            bool random_mode, std::string out_path) {
    if (dim == 0) throw fframe::InvalidSpecError("gen: --dim must be positive");
    if (orthogonal == random_mode)
        throw fframe::InvalidSpecError("gen: choose exactly one of --orthogonal / --random");

    std::vector<std::size_t> dims;
    std::size_t total = 0;
    std::string token;
    std::stringstream stream(dims_text);
    while (std::getline(stream, token, ',')) {
        if (token.empty()) continue;
        long value = 0;
        try {
            value = std::stol(token);
        } catch (...) {
            throw fframe::InvalidSpecError("gen: --subspace-dims must be integers");
        }
        if (value <= 0 || static_cast<std::size_t>(value) > dim)
            throw fframe::InvalidSpecError("gen: each subspace dimension must lie in [1, dim]");
        dims.push_back(static_cast<std::size_t>(value));
        total += static_cast<std::size_t>(value);
    }
    if (dims.empty()) throw fframe::InvalidSpecError("gen: --subspace-dims is required");
    if (orthogonal && total != dim)
        throw fframe::InvalidSpecError(
            "gen: --orthogonal requires subspace dimensions summing to dim");

    fframe::Rng rng(seed);
    std::vector<fframe::WeightedSubspace> items;
    if (orthogonal) {
        for (fframe::Subspace& s : fframe::random_orthogonal_split(dim, dims, rng))
            items.push_back({std::move(s), 1.0});
    } else {
        for (std::size_t d : dims) items.push_back({fframe::random_subspace(dim, d, rng), 1.0});
    }
    const fframe::FusionFrame frame(std::move(items));

    if (out_path.empty()) out_path = "frame.json";
    fframe::write_frame_file(out_path, frame, std::nullopt, {},
                             std::string("generated: seed ") + std::to_string(seed));
    std::cout << out_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite fusion-frame analysis and weight-scaling toolkit"};
    app.require_subcommand(1);
    OutputOptions opts;
    app.add_flag("--pretty", opts.pretty, "indent JSON output");

    std::string path, path2, theorem_id, name, out_path, dims_text;
    std::optional<double> tol, min_weight;
    std::vector<std::string> params;
    std::size_t dim = 0;
    std::uint64_t seed = 0;
    bool orthogonal = false, random_mode = false;

    auto* analyze = app.add_subcommand("analyze", "classify a fusion frame");
    analyze->add_option("file", path)->required();
    analyze->add_option("--tol", tol, "residual tolerance override");

    auto* scale = app.add_subcommand("scale", "decide weight-scalability");
    scale->add_option("file", path)->required();
    scale->add_option("--tol", tol, "residual tolerance override");
    scale->add_option("--min-weight", min_weight, "strict-positivity threshold");

    auto* excess = app.add_subcommand("excess", "excess and kernel basis");
    excess->add_option("file", path)->required();

    auto* dual = app.add_subcommand("dual", "test the alternate-dual identity");
    dual->add_option("candidate", path)->required();
    dual->add_option("frame", path2)->required();
    dual->add_option("--tol", tol, "dual residual tolerance");

    auto* check = app.add_subcommand("check", "run a structural checker");
    check->add_option("file", path)->required();
    check->add_option("--theorem", theorem_id, "checker id")->required();
    check->add_option("--tol", tol, "residual tolerance override");

    auto* example = app.add_subcommand("example", "write a built-in fixture file");
    example->add_option("name", name)->required();
    example->add_option("--param", params, "fixture parameter k=v (repeatable)");
    example->add_option("-o,--output", out_path, "output path (default <name>.json)");
    example->allow_extras();

    auto* gen = app.add_subcommand("gen", "write a random frame file");
    gen->add_option("--dim", dim, "ambient dimension")->required();
    gen->add_option("--subspace-dims", dims_text, "comma-separated dimensions")->required();
    gen->add_option("--seed", seed, "random seed");
    gen->add_flag("--orthogonal", orthogonal, "orthogonal decomposition");
    gen->add_flag("--random", random_mode, "independent random subspaces");
    gen->add_option("-o,--output", out_path, "output path (default frame.json)");

    for (auto* sub : {analyze, scale, excess, dual, check})
        sub->add_flag("--pretty", opts.pretty, "indent JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(analyze)) return run_analyze(path, tol, opts);
        if (app.got_subcommand(scale)) return run_scale(path, tol, min_weight, opts);
        if (app.got_subcommand(excess)) return run_excess(path, opts);
        if (app.got_subcommand(dual)) return run_dual(path, path2, tol, opts);
        if (app.got_subcommand(check)) return run_check(path, theorem_id, tol, opts);
        if (app.got_subcommand(example)) {
            // Bare --key value extras are accepted as parameters too.
            std::vector<std::string> extras = example->remaining();
            for (std::size_t i = 0; i < extras.size(); ++i) {
                std::string key = extras[i];
                if (key.rfind("--", 0) != 0 || i + 1 >= extras.size())
                    throw fframe::ParameterOutOfRangeError("example: unrecognized argument " +
                                                           key);
                params.push_back(key.substr(2) + "=" + extras[++i]);
            }
            return run_example(name, params, out_path);
        }
        if (app.got_subcommand(gen))
            return run_gen(dim, dims_text, seed, orthogonal, random_mode, out_path);
    } catch (const fframe::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
