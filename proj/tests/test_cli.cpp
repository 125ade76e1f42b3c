#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fframe/frame_io.hpp"

namespace {

const std::string kCli = FFRAME_CLI_PATH;

struct CliResult {
    int exit_code;
    std::string stdout_text;
};

CliResult run_cli(const std::string& args) {
    const std::string out_path = "/tmp/fframe_cli_out.txt";
    const std::string cmd = kCli + " " + args + " > " + out_path + " 2>/tmp/fframe_cli_err.txt";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return CliResult{WEXITSTATUS(status), buffer.str()};
}

nlohmann::json parse_output(const CliResult& r) { return nlohmann::json::parse(r.stdout_text); }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

TEST_CASE("example + analyze round trip") {
    REQUIRE(run_cli("example two_excess_h3 -o /tmp/cli_teh3.json").exit_code == 0);
    const CliResult r = run_cli("analyze /tmp/cli_teh3.json");
    CHECK(r.exit_code == 0);
    const auto doc = parse_output(r);
    CHECK(doc["analysis"]["excess"] == 2);
    CHECK(doc["analysis"]["lower_bound"].get<double>() == doctest::Approx(1.0));
    CHECK(doc["analysis"]["upper_bound"].get<double>() == doctest::Approx(2.0));
    CHECK(doc["command"] == "analyze");
    CHECK(doc["input_digest"].get<std::string>().size() == 16);
}

TEST_CASE("scale exit codes follow the strictness verdict") {
    REQUIRE(run_cli("example two_excess_h4 -o /tmp/cli_teh4.json").exit_code == 0);
    const CliResult good = run_cli("scale /tmp/cli_teh4.json");
    CHECK(good.exit_code == 0);
    const auto doc = parse_output(good);
    CHECK(doc["scaling"]["status"] == "strictly_scalable");
    const double expected = std::sqrt(2.0 / 3.0);
    const auto gammas = doc["scaling"]["gamma"];
    for (const auto& g : gammas)
        CHECK(g.get<double>() == doctest::Approx(expected).epsilon(1e-9));

    REQUIRE(run_cli("example shift_trunc --param m=2 -o /tmp/cli_shift.json").exit_code == 0);
    const CliResult bad = run_cli("scale /tmp/cli_shift.json");
    CHECK(bad.exit_code == 1);
    CHECK(parse_output(bad)["scaling"]["status"] == "infeasible");
}

TEST_CASE("excess, dual and check subcommands") {
    REQUIRE(run_cli("example zdual_trunc --param n=2 --param m=2 --param radius=4 "
                    "-o /tmp/cli_z.json")
                .exit_code == 0);
    REQUIRE(run_cli("example shift_trunc --param m=4 -o /tmp/cli_v.json").exit_code == 0);

    const CliResult ex = run_cli("excess /tmp/cli_z.json");
    CHECK(ex.exit_code == 0);
    CHECK(parse_output(ex)["excess"]["excess"] == 5);

    const CliResult dual = run_cli("dual /tmp/cli_z.json /tmp/cli_v.json");
    CHECK(dual.exit_code == 0);
    CHECK(parse_output(dual)["dual"]["is_dual"] == true);

    // a slanted non-tight Riesz basis is not its own dual
    std::ofstream slant("/tmp/cli_slant.json");
    slant << R"({"dim": 2, "subspaces": [
        {"basis": [[1, 0]], "weight": 1.0},
        {"basis": [[0.7071067811865476, 0.7071067811865476]], "weight": 1.0}]})";
    slant.close();
    const CliResult nondual = run_cli("dual /tmp/cli_slant.json /tmp/cli_slant.json");
    CHECK(nondual.exit_code == 1);
    CHECK(parse_output(nondual)["dual"]["is_dual"] == false);

    REQUIRE(run_cli("example one_excess_alpha --alpha 0.5 -o /tmp/cli_oea.json").exit_code ==
            0);
    const CliResult check = run_cli("check /tmp/cli_oea.json --theorem cor-3.7");
    CHECK(check.exit_code == 0);
    const auto cdoc = parse_output(check);
    CHECK(cdoc["theorem"]["verdict_consistent_with_solver"] == true);
    for (const auto& cond : cdoc["theorem"]["conditions"]) CHECK(cond["holds"] == true);

    const CliResult unknown = run_cli("check /tmp/cli_oea.json --theorem thm-9.9");
    CHECK(unknown.exit_code == 2);
}

TEST_CASE("input errors exit 2") {
    CHECK(run_cli("analyze /tmp/absent_frame_file.json").exit_code == 2);
    CHECK(run_cli("example not_a_fixture").exit_code == 2);
    CHECK(run_cli("example one_excess_alpha --alpha 0.9").exit_code == 2);

    std::ofstream bad("/tmp/cli_bad.json");
    bad << "{ nope";
    bad.close();
    CHECK(run_cli("analyze /tmp/cli_bad.json").exit_code == 2);

    std::ofstream zero("/tmp/cli_zero_weight.json");
    zero << R"({"dim": 2, "subspaces": [{"basis": [[1,0]], "weight": 0.0}]})";
    zero.close();
    CHECK(run_cli("scale /tmp/cli_zero_weight.json").exit_code == 2);
}

TEST_CASE("gen determinism and re-parse") {
    REQUIRE(run_cli("gen --dim 3 --subspace-dims 1,1,1 --orthogonal --seed 7 "
                    "-o /tmp/cli_gen_a.json")
                .exit_code == 0);
    REQUIRE(run_cli("gen --dim 3 --subspace-dims 1,1,1 --orthogonal --seed 7 "
                    "-o /tmp/cli_gen_b.json")
                .exit_code == 0);
    CHECK(slurp("/tmp/cli_gen_a.json") == slurp("/tmp/cli_gen_b.json"));

    // orthogonal split with unit weights is Parseval and scales by gamma = 1
    const CliResult analyzed = run_cli("analyze /tmp/cli_gen_a.json");
    CHECK(parse_output(analyzed)["analysis"]["is_parseval"] == true);
    const CliResult scaled = run_cli("scale /tmp/cli_gen_a.json");
    CHECK(scaled.exit_code == 0);
    const auto scaled_doc = parse_output(scaled);
    const auto unit_gammas = scaled_doc["scaling"]["gamma"];
    for (const auto& g : unit_gammas)
        CHECK(g.get<double>() == doctest::Approx(1.0).epsilon(1e-9));

    REQUIRE(run_cli("gen --dim 4 --subspace-dims 2,2,1 --random --seed 1 "
                    "-o /tmp/cli_gen_c.json")
                .exit_code == 0);
    const fframe::ParsedFrame parsed = fframe::parse_frame_file("/tmp/cli_gen_c.json");
    CHECK(parsed.frame.size() == 3);

    CHECK(run_cli("gen --dim 2 --subspace-dims 1,3 --random --seed 1 -o /tmp/x.json")
              .exit_code == 2);
    CHECK(run_cli("gen --dim 3 --subspace-dims 1,1 --orthogonal -o /tmp/x.json").exit_code ==
          2);
}

TEST_CASE("FF_TOL environment override with flag precedence") {
    REQUIRE(run_cli("example mercedes_benz -o /tmp/cli_mb.json").exit_code == 0);
    // absurdly large env tolerance turns the 1.5-tight frame "parseval"
    CliResult loose = run_cli("analyze /tmp/cli_mb.json --tol 10");
    CHECK(parse_output(loose)["analysis"]["is_parseval"] == true);

    const std::string env_cmd = "FF_TOL=10 " + kCli +
                                " analyze /tmp/cli_mb.json > /tmp/fframe_cli_out.txt "
                                "2>/dev/null";
    REQUIRE(std::system(env_cmd.c_str()) == 0);
    CHECK(nlohmann::json::parse(slurp("/tmp/fframe_cli_out.txt"))["analysis"]["is_parseval"] ==
          true);

    // flag beats environment: tight tolerance restores the honest verdict
    const std::string both_cmd = "FF_TOL=10 " + kCli +
                                 " analyze /tmp/cli_mb.json --tol 1e-9 > "
                                 "/tmp/fframe_cli_out.txt 2>/dev/null";
    REQUIRE(std::system(both_cmd.c_str()) == 0);
    CHECK(nlohmann::json::parse(slurp("/tmp/fframe_cli_out.txt"))["analysis"]["is_parseval"] ==
          false);
}

TEST_CASE("every fixture reproduces its verdict through the CLI") {
    const struct {
        const char* name;
        const char* args;
        int scale_exit;
    } cases[] = {
        {"two_excess_h3", "", 0},     {"two_excess_h4", "", 0},
        {"mercedes_benz", "", 0},     {"tight2_h9", "", 0},
        {"repeated_subspace", "", 0}, {"one_excess_alpha", "--alpha 0.3", 0},
        {"h4_beta", "", 0},           {"riesz_u", "", 0},
        {"nonscalable_h3", "", 1},    {"shift_trunc", "--m 3", 1},
        {"big_h7", "", 1},            {"single_host_excess", "", 1},
    };
    for (const auto& c : cases) {
        INFO(c.name);
        std::string cmd = std::string("example ") + c.name + " " + c.args +
                          " -o /tmp/cli_fixture.json";
        REQUIRE(run_cli(cmd).exit_code == 0);
        CHECK(run_cli("scale /tmp/cli_fixture.json").exit_code == c.scale_exit);
    }
}
