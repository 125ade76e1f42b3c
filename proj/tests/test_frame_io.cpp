#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "fframe/fixtures.hpp"
#include "fframe/frame_io.hpp"

using namespace fframe;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/fframe_io_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
    void write(const std::string& text) const {
        std::ofstream out(path);
        out << text;
    }
};

} // namespace

TEST_CASE("emit/parse round-trip preserves projectors and decomposition") {
    for (const std::string& name : fixture_names()) {
        INFO(name);
        const Fixture fx = make_fixture(name);
        const json doc = emit_frame_json(fx.frame, fx.decomposition, {}, fx.label);
        const ParsedFrame back = parse_frame_json(doc);

        REQUIRE(back.frame.size() == fx.frame.size());
        CHECK(back.file_label == fx.label);
        for (std::size_t i = 0; i < fx.frame.size(); ++i) {
            CHECK(projector_distance(back.frame.item(i).subspace,
                                     fx.frame.item(i).subspace) <= 1e-12);
            CHECK(back.frame.item(i).weight ==
                  doctest::Approx(fx.frame.item(i).weight).epsilon(1e-15));
        }
        CHECK(back.decomposition.has_value() == fx.decomposition.has_value());
        if (fx.decomposition)
            CHECK(back.decomposition->specs.size() == fx.decomposition->specs.size());

        // a second round trip stays on the same subspaces
        const ParsedFrame again = parse_frame_json(
            emit_frame_json(back.frame, back.decomposition, back.labels, back.file_label));
        for (std::size_t i = 0; i < fx.frame.size(); ++i)
            CHECK(projector_distance(again.frame.item(i).subspace,
                                     fx.frame.item(i).subspace) <= 1e-12);
    }
}

TEST_CASE("file round-trip through disk") {
    TempFile tmp("roundtrip.json");
    const Fixture fx = make_fixture("two_excess_h4");
    write_frame_file(tmp.path, fx.frame, fx.decomposition, {}, fx.label);
    const ParsedFrame back = parse_frame_file(tmp.path);
    CHECK(back.frame.ambient_dim() == 4);
    CHECK(back.decomposition.has_value());
}

TEST_CASE("parse errors carry the right types") {
    TempFile tmp("bad.json");

    tmp.write("{ not json");
    CHECK_THROWS_AS(parse_frame_file(tmp.path), ParseError);

    tmp.write(R"({"dim": 0, "subspaces": []})");
    CHECK_THROWS_AS(parse_frame_file(tmp.path), ParseError);

    tmp.write(R"({"dim": 2, "subspaces": []})");
    CHECK_THROWS_AS(parse_frame_file(tmp.path), ParseError);

    tmp.write(R"({"dim": 2, "subspaces": [{"basis": [[1, 0]], "weight": 0.0}]})");
    CHECK_THROWS_AS(parse_frame_file(tmp.path), NonpositiveWeightError);

    tmp.write(R"({"dim": 3, "subspaces": [{"basis": [[1,0,0],[2,0,0]], "weight": 1.0}]})");
    CHECK_THROWS_AS(parse_frame_file(tmp.path), RankDeficientBasisError);

    tmp.write(R"({"dim": 2, "subspaces": [
        {"basis": [[1,0]], "weight": 1.0, "label": "a"},
        {"basis": [[0,1]], "weight": 1.0, "label": "a"}]})");
    CHECK_THROWS_AS(parse_frame_file(tmp.path), ParseError);

    CHECK_THROWS_AS(parse_frame_file("/tmp/fframe_io_missing_file.json"), ParseError);
}

TEST_CASE("decomposition blocks are validated on load") {
    TempFile tmp("dec.json");

    // unknown label
    tmp.write(R"({"dim": 2, "subspaces": [
        {"basis": [[1,0]], "weight": 1.0, "label": "a"},
        {"basis": [[0,1]], "weight": 1.0, "label": "b"}],
        "decomposition": {"riesz": ["zebra"], "excess": []}})");
    CHECK_THROWS_AS(parse_frame_file(tmp.path), BadDecompositionError);

    // components that do not sum to the excess vector
    tmp.write(R"({"dim": 2, "subspaces": [
        {"basis": [[1,0]], "weight": 1.0, "label": "x"},
        {"basis": [[1,0]], "weight": 1.0, "label": "w1"},
        {"basis": [[0,1]], "weight": 1.0, "label": "w2"}],
        "decomposition": {"riesz": ["w1", "w2"],
          "excess": [{"vector": [1, 0], "host": null,
                      "components": [{"riesz": "w1", "vector": [0.5, 0]}]}]}})");
    CHECK_THROWS_AS(parse_frame_file(tmp.path), BadDecompositionError);

    // well-formed standalone declaration parses
    tmp.write(R"({"dim": 2, "subspaces": [
        {"basis": [[1,0]], "weight": 1.0, "label": "x"},
        {"basis": [[1,0]], "weight": 1.0, "label": "w1"},
        {"basis": [[0,1]], "weight": 1.0, "label": "w2"}],
        "decomposition": {"riesz": ["w1", "w2"],
          "excess": [{"vector": [1, 0], "host": null,
                      "components": [{"riesz": "w1", "vector": [1, 0]}]}]}})");
    const ParsedFrame parsed = parse_frame_file(tmp.path);
    REQUIRE(parsed.decomposition.has_value());
    CHECK(parsed.decomposition->riesz_items.size() == 2);
}

TEST_CASE("default labels are assigned when missing") {
    TempFile tmp("labels.json");
    tmp.write(R"({"dim": 2, "subspaces": [
        {"basis": [[1,0]], "weight": 1.0},
        {"basis": [[0,1]], "weight": 2.5}]})");
    const ParsedFrame parsed = parse_frame_file(tmp.path);
    CHECK(parsed.labels[0] == "s0");
    CHECK(parsed.labels[1] == "s1");
    CHECK(parsed.frame.item(1).weight == 2.5);
}
