#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "collidere/expr.hpp"
#include "collidere/json_io.hpp"
#include "helpers.hpp"

using namespace collidere;

TEST_CASE("expression parsing") {
    TypeExpression e = parse_expression("2A3+4A1");
    REQUIRE(e.types.size() == 6);
    CHECK(print_expression(e.types) == "2A_3+4A_1");

    CHECK(parse_expression("K(4,3)").types.at(0) == make_named_type("K(4,3)"));
    CHECK(parse_expression(" 2 A_3 + A1 ").types.size() == 3);
    CHECK(parse_expression("A_{11}").types.at(0).delta() == 6);
    CHECK(parse_expression("J_{2,2}+X_{1,2}").types.size() == 2);

    try {
        parse_expression("A4");
        FAIL("expected SingularBranchType");
    } catch (const Error& e2) {
        CHECK(e2.code() == ErrorCode::SingularBranchType);
    }
    try {
        parse_expression("2A3++A1");
        FAIL("expected SyntaxError");
    } catch (const Error& e2) {
        CHECK(e2.code() == ErrorCode::SyntaxError);
        CHECK_FALSE(e2.args().empty());  // carries the offset
    }
    CHECK_THROWS_AS(parse_expression(""), Error);
    CHECK_THROWS_AS(parse_expression("0A1"), Error);
    CHECK_THROWS_AS(parse_expression("Q5"), Error);
}

TEST_CASE("parse after print is the identity") {
    std::mt19937_64 rng(31337);
    const std::vector<std::string> names = {"A1", "A3", "A7", "D4",     "D6",    "J10",
                                            "J22", "X9", "X12", "K(3,3)", "K(4,2)", "K5"};
    for (int iter = 0; iter < 100; ++iter) {
        std::vector<SingularityType> types;
        std::uniform_int_distribution<int> count(1, 6);
        int n = count(rng);
        for (int i = 0; i < n; ++i) {
            std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
            types.push_back(make_named_type(names[pick(rng)]));
        }
        types = normalize_targets(types);
        CHECK(parse_expression(print_expression(types)).types == types);
    }
}

TEST_CASE("graph json round trip") {
    std::mt19937_64 rng(5150);
    for (int iter = 0; iter < 100; ++iter) {
        SingularityType t = testing::random_type(rng);
        DualGraph g = t.graph();
        CHECK(canonical_form(graph_from_json(graph_to_json(g))) == t);
    }
    CHECK_THROWS_AS(graph_from_json(Json{{"branches", 2}}), Error);
}

TEST_CASE("graph files and @ terms") {
    std::string path = "expr_io_test_graph.json";
    {
        std::ofstream out(path);
        out << graph_to_json(make_named_type("J10").graph()).dump();
    }
    CHECK(canonical_form(load_graph_file(path)) == make_named_type("J10"));
    TypeExpression e = parse_expression("2@" + path);
    CHECK(e.types.size() == 2);
    CHECK(e.types.at(0) == make_named_type("J10"));
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_graph_file("no_such_file.json"), Error);
}

TEST_CASE("spectrum and signature serialization") {
    Json sp = spectrum_to_json(spectrum({2, 4}));
    CHECK(sp.dump() == R"([["-1/4",1],["0/1",1],["1/4",1]])");
    Json sig = signature_to_json(signature_steenbrink({3, 6}));
    CHECK(sig["plus"] == 0);
    CHECK(sig["zero"] == 2);
    CHECK(sig["minus"] == 8);
}

TEST_CASE("witness json round trip") {
    auto targets = normalize_targets(parse_expression("3D4+3A1").types);
    auto r = decompose_check(make_named_type("K(4,2)"), targets, {});
    REQUIRE(r.status == DecomposeStatus::Witness);
    Json j = witness_to_json(targets, *r.witness);
    DecompositionWitness back = witness_from_json(j);
    CHECK(back == *r.witness);
    CHECK(verify_witness(make_named_type("K(4,2)"), targets, back));
}

TEST_CASE("incidence serialization") {
    Json j = incidence_to_json(construct_omp_witness(4, {3}));
    CHECK(j["lines"] == 4);
    CHECK(j["points"].size() == 4);  // one triple point + 3 nodes
    CHECK(j["points"][0]["lines"].size() == 3);
}
