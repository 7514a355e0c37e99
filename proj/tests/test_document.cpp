#include <doctest.h>

#include <fstream>
#include <sstream>

#include "dga/runner.hpp"
#include "dga/series.hpp"

using namespace dga;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string kFixtures = DGA_FIXTURE_DIR;

}  // namespace

TEST_CASE("sphere2 fixture parses to the sphere algebra") {
    auto doc = parse_document(slurp(kFixtures + "/sphere2.dg"));
    CHECK(doc.field_kind == Document::FieldKind::Rational);
    CHECK(doc.win_lo == -2);
    CHECK(doc.win_hi == 12);
    RationalField q;
    auto u = materialize(doc, q);
    CHECK(u.alg->validate().empty());
    CHECK(u.alg->dim(0) == 1);
    CHECK(u.alg->dim(2) == 1);
    CHECK(u.alg->dim(1) == 0);
    auto ref = sphere_algebra(q, 2);
    CHECK(u.alg->complex().space().support() == ref->complex().space().support());
    REQUIRE(u.find("N"));
    CHECK((*u.find("N"))->validate().empty());
}

TEST_CASE("wedge fixture over F5 with a twisted module") {
    auto doc = parse_document(slurp(kFixtures + "/wedge23_f5.dg"));
    PrimeField f5(5);
    auto u = materialize(doc, f5);
    CHECK(u.alg->validate().empty());
    REQUIRE(u.find("M"));
    CHECK((*u.find("M"))->validate().empty());
}

TEST_CASE("round trip: serialize(parse(doc)) reparses equal") {
    for (const std::string name : {"sphere2.dg", "wedge23_f5.dg"}) {
        auto doc = parse_document(slurp(kFixtures + "/" + name));
        auto text = serialize_document(doc);
        auto doc2 = parse_document(text);
        CHECK(doc == doc2);
        CHECK(serialize_document(doc2) == text);
    }
}

TEST_CASE("document_from round-trips constructed modules") {
    RationalField q;
    auto A = truncated_polynomial_algebra(q, 2, 3);
    auto M = free_module(A, {{"a", 0}, {"b", 1}});
    auto D = dual_module(algebra_as_module(A, Side::Left));
    auto doc = document_from(A, {{"M", M}, {"D", D}}, Window(-8, 8));
    auto u = materialize(parse_document(serialize_document(doc)), q);
    CHECK(u.alg->validate().empty());
    auto M2 = *u.find("M");
    auto D2 = *u.find("D");
    CHECK(M2->validate().empty());
    CHECK(D2->validate().empty());
    CHECK(D2->side() == Side::Right);
    for (int j = -8; j <= 8; ++j) {
        CHECK(M->complex().space().dim(j).value_or(0) == M2->complex().space().dim(j).value_or(0));
        CHECK(D->complex().space().dim(j).value_or(0) == D2->complex().space().dim(j).value_or(0));
    }
    // homological invariants survive the round trip
    auto b1 = betti_numbers(M, Window(0, 8)).beta;
    auto b2 = betti_numbers(M2, Window(0, 8)).beta;
    CHECK(b1 == b2);
}

TEST_CASE("positioned parse errors") {
    SUBCASE("empty document") {
        CHECK_THROWS_AS(parse_document(""), ParseError);
        try {
            parse_document("");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("missing field spec") != std::string::npos);
        }
    }
    SUBCASE("unknown key with line number") {
        std::string text = "[field]\nrational\n[window]\n0 4\n[algebra]\nbasis 0 one\nfrobnicate\n";
        try {
            parse_document(text);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 7);
        }
    }
    SUBCASE("undefined label") {
        std::string text =
            "[field]\nrational\n[window]\n0 4\n[algebra]\nbasis 0 one\nbasis 2 x\nd x = 1 y\n";
        RationalField q;
        auto doc = parse_document(text);
        CHECK_THROWS_AS(materialize(doc, q), ParseError);
    }
    SUBCASE("product landing outside the window") {
        std::string text =
            "[field]\nrational\n[window]\n0 3\n[algebra]\ntruncated\nbasis 0 one\nbasis 2 x\nx * x = 0\n";
        RationalField q;
        auto doc = parse_document(text);
        try {
            materialize(doc, q);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("outside the window") != std::string::npos);
        }
    }
    SUBCASE("degree outside window") {
        std::string text = "[field]\nrational\n[window]\n0 3\n[algebra]\nbasis 0 one\nbasis 5 x\n";
        RationalField q;
        CHECK_THROWS_AS(materialize(parse_document(text), q), ParseError);
    }
}

TEST_CASE("runner: basic commands on the sphere2 fixture") {
    auto doc = parse_document(slurp(kFixtures + "/sphere2.dg"));
    SUBCASE("validate") {
        auto r = run_command(doc, {"validate"});
        CHECK(r.exit_code == 0);
        CHECK(r.machine.find("status: ok") != std::string::npos);
    }
    SUBCASE("betti k is all ones, exit 0") {
        auto r = run_command(doc, {"betti", "k"});
        CHECK(r.exit_code == 0);
        for (int j = 0; j <= 8; ++j)
            CHECK(r.machine.find("beta " + std::to_string(j) + " = 1") != std::string::npos);
    }
    SUBCASE("pcd k is window-limited, exit 2") {
        auto r = run_command(doc, {"pcd", "k"});
        CHECK(r.exit_code == 2);
        CHECK(r.machine.find("at-least") != std::string::npos);
        CHECK(r.machine.find("window-limited") != std::string::npos);
    }
    SUBCASE("pcd R is exact, exit 0") {
        auto r = run_command(doc, {"pcd", "R"});
        CHECK(r.exit_code == 0);
        CHECK(r.machine.find("pcd = 0 (exact)") != std::string::npos);
    }
    SUBCASE("tensor and series with expressions") {
        auto r = run_command(doc, {"tensor", "dual(R)", "R"});
        CHECK(r.exit_code == 0);
        CHECK(r.machine.find("H^-2 dim = 1") != std::string::npos);
        auto s = run_command(doc, {"series", "dual(R)", "shift(R,-1)"});
        CHECK(s.exit_code == 0);
        CHECK(s.machine.find("1*t^-1 + 1*t^1") != std::string::npos);
    }
    SUBCASE("tower of the named module") {
        auto r = run_command(doc, {"tower", "N", "--up-to", "6"});
        CHECK(r.exit_code == 0);
        CHECK(r.machine.find("terminated") != std::string::npos);
    }
    SUBCASE("bad module expression is an input error") {
        auto r = run_command(doc, {"betti", "nope"});
        CHECK(r.exit_code == 3);
    }
    SUBCASE("tasks") {
        auto r = run_command(doc, {"tasks"});
        CHECK(r.exit_code == 0);
    }
}

TEST_CASE("runner determinism: identical runs give byte-identical reports") {
    auto doc = parse_document(slurp(kFixtures + "/wedge23_f5.dg"));
    for (auto args : std::vector<std::vector<std::string>>{
             {"betti", "M"}, {"cohomology", "M"}, {"verify", "ab", "--seed", "7", "--count", "3"}}) {
        auto a = run_command(doc, args);
        auto b = run_command(doc, args);
        CHECK(a.machine == b.machine);
        CHECK(a.exit_code == b.exit_code);
    }
    auto x = run_command(std::nullopt, {"atlas", "wedge", "2", "3", "--field", "p5"});
    auto y = run_command(std::nullopt, {"atlas", "wedge", "2", "3", "--field", "p5"});
    CHECK(x.machine == y.machine);
}

TEST_CASE("atlas emission feeds back into the parser") {
    auto r = run_command(std::nullopt, {"atlas", "trunc", "2", "3", "--window", "-2", "10"});
    REQUIRE(r.exit_code == 0);
    auto doc = parse_document(r.machine);
    RationalField q;
    auto u = materialize(doc, q);
    CHECK(u.alg->validate().empty());
    CHECK(u.alg->dim(4) == 1);
    auto r2 = run_command(std::nullopt,
                          {"atlas", "random", "wedge", "2", "3", "--seed", "11", "--field", "p5"});
    REQUIRE(r2.exit_code == 0);
    auto doc2 = parse_document(r2.machine);
    PrimeField f5(5);
    auto u2 = materialize(doc2, f5);
    REQUIRE(u2.find("M"));
    CHECK((*u2.find("M"))->validate().empty());
}

TEST_CASE("verify runs standalone with exit code semantics") {
    auto r = run_command(std::nullopt, {"verify", "ab", "--seed", "7", "--count", "2"});
    CHECK(r.exit_code == 0);
    CHECK(r.machine.find("counterexamples: 0") != std::string::npos);
}
