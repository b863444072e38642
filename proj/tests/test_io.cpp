#include <doctest.h>

#include <random>

#include "normspec/corpus.hpp"
#include "normspec/io.hpp"

using namespace normspec;

namespace {

MatrixFamily random_poly_family(std::mt19937_64& rng, int params) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> deg(0, 4);
    const int n = 1 + int(rng() % 4);
    std::vector<Poly2> e(n * n);
    for (auto& p : e)
        for (int k = 0; k < 3; ++k)
            p += Poly2::monomial({u(rng) * 1e3, u(rng) / 7.0}, deg(rng), params == 2 ? deg(rng) : 0);
    return params == 1 ? MatrixFamily::poly1(n, e, "r") : MatrixFamily::poly2(n, e, "r");
}

}  // namespace

TEST_CASE("family json round trip is bit exact") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 50; ++k) {
        const auto F = random_poly_family(rng, 1 + k % 2);
        const Json j = family_to_json(F);
        const auto G = family_from_json(Json::parse(j.dump()));
        CHECK(G.kind() == F.kind());
        CHECK(G.n() == F.n());
        CHECK(G.poly_entries() == F.poly_entries());
        CHECK(family_to_json(G).dump() == j.dump());
    }
}

TEST_CASE("expression family json keeps overrides") {
    const auto F = ex4_family(1.2, 2.5);
    const auto G = family_from_json(Json::parse(family_to_json(F).dump()));
    CHECK(G.kind() == MatrixFamily::Kind::Expr1);
    CHECK(G.expr_sources() == F.expr_sources());
    REQUIRE(G.overrides().size() == 1);
    CHECK(G.eval(0.0).norm() == 0.0);
    CHECK((G.eval(0.3) - F.eval(0.3)).norm() == 0.0);
}

TEST_CASE("malformed family json") {
    const Json good = family_to_json(ex1_family());
    CHECK_THROWS_AS(family_from_json(Json::parse("[1,2]")), FormatError);
    Json j = good;
    j.erase("kind");
    CHECK_THROWS_AS(family_from_json(j), FormatError);
    j = good;
    j["kind"] = "poly3";
    CHECK_THROWS_AS(family_from_json(j), FormatError);
    j = good;
    j["entries"].erase(0);
    CHECK_THROWS_AS(family_from_json(j), FormatError);
    j = good;
    j["entries"][0] = {{"1", {1.0, 0.0}}};
    CHECK_THROWS_AS(family_from_json(j), FormatError);
    j = good;
    j["entries"][0] = {{"1,-1", {1.0, 0.0}}};
    CHECK_THROWS_AS(family_from_json(j), FormatError);
    j = good;
    j["domain"] = {{1.0, 0.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(family_from_json(j), FormatError);
    CHECK_THROWS_AS(read_family("/nonexistent/family.json"), FormatError);
}

TEST_CASE("matrix json accepts real entries") {
    const Mat M = matrix_from_json(Json::parse("[[1, [0, 2]], [3.5, -1]]"));
    CHECK(M(0, 1) == Complex(0, 2));
    CHECK(M(1, 0) == Complex(3.5, 0));
    CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1, 2]]")), FormatError);
}

TEST_CASE("branch set csv") {
    BranchSet B;
    B.grid = {0.0, 0.5};
    B.values = {{Complex(1, 0), Complex(-1, 0)}, {Complex(0.25, 0.5), Complex(-0.25, -0.5)}};
    B.perms = {{0, 1}, {1, 0}};
    B.tags = {Smoothness::C0, Smoothness::C0};
    CHECK(branchset_csv(B) == "t,re_1,im_1,re_2,im_2\n0,1,0,-1,0\n0.5,0.25,0.5,-0.25,-0.5\n");
    const Json j = branchset_json(B);
    CHECK(j["perms"][1] == Json::array({1, 0}));
    CHECK(j["tags"][0] == "C0");
}

TEST_CASE("chart tree json") {
    const auto T = resolve_family(ex1_family());
    const Json j = chart_tree_to_json(T);
    CHECK(j["depth"] == 1);
    CHECK(j["nodes"][1]["path"] == "s1");
    CHECK(j["nodes"][1]["alpha"] == Json::array({1, 0}));
    CHECK(chart_tree_summary(T).find("[s1] resolved distinct") != std::string::npos);
    CHECK(chart_tree_to_json(resolve_family(ex1_family())).dump() == j.dump());
}
