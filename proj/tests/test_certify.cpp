#include <doctest.h>

#include <cmath>
#include <random>

#include "normspec/certify.hpp"
#include "normspec/corpus.hpp"
#include "normspec/errors.hpp"
#include "oracles.hpp"

using namespace normspec;

namespace {

Poly2 X() { return Poly2::x(); }
Poly2 Y() { return Poly2::y(); }
Poly2 K(double c) { return Poly2(Complex(c)); }

Mat random_hermitian(int n, std::mt19937_64& rng) {
    Mat Z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Z(i, j) = oracle::rand_c(rng);
    return (Z + Z.adjoint()) / 2.0;
}

}  // namespace

TEST_CASE("Lipschitz certificate examples") {
    const auto c = make_curve(MatrixFamily::poly1(2, {X() * 3.0, K(0), K(0), X() * -3.0}));
    auto rep = lipschitz_certificate(track_curve(c, -1.0, 1.0, 20), c);
    CHECK(rep.pass);
    CHECK(std::abs(rep.worst - 3.0) < 1e-12);
    CHECK(std::abs(rep.bound - 3.0) < 1e-12);

    // ex1 on the line y = 0: branches +-|x|.
    const auto ex1 = MatrixFamily::poly2(2, {X(), Y(), Y(), -X()});
    const auto line = make_line_curve(ex1, 0.0, 0.0, 1.0, 0.0);
    rep = lipschitz_certificate(track_curve(line, -1.0, 1.0, 20), line);
    CHECK(rep.pass);
    CHECK(std::abs(rep.worst - 1.0) < 1e-12);
    CHECK(std::abs(rep.bound - 1.0) < 1e-12);
}

TEST_CASE("Weyl check") {
    const double eps = 0.25;
    Mat B = Mat::Zero(2, 2);
    B(0, 0) = eps;
    B(1, 1) = -eps;
    auto r = weyl_check(Mat::Zero(2, 2), B);
    CHECK(r.lhs == doctest::Approx(eps));
    CHECK(r.rhs == doctest::Approx(eps));
    CHECK(r.pass);
    Mat A = Mat::Zero(2, 2);
    A(0, 0) = 1;
    A(1, 1) = 2;
    B = Mat::Zero(2, 2);
    B(0, 0) = 2;
    B(1, 1) = 1;
    r = weyl_check(A, B);
    CHECK(r.lhs == 0.0);
    CHECK(r.rhs == doctest::Approx(1.0));
    CHECK_THROWS_AS(weyl_check(Mat::Ones(2, 2) * Complex(1, 1), A), NotHermitian);

    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 6;
        const Mat H = random_hermitian(n, rng), G = random_hermitian(n, rng);
        CHECK(weyl_check(H, G).pass);
        CHECK(weyl_check(Complex(0, 1) * H, Complex(0, 1) * G).pass);
    }
}

TEST_CASE("Bhatia check") {
    std::mt19937_64 rng(61);
    const Mat U = random_unitary(3, rng);
    const Mat A = U * Vec::LinSpaced(3, 0, 2).cast<Complex>().asDiagonal() * U.adjoint();
    CHECK(bhatia_check(A, A).lhs < 1e-12);
    Mat D1 = Mat::Zero(2, 2), D2 = Mat::Zero(2, 2);
    D1(0, 0) = 1;
    D1(1, 1) = -1;
    D2(0, 0) = -1;
    D2(1, 1) = 1;
    CHECK(bhatia_check(D1, D2).lhs == 0.0);
    Mat J = Mat::Zero(2, 2);
    J(0, 1) = 1;
    CHECK_THROWS_AS(bhatia_check(J, D1), NotNormal);

    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 6;
        auto normal = [&] {
            const Mat V = random_unitary(n, rng);
            Vec d(n);
            for (int i = 0; i < n; ++i) d(i) = oracle::rand_c(rng);
            return Mat(V * d.asDiagonal() * V.adjoint());
        };
        const Mat P = normal(), Q = normal();
        const auto r = bhatia_check(P, Q);
        CHECK(r.pass);
        CHECK(r.lhs == oracle::bottleneck_brute(eigenvalues(P), eigenvalues(Q)));
        CHECK(bottleneck_match(eigenvalues(P), eigenvalues(Q)).cost == r.lhs);
    }
}

TEST_CASE("continuity certificate") {
    std::vector<MatrixFamily> loops;
    for (double r : {1.0, 0.1, 0.01}) loops.push_back(excont_loop(r));
    const auto rep = continuity_certificate(loops, 64);
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.loops.size() == 3);
    for (const auto& h : rep.loops) CHECK(h.perm == std::vector<int>{1, 0});

    MatrixFamily d = MatrixFamily::expr1(2, {"cos(t)", "0", "0", "2+sin(t)"}, "diag loop");
    d.set_domain({{0.0, 2 * M_PI}});
    CHECK(continuity_certificate({d}, 64).pass);
}
