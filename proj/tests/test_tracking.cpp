#include <doctest.h>

#include <cmath>
#include <random>

#include "normspec/errors.hpp"
#include "normspec/tracking.hpp"
#include "oracles.hpp"

using namespace normspec;

namespace {

Poly2 X() { return Poly2::x(); }
Poly2 K(double c) { return Poly2(Complex(c)); }

MatrixFamily excont_loop(double r) {
    MatrixFamily F = MatrixFamily::expr1(2, {"0", std::to_string(r) + "*exp(i*t)", std::to_string(r), "0"}, "excont");
    F.set_domain({{0.0, 2 * M_PI}});
    return F;
}

}  // namespace

TEST_CASE("crossing at a node gives proximity branches") {
    const auto F = MatrixFamily::poly1(2, {K(0), X(), X(), K(0)});
    const auto B = track_curve(F, -1.0, 1.0, 20);
    for (int k = 0; k < B.nodes(); ++k) {
        const double t = B.grid[k];
        CHECK(std::abs(B.values[k][0] + std::abs(t)) < 1e-12);
        CHECK(std::abs(B.values[k][1] - std::abs(t)) < 1e-12);
    }
}

TEST_CASE("crossing between nodes") {
    const auto F = MatrixFamily::poly1(2, {K(0), X(), X(), K(0)});
    const auto B = track_curve(F, -1.0, 1.0, 21);
    for (int k = 0; k < B.nodes(); ++k) {
        const double t = B.grid[k];
        CHECK(std::abs(B.values[k][0] + std::abs(t)) < 1e-12);
    }
}

TEST_CASE("never-crossing branches keep identity permutations") {
    const auto F = MatrixFamily::poly1(2, {X(), K(0), K(0), X() + K(1)});
    const auto B = track_curve(F, -2.0, 2.0, 40);
    CHECK(B.nodes() == 41);
    for (int k = 0; k < B.nodes(); ++k) {
        CHECK(std::abs(B.values[k][0] - B.grid[k]) < 1e-12);
        CHECK(std::abs(B.values[k][1] - B.grid[k] - 1.0) < 1e-12);
    }
}

TEST_CASE("loop holonomy") {
    const double r = 0.5;
    const auto F = excont_loop(r);
    const auto c = make_curve(F);
    const auto B = track_curve(c, 0.0, 2 * M_PI, 64);
    // Closed form: the branches are +-r e^{i theta/2}.
    const Complex s0 = B.values[0][0] / r;
    for (int k = 0; k < B.nodes(); ++k) {
        const Complex e = r * std::exp(Complex(0, B.grid[k] / 2));
        CHECK(std::abs(B.values[k][0] - s0 * e) < 1e-10);
        CHECK(std::abs(B.values[k][1] + s0 * e) < 1e-10);
    }
    CHECK(holonomy(B, c) == std::vector<int>{1, 0});

    const auto D = MatrixFamily::poly1(2, {X(), K(0), K(0), X() + K(1)});
    const auto dc = make_curve(D);
    CHECK_THROWS_AS(holonomy(track_curve(dc, 0.0, 1.0, 4), dc), NotALoop);

    MatrixFamily circle = MatrixFamily::expr1(2, {"cos(t)", "0", "0", "cos(t)+1"});
    const auto cc = make_curve(circle);
    CHECK(holonomy(track_curve(cc, 0.0, 2 * M_PI, 32), cc) == std::vector<int>{0, 1});
    const auto kc = make_curve(MatrixFamily::poly1(2, {K(1), K(0), K(0), K(1)}));
    CHECK(holonomy(track_curve(kc, 0.0, 1.0, 4), kc) == std::vector<int>{0, 1});
}

TEST_CASE("one-sided derivative formula") {
    Mat A = Mat::Zero(2, 2), Ap = Mat::Zero(2, 2);
    Ap(0, 0) = 3;
    Ap(1, 1) = 5;
    CHECK(onesided_derivative(A, Ap, 0.0, Vec::Unit(2, 0)) == Complex(3));
    A << 0, 1, 1, 0;
    Ap << 0, 1, 1, 0;
    Vec w(2);
    w << 1, 1;
    w /= std::sqrt(2.0);
    CHECK(std::abs(onesided_derivative(A, Ap, 1.0, w) - 1.0) < 1e-15);
    CHECK(std::abs(onesided_derivative(A, Mat::Identity(2, 2), 1.0, w) - 1.0) < 1e-15);
    CHECK_THROWS_AS(onesided_derivative(A, Ap, -1.0, w), NotAnEigenpair);
}

TEST_CASE("multiset fidelity and shuffled starts differ by one permutation") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3;
        const Mat U = random_unitary(n, rng);
        std::vector<Poly2> d;
        for (int k = 0; k < n; ++k) d.push_back(Poly2::from_univariate({oracle::rand_c(rng), oracle::rand_c(rng), oracle::rand_c(rng)}));
        std::vector<Poly2> e(n * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) e[i * n + j] += d[k] * (U(i, k) * std::conj(U(j, k)));
        const auto F = MatrixFamily::poly1(n, e);
        const auto B1 = track_curve(F, -1.0, 1.0, 50);
        for (int k = 0; k < B1.nodes(); k += 7) {
            const auto ref = poly_roots(char_poly(F.eval(B1.grid[k])));
            CHECK(oracle::multiset_distance(B1.values[k], ref) < 1e-8);
        }
        TrackOptions opt;
        opt.initial_order = {2, 0, 1};
        const auto B2 = track_curve(F, -1.0, 1.0, 50, opt);
        REQUIRE(B1.nodes() == B2.nodes());
        // B2 column j equals B1 column opt.initial_order... determined at node 0.
        std::vector<int> map(n);
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l)
                if (B2.values[0][j] == B1.values[0][l]) map[j] = l;
        for (int k = 0; k < B1.nodes(); ++k)
            for (int j = 0; j < n; ++j) CHECK(std::abs(B2.values[k][j] - B1.values[k][map[j]]) < 1e-12);
    }
}
