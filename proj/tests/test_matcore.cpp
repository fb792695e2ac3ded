#include <catch2/catch_amalgamated.hpp>

#include "steinkit/matrix.hpp"
#include "steinkit/spectral.hpp"
#include "support.hpp"

using namespace steinkit;
using sktest::multiset_match;
using sktest::random_matrix;

TEST_CASE("vec stacks columns") {
    CMatrix x{{1.0, 2.0}, {3.0, 4.0}};
    CVector v = vec(x);
    REQUIRE(v.dim() == 4);
    CHECK(v[0] == cplx(1.0, 0.0));
    CHECK(v[1] == cplx(3.0, 0.0));
    CHECK(v[2] == cplx(2.0, 0.0));
    CHECK(v[3] == cplx(4.0, 0.0));

    CVector vi = vec(CMatrix::identity(2));
    CHECK(vi[0] == cplx(1.0, 0.0));
    CHECK(vi[1] == cplx(0.0, 0.0));
    CHECK(vi[2] == cplx(0.0, 0.0));
    CHECK(vi[3] == cplx(1.0, 0.0));
}

TEST_CASE("vec carries AXB to the Kronecker form") {
    auto gen = sktest::rng(101);
    for (int t = 0; t < 20; ++t) {
        CMatrix a = random_matrix(2, 3, gen);
        CMatrix x = random_matrix(3, 2, gen);
        CMatrix b = random_matrix(2, 2, gen);
        CVector lhs = vec(a * x * b);
        CVector rhs = kron(transpose(b), a) * vec(x);
        double scale = norm_fro(a) * norm_fro(x) * norm_fro(b) + 1.0;
        for (std::size_t i = 0; i < lhs.dim(); ++i)
            REQUIRE(std::abs(lhs[i] - rhs[i]) <= 1e-13 * scale);
    }
}

TEST_CASE("unvec inverts vec") {
    CVector v(std::vector<cplx>{1.0, 3.0, 2.0, 4.0});
    CMatrix x = unvec(v, 2, 2);
    CHECK(x(0, 0) == cplx(1.0, 0.0));
    CHECK(x(0, 1) == cplx(2.0, 0.0));
    CHECK(x(1, 0) == cplx(3.0, 0.0));
    CHECK(x(1, 1) == cplx(4.0, 0.0));

    CHECK(unvec(CVector(6), 2, 3) == CMatrix::zero(2, 3));
    CHECK_THROWS_AS(unvec(CVector(5), 2, 3), DimensionError);

    auto gen = sktest::rng(77);
    for (int t = 0; t < 100; ++t) {
        CMatrix m = random_matrix(1 + t % 5, 1 + (t / 5) % 5, gen);
        REQUIRE(unvec(vec(m), m.rows(), m.cols()) == m); // bit-identical
    }
}

TEST_CASE("kron basics and the mixed-product law") {
    CHECK(kron(CMatrix::identity(2), CMatrix::identity(3)) == CMatrix::identity(6));

    CMatrix swap{{0.0, 1.0}, {1.0, 0.0}};
    CMatrix two{{2.0}};
    CMatrix k = kron(swap, two);
    CHECK(k(0, 1) == cplx(2.0, 0.0));
    CHECK(k(1, 0) == cplx(2.0, 0.0));
    CHECK(k(0, 0) == cplx(0.0, 0.0));

    auto gen = sktest::rng(5);
    for (int t = 0; t < 10; ++t) {
        CMatrix a = random_matrix(2, 3, gen), c = random_matrix(3, 2, gen);
        CMatrix b = random_matrix(2, 2, gen), d = random_matrix(2, 3, gen);
        REQUIRE(sktest::max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) <= 1e-12);
    }
}

TEST_CASE("kron eigenvalues are pairwise products") {
    auto gen = sktest::rng(42);
    for (int t = 0; t < 10; ++t) {
        CMatrix a = random_matrix(2, 2, gen), b = random_matrix(2, 2, gen);
        Spectrum ea = eigenvalues(a), eb = eigenvalues(b);
        std::vector<cplx> expected;
        for (cplx x : ea.values)
            for (cplx y : eb.values) expected.push_back(x * y);
        REQUIRE(multiset_match(eigenvalues(kron(a, b)).values, expected, 1e-10));
    }
}

TEST_CASE("commutation matrix implements the transpose relation") {
    CMatrix p11 = commutation_matrix(1, 1);
    CHECK(p11(0, 0) == cplx(1.0, 0.0));

    CMatrix x{{1.0, 2.0}, {3.0, 4.0}};
    CVector lhs = commutation_matrix(2, 2) * vec(x);
    CVector rhs = vec(transpose(x));
    for (std::size_t i = 0; i < 4; ++i) REQUIRE(lhs[i] == rhs[i]);

    // unitary + inverse relations, exact on 0/1 entries
    CMatrix p23 = commutation_matrix(2, 3);
    CHECK(p23 * transpose(p23) == CMatrix::identity(6));
    CHECK(p23 == transpose(commutation_matrix(3, 2)));
}

TEST_CASE("commutation matrix properties over all small sizes") {
    for (std::size_t m = 1; m <= 6; ++m)
        for (std::size_t n = 1; n <= 6; ++n) {
            CMatrix p = commutation_matrix(m, n);
            REQUIRE(p * transpose(p) == CMatrix::identity(m * n));
            REQUIRE(p == transpose(commutation_matrix(n, m)));
        }
}

TEST_CASE("commutation matrix swaps Kronecker factors") {
    auto gen = sktest::rng(900);
    for (std::size_t m = 1; m <= 4; ++m)
        for (std::size_t p = 1; p <= 4; ++p) {
            const std::size_t n = 1 + (m + p) % 4, q = 1 + (m * p) % 4;
            CMatrix a = random_matrix(m, n, gen);
            CMatrix b = random_matrix(p, q, gen);
            CMatrix lhs = commutation_matrix(m, p) * kron(b, a);
            CMatrix rhs = kron(a, b) * commutation_matrix(n, q);
            REQUIRE(sktest::max_abs_diff(lhs, rhs) <= 1e-13);
        }
}

TEST_CASE("apply_f covers all four involutions") {
    CMatrix z{{cplx(1.0, 2.0)}};
    CHECK(apply_f(z, FKind::conjugate)(0, 0) == cplx(1.0, -2.0));

    CMatrix n{{0.0, cplx(0.0, 1.0)}, {0.0, 0.0}};
    CMatrix h = apply_f(n, FKind::hermitian);
    CHECK(h(0, 0) == cplx(0.0, 0.0));
    CHECK(h(1, 0) == cplx(0.0, -1.0));
    CHECK(h(0, 1) == cplx(0.0, 0.0));

    auto gen = sktest::rng(17);
    CMatrix x = random_matrix(3, 4, gen);
    for (FKind f : {FKind::identity, FKind::transpose, FKind::conjugate, FKind::hermitian})
        REQUIRE(apply_f(apply_f(x, f), f) == x);
}

TEST_CASE("arithmetic plumbing") {
    auto gen = sktest::rng(3);
    CMatrix a = random_matrix(3, 3, gen);
    CHECK(sktest::max_abs_diff(a * CMatrix::identity(3), a) == 0.0);
    CHECK(norm_fro(CMatrix::zero(2, 5)) == 0.0);

    for (int t = 0; t < 10; ++t) {
        CMatrix x = random_matrix(3, 3, gen), y = random_matrix(3, 3, gen),
                z = random_matrix(3, 3, gen);
        REQUIRE(sktest::max_abs_diff((x * y) * z, x * (y * z)) <= 1e-12);
    }

    CHECK_THROWS_AS(a * CMatrix::zero(4, 2), DimensionError);
    CHECK_THROWS_AS(a + CMatrix::zero(2, 2), DimensionError);
}

TEST_CASE("construction rejects non-finite entries") {
    std::vector<cplx> bad{cplx(1.0, 0.0), cplx(std::nan(""), 0.0)};
    CHECK_THROWS_AS(CMatrix(1, 2, bad), NonFiniteEntry);
    std::vector<cplx> inf{cplx(std::numeric_limits<double>::infinity(), 0.0)};
    CHECK_THROWS_AS(CVector(inf), NonFiniteEntry);
}

TEST_CASE("matrix_power by repeated squaring") {
    auto gen = sktest::rng(8);
    CMatrix a = random_matrix(3, 3, gen);
    CMatrix direct = a * a * a * a * a;
    REQUIRE(sktest::max_abs_diff(matrix_power(a, 5), direct) <= 1e-11 * norm_fro(direct));
    REQUIRE(matrix_power(a, 0) == CMatrix::identity(3));
}
