#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "gext/matrix.hpp"

using namespace gext;

namespace {

Matrix random_matrix(std::mt19937& rng, int r, int c, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    Matrix m(r, c);
    for (auto& v : m.a) v = d(rng);
    return m;
}

}  // namespace

TEST_CASE("column echelon reproduces A*V = H") {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 50; ++iter) {
        Matrix A = random_matrix(rng, 1 + iter % 7, 1 + (iter * 3) % 8, -5, 5);
        ColEchelon ce = column_echelon(A, true);
        Matrix AV = mat_mul(A, ce.V);
        CHECK(AV.a == ce.H.a);
        for (int c = 1; c < ce.rank; ++c) CHECK(ce.pivot_row[c] > ce.pivot_row[c - 1]);
        for (int c = ce.rank; c < A.cols; ++c)
            for (int r = 0; r < A.rows; ++r) CHECK(ce.H.at(r, c) == 0);
    }
}

TEST_CASE("kernel basis spans the kernel") {
    std::mt19937 rng(11);
    for (int iter = 0; iter < 50; ++iter) {
        Matrix A = random_matrix(rng, 2 + iter % 5, 2 + (iter * 5) % 7, -4, 4);
        Matrix K = kernel_basis(A);
        if (K.cols > 0) CHECK(mat_mul(A, K).is_zero());
        ColEchelon ce = column_echelon(A, false);
        CHECK(K.cols + ce.rank == A.cols);
    }
}

TEST_CASE("integer solve finds exact solutions") {
    std::mt19937 rng(13);
    for (int iter = 0; iter < 80; ++iter) {
        Matrix A = random_matrix(rng, 3 + iter % 4, 2 + iter % 5, -4, 4);
        std::vector<ll> x0(A.cols);
        std::uniform_int_distribution<int> d(-3, 3);
        for (auto& v : x0) v = d(rng);
        std::vector<ll> b = mat_apply(A, x0), x;
        REQUIRE(solve_integer(A, b, x));
        CHECK(mat_apply(A, x) == b);
        b[0] += 1;
        std::vector<ll> y;
        if (solve_integer(A, b, y)) CHECK(mat_apply(A, y) == b);
    }
}

TEST_CASE("smith normal form: diagonal, divisibility, transforms") {
    std::mt19937 rng(17);
    for (int iter = 0; iter < 60; ++iter) {
        Matrix A = random_matrix(rng, 1 + iter % 6, 1 + (iter * 7) % 6, -6, 6);
        SmithForm sf = smith_form(A, true, true);
        Matrix S = mat_mul(mat_mul(sf.U, A), sf.V);
        for (int i = 0; i < S.rows; ++i)
            for (int j = 0; j < S.cols; ++j) {
                if (i == j)
                    CHECK(S.at(i, j) == sf.diag[i]);
                else
                    CHECK(S.at(i, j) == 0);
            }
        for (size_t i = 1; i < sf.diag.size(); ++i)
            if (sf.diag[i - 1] != 0 && sf.diag[i] != 0) CHECK(sf.diag[i] % sf.diag[i - 1] == 0);
    }
}

TEST_CASE("known smith form") {
    Matrix A(2, 2);
    A.at(0, 0) = 2;
    A.at(0, 1) = 4;
    A.at(1, 0) = 6;
    A.at(1, 1) = 8;
    SmithForm sf = smith_form(A, false, false);
    CHECK(sf.diag == std::vector<ll>{2, 4});
}
