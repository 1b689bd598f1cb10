#include <catch2/catch_amalgamated.hpp>

#include <hjoin/exact.hpp>

#include <random>
#include <vector>

using namespace hjoin;

namespace {

IntPoly poly_of(std::initializer_list<long> lowest_first) {
    std::vector<BigInt> c;
    for (long x : lowest_first) c.emplace_back(x);
    return IntPoly(std::move(c));
}

// Test oracle: determinant of a polynomial-entry matrix by recursive
// cofactor expansion. Exponential, fine for order <= 5, and entirely
// independent of the Faddeev-LeVerrier implementation it checks.
IntPoly cofactor_det(const std::vector<std::vector<IntPoly>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return IntPoly::one();
    if (n == 1) return m[0][0];
    IntPoly det;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<std::vector<IntPoly>> minor(n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) minor[i - 1].push_back(m[i][j]);
        IntPoly term = poly_mul(m[0][k], cofactor_det(minor));
        det = poly_add(det, k % 2 ? term.negated() : term);
    }
    return det;
}

IntPoly charpoly_by_cofactor(const IntMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<std::vector<IntPoly>> m(n, std::vector<IntPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<BigInt> entry{-a(i, j)};
            if (i == j) entry.push_back(1);
            m[i][j] = IntPoly(std::move(entry));
        }
    return cofactor_det(m);
}

IntMatrix golden_assoc() {
    const long rows[5][5] = {{0, 3, 2, 0, 0},
                             {1, 0, 0, 0, 0},
                             {4, 6, 1, 3, 4},
                             {0, 0, 2, 0, 2},
                             {0, 0, 0, 1, 0}};
    IntMatrix m(5, 5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) m(i, j) = rows[i][j];
    return m;
}

} // namespace

TEST_CASE("charpoly_exact agrees with the cofactor-expansion oracle") {
    std::mt19937_64 rng(20240811);
    std::uniform_int_distribution<long> entry(-5, 5);
    for (std::size_t n = 0; n <= 5; ++n) {
        for (int trial = 0; trial < 12; ++trial) {
            IntMatrix a(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) a(i, j) = entry(rng);
            CAPTURE(n, trial);
            CHECK(charpoly_exact(a) == charpoly_by_cofactor(a));
        }
    }
}

TEST_CASE("charpoly_exact on fixed matrices") {
    IntMatrix k2(2, 2);
    k2(0, 1) = 1;
    k2(1, 0) = 1;
    CHECK(charpoly_exact(k2) == poly_of({-1, 0, 1})); // x^2 - 1

    IntMatrix p3(3, 3);
    p3(0, 1) = 1;
    p3(1, 0) = 1;
    p3(1, 2) = 1;
    p3(2, 1) = 1;
    CHECK(charpoly_exact(p3) == poly_of({0, -2, 0, 1})); // x^3 - 2x

    // det(xI - W) for the 5x5 block matrix of the nine-vertex worked example;
    // its negation is the usual det(W - xI) form of the same polynomial
    const IntPoly monic = charpoly_exact(golden_assoc());
    CHECK(monic == poly_of({42, 40, -15, -19, -1, 1}));
    CHECK(monic.negated() == poly_of({-42, -40, 15, 19, 1, -1}));

    IntMatrix empty(0, 0);
    CHECK(charpoly_exact(empty) == IntPoly::one());

    IntMatrix rect(2, 3);
    CHECK_THROWS_AS(charpoly_exact(rect), error);
}

TEST_CASE("charpoly of symmetric 0/1 matrices is monic of full degree") {
    std::mt19937_64 rng(99);
    std::bernoulli_distribution bit(0.4);
    for (std::size_t n : {1u, 4u, 9u, 16u}) {
        IntMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = bit(rng) ? 1 : 0;
        const IntPoly p = charpoly_exact(a);
        CHECK(p.is_monic());
        CHECK(p.degree() == static_cast<long>(n));
    }
}

TEST_CASE("rank_exact on fixed matrices") {
    CHECK(rank_exact(IntMatrix::identity(3)) == 3);

    IntMatrix ones(4, 2);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 2; ++j) ones(i, j) = 1;
    CHECK(rank_exact(ones) == 1);

    // columns (j, Aj) for the star on four vertices with center 0
    IntMatrix w(4, 2);
    w(0, 0) = 1;
    w(0, 1) = 3;
    for (std::size_t i = 1; i < 4; ++i) {
        w(i, 0) = 1;
        w(i, 1) = 1;
    }
    CHECK(rank_exact(w) == 2);

    CHECK(rank_exact(IntMatrix(0, 0)) == 0);
    CHECK(rank_exact(IntMatrix(3, 0)) == 0);
}

TEST_CASE("rank_exact is invariant under row permutations and row operations") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> entry(-4, 4);
    std::uniform_int_distribution<long> mult(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t rows = 2 + trial % 5, cols = 2 + (trial / 5) % 4;
        IntMatrix a(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) a(i, j) = entry(rng);
        const std::size_t base = rank_exact(a);

        IntMatrix b = a;
        std::uniform_int_distribution<std::size_t> row(0, rows - 1);
        for (int k = 0; k < 6; ++k) b.swap_rows(row(rng), row(rng));
        CHECK(rank_exact(b) == base);

        IntMatrix c = a;
        const std::size_t src = row(rng);
        std::size_t dst = row(rng);
        if (src == dst) dst = (dst + 1) % rows;
        const BigInt f = mult(rng);
        for (std::size_t j = 0; j < cols; ++j) c(dst, j) += f * c(src, j);
        CHECK(rank_exact(c) == base);
    }
}

TEST_CASE("solve_exact on fixed systems") {
    RationalVector b{BigRat(1), BigRat(2)};
    const RationalVector x = solve_exact(IntMatrix::identity(2), b);
    CHECK(x[0] == 1);
    CHECK(x[1] == 2);

    // walk matrix (j) of an edge: A j = (1,1), so the main polynomial is x-1
    IntMatrix w_edge(2, 1);
    w_edge(0, 0) = 1;
    w_edge(1, 0) = 1;
    const RationalVector c_edge = solve_exact(w_edge, {BigRat(1), BigRat(1)});
    REQUIRE(c_edge.size() == 1);
    CHECK(c_edge[0] == 1);

    // path on three vertices: W = (j, Aj), A^2 j = (2,2,2) gives (2,0)
    IntMatrix w_p3(3, 2);
    w_p3(0, 0) = 1;
    w_p3(0, 1) = 1;
    w_p3(1, 0) = 1;
    w_p3(1, 1) = 2;
    w_p3(2, 0) = 1;
    w_p3(2, 1) = 1;
    const RationalVector c_p3 = solve_exact(w_p3, {BigRat(2), BigRat(2), BigRat(2)});
    REQUIRE(c_p3.size() == 2);
    CHECK(c_p3[0] == 2);
    CHECK(c_p3[1] == 0);
}

TEST_CASE("solve_exact rejects rank-deficient and inconsistent systems") {
    IntMatrix dep(2, 2);
    dep(0, 0) = 1;
    dep(0, 1) = 2;
    dep(1, 0) = 2;
    dep(1, 1) = 4;
    CHECK_THROWS_AS(solve_exact(dep, {BigRat(1), BigRat(2)}), error);

    IntMatrix tall(3, 1);
    tall(0, 0) = 1;
    tall(1, 0) = 1;
    tall(2, 0) = 1;
    CHECK_THROWS_AS(solve_exact(tall, {BigRat(1), BigRat(1), BigRat(2)}), error);
}

TEST_CASE("poly division on fixed quotients") {
    CHECK(poly_divide_exact(poly_of({-1, 0, 1}), poly_of({-1, 1})) == poly_of({1, 1}));
    // x^4 - 3x^2 over x^2 - 3 leaves x^2
    CHECK(poly_divide_exact(poly_of({0, 0, -3, 0, 1}), poly_of({-3, 0, 1})) ==
          poly_of({0, 0, 1}));
    // x^3 - 2x over x^2 - 2 leaves x
    CHECK(poly_divide_exact(poly_of({0, -2, 0, 1}), poly_of({-2, 0, 1})) == poly_of({0, 1}));

    CHECK_THROWS_AS(poly_divide_exact(poly_of({1, 0, 1}), poly_of({-1, 1})), error);
    CHECK_THROWS_AS(poly_divide_exact(poly_of({1, 1}), poly_of({-1, 2})), error);
    CHECK(poly_divide_exact(IntPoly{}, poly_of({-1, 1})).is_zero());
}

TEST_CASE("poly_divide_exact undoes poly_mul for monic divisors") {
    std::mt19937_64 rng(271828);
    std::uniform_int_distribution<long> entry(-6, 6);
    std::uniform_int_distribution<std::size_t> deg(0, 4);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<BigInt> ac(deg(rng) + 1), bc(deg(rng) + 1);
        for (auto& x : ac) x = entry(rng);
        for (auto& x : bc) x = entry(rng);
        bc.back() = 1; // monic divisor
        IntPoly a(std::move(ac));
        const IntPoly b(std::move(bc));
        if (a.is_zero()) a = poly_of({3});
        CHECK(poly_divide_exact(poly_mul(a, b), b) == a);
    }
}

TEST_CASE("poly_mul and evaluation") {
    CHECK(poly_mul(poly_of({-1, 1}), poly_of({1, 1})) == poly_of({-1, 0, 1}));
    CHECK(poly_eval_at_int(poly_of({-3, 0, 1}), 2) == 1);
    CHECK(poly_eval_at_int(IntPoly{}, 5) == 0);
    CHECK(poly_mul(IntPoly{}, poly_of({1, 1})).is_zero());
    CHECK(poly_to_string(poly_of({42, 40, -15, -19, -1, 1})) ==
          "x^5 - x^4 - 19x^3 - 15x^2 + 40x + 42");
    CHECK(poly_to_string(IntPoly{}) == "0");
}
