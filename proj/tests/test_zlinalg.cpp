#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "gk/zlinalg.hpp"

using namespace gk;

namespace {

long long nmod(long long x, long long n) {
    long long r = x % n;
    return r < 0 ? r + n : r;
}

Mat matmul(const Mat& a, const Mat& b) {
    Mat c(a.size(), Vec(b.empty() ? 0 : b[0].size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            for (std::size_t j = 0; j < c[i].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

// additive closure of a generating set inside (Z/n)^dim
std::set<Vec> span_mod_n(const Mat& gens, long long n, int dim) {
    std::set<Vec> seen{Vec(dim, 0)};
    std::vector<Vec> todo(seen.begin(), seen.end());
    while (!todo.empty()) {
        Vec x = todo.back();
        todo.pop_back();
        for (const Vec& g : gens) {
            Vec y(dim);
            for (int j = 0; j < dim; ++j) y[j] = nmod(x[j] + g[j], n);
            if (seen.insert(y).second) todo.push_back(y);
        }
    }
    return seen;
}

Mat random_unimodular(int n, std::mt19937& rng) {
    Mat u(n, Vec(n, 0));
    for (int i = 0; i < n; ++i) u[i][i] = 1;
    std::uniform_int_distribution<int> idx(0, n - 1), coef(-3, 3), kind(0, 2);
    for (int step = 0; step < 12; ++step) {
        int i = idx(rng), j = idx(rng);
        switch (kind(rng)) {
        case 0:
            if (i != j) {
                int k = coef(rng);
                for (int c = 0; c < n; ++c) u[i][c] += k * u[j][c];
            }
            break;
        case 1:
            std::swap(u[i], u[j]);
            break;
        default:
            for (int c = 0; c < n; ++c) u[i][c] = -u[i][c];
        }
    }
    return u;
}

Mat random_matrix(int r, int c, int bound, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(-bound, bound);
    Mat a(r, Vec(c));
    for (auto& row : a)
        for (auto& x : row) x = d(rng);
    return a;
}

}  // namespace

TEST_CASE("SNF frozen examples") {
    IntSnf s = snf_dense({{2, 0}, {0, 3}});
    CHECK(s.diagonal == Vec{1, 6});

    CHECK(snf_dense({{0, 0}, {0, 0}}).diagonal == Vec{0, 0});
    CHECK(snf_dense({{2, 4}, {4, 8}}).diagonal == Vec{2, 0});

    AbelianInvariants c1 = cokernel_invariants(SparseIntMatrix::from_dense({{2, 0}, {0, 3}}));
    CHECK(c1.factors == Vec{6});
    CHECK(c1.free_rank == 0);
    AbelianInvariants c2 = cokernel_invariants(SparseIntMatrix::from_dense({{0, 0}, {0, 0}}));
    CHECK(c2.factors.empty());
    CHECK(c2.free_rank == 2);
    AbelianInvariants c3 = cokernel_invariants(SparseIntMatrix::from_dense({{2, 4}, {4, 8}}));
    CHECK(c3.factors == Vec{2});
    CHECK(c3.free_rank == 1);
}

TEST_CASE("SNF transformation matrices satisfy U m V = D exactly") {
    std::mt19937 rng(7);
    for (int it = 0; it < 60; ++it) {
        int r = 1 + it % 5, c = 1 + (it / 5) % 5;
        Mat a = random_matrix(r, c, 9, rng);
        IntSnf s = snf_dense(a, true);
        Mat d = matmul(matmul(s.U, a), s.V);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) REQUIRE(d[i][j] == (i == j && i < (int)s.diagonal.size() ? s.diagonal[i] : 0));
        // Uinv really inverts U
        Mat id = matmul(s.U, s.Uinv);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) REQUIRE(id[i][j] == (i == j ? 1 : 0));
    }
}

TEST_CASE("SNF survives coefficient blowup") {
    // hide a known diagonal behind unimodular factors with huge entries;
    // elimination must fall back to arbitrary precision and still be exact
    std::mt19937 rng(11);
    Mat d(6, Vec(6, 0));
    Vec want{1, 1, 2, 6, 6, 12};
    for (int i = 0; i < 6; ++i) d[i][i] = want[i];
    std::uniform_int_distribution<int> idx(0, 5), coef(-3, 3);
    auto grow = [&](long long limit) {
        Mat u(6, Vec(6, 0));
        for (int i = 0; i < 6; ++i) u[i][i] = 1;
        long long biggest = 1;
        while (biggest < limit) {
            int i = idx(rng), j = idx(rng), k = coef(rng);
            if (i == j) continue;
            for (int c = 0; c < 6; ++c) {
                u[i][c] += (long long)k * u[j][c];
                biggest = std::max(biggest, std::abs(u[i][c]));
            }
        }
        return u;
    };
    Mat a = matmul(matmul(grow(100000), d), grow(100000));
    long long biggest = 0;
    for (auto& row : a)
        for (long long x : row) biggest = std::max(biggest, std::abs(x));
    CHECK(biggest > (1LL << 33));  // big enough that int64 elimination can overflow
    CHECK(snf_dense(a).diagonal == want);
}

TEST_CASE("SNF invariance under random unimodular multiplication") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> dim(1, 8);
    for (int it = 0; it < 500; ++it) {
        int r = dim(rng), c = dim(rng);
        Mat a = random_matrix(r, c, 20, rng);
        Mat b = matmul(matmul(random_unimodular(r, rng), a), random_unimodular(c, rng));
        REQUIRE(snf_dense(a).diagonal == snf_dense(b).diagonal);
    }
}

TEST_CASE("kernel_mod_n frozen examples") {
    SparseIntMatrix id3(3, 3);
    for (int i = 0; i < 3; ++i) id3.add(i, i, 1);
    for (long long n : {2, 4, 12})
        CHECK(span_mod_n(kernel_mod_n(id3, n), n, 3).size() == 1);

    SparseIntMatrix two(1, 1);
    two.add(0, 0, 2);
    auto k = span_mod_n(kernel_mod_n(two, 4), 4, 1);
    CHECK(k == std::set<Vec>{{0}, {2}});

    SparseIntMatrix m(1, 2);
    m.add(0, 0, 2);
    m.add(0, 1, 3);
    CHECK(span_mod_n(kernel_mod_n(m, 6), 6, 2).size() == 6);

    CHECK_THROWS_AS(kernel_mod_n(two, 1), BadModulus);
}

TEST_CASE("kernel_mod_n matches exhaustive enumeration") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> rd(1, 3), cd(1, 4), nd(2, 12);
    for (int it = 0; it < 300; ++it) {
        int r = rd(rng), c = cd(rng);
        long long n = nd(rng);
        Mat a = random_matrix(r, c, 12, rng);
        std::set<Vec> expect;
        Vec x(c, 0);
        while (true) {
            bool ok = true;
            for (int i = 0; i < r && ok; ++i) {
                long long s = 0;
                for (int j = 0; j < c; ++j) s += a[i][j] * x[j];
                ok = nmod(s, n) == 0;
            }
            if (ok) expect.insert(x);
            int j = 0;
            while (j < c && ++x[j] == n) x[j++] = 0;
            if (j == c) break;
        }
        Mat gens = kernel_mod_n(SparseIntMatrix::from_dense(a), n);
        for (const Vec& g : gens) {
            for (int i = 0; i < r; ++i) {
                long long s = 0;
                for (int j = 0; j < c; ++j) s += a[i][j] * g[j];
                REQUIRE(nmod(s, n) == 0);
            }
        }
        REQUIRE(span_mod_n(gens, n, c) == expect);
    }
}

TEST_CASE("quotient_invariants frozen examples") {
    // full (Z/4)^2
    CHECK(quotient_invariants({{1, 0}, {0, 1}}, {}, 4).factors == Vec{4, 4});
    // one generator of order 4, relation kills 2x
    CHECK(quotient_invariants({{1}}, {{2}}, 4).factors == Vec{2});
    // generators of orders (2, 8) with the order-2 one identified with 4x the other
    CHECK(quotient_invariants({{4, 0}, {0, 1}}, {{4, 4}}, 8).factors == Vec{8});

    CHECK_THROWS_AS(quotient_invariants({{2}}, {{1}}, 4), RelationOutsideSpan);
    CHECK_THROWS_AS(quotient_invariants({}, {{1}}, 4), RelationOutsideSpan);
    CHECK(quotient_invariants({}, {}, 4).trivial());
}

TEST_CASE("quotient_invariants agrees with coset counting") {
    std::mt19937 rng(321);
    std::uniform_int_distribution<int> nd(2, 8), dimd(1, 3), gcount(1, 3);
    for (int it = 0; it < 200; ++it) {
        long long n = nd(rng);
        int dim = dimd(rng);
        int ng = gcount(rng), nr = gcount(rng) - 1;
        Mat gens = random_matrix(ng, dim, (int)n - 1, rng);
        std::set<Vec> gspan = span_mod_n(gens, n, dim);
        if (gspan.size() > 256) continue;
        // relations drawn from the span so they are always valid
        Mat rels;
        std::vector<Vec> pool(gspan.begin(), gspan.end());
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        for (int i = 0; i < nr; ++i) rels.push_back(pool[pick(rng)]);

        AbelianInvariants inv = quotient_invariants(gens, rels, n);
        std::set<Vec> rspan = span_mod_n(rels, n, dim);
        REQUIRE(gspan.size() % rspan.size() == 0);
        long long qorder = (long long)(gspan.size() / rspan.size());
        REQUIRE(inv.order() == qorder);
        // element-order profile pins down the invariant factors
        for (long long d = 1; d <= n; ++d) {
            long long cnt = 0;
            for (const Vec& x : gspan) {
                Vec dx(dim);
                for (int j = 0; j < dim; ++j) dx[j] = nmod(d * x[j], n);
                if (rspan.count(dx)) ++cnt;
            }
            long long expect = 1;
            for (long long di : inv.factors) expect *= std::gcd(d, di);
            REQUIRE(cnt / (long long)rspan.size() == expect);
        }
    }
}

TEST_CASE("prime power diagonalization") {
    std::mt19937 rng(55);
    for (int it = 0; it < 100; ++it) {
        long long p = (it % 3 == 0) ? 2 : (it % 3 == 1) ? 3 : 5;
        int e = 1 + it % 3;
        int r = 1 + it % 4, c = 1 + (it / 4) % 4;
        Mat a = random_matrix(r, c, 30, rng);
        PkDiag d = diagonalize_mod_pk(a, p, e);
        Mat prod = matmul(matmul(d.U, a), d.V);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                REQUIRE(nmod(prod[i][j], d.pk) == (i == j && i < (int)d.diagonal.size() ? d.diagonal[i] : 0));
        // diagonal entries are p-powers with ascending valuation
        long long prev = 1;
        for (long long x : d.diagonal) {
            if (x == 0) continue;
            REQUIRE(x % prev == 0);
            prev = x;
            long long y = x;
            while (y % p == 0) y /= p;
            REQUIRE(y == 1);
        }
    }
    CHECK_THROWS_AS(diagonalize_mod_pk({{1}}, 4, 1), BadModulus);
}

TEST_CASE("solve_mod_n finds exact solutions") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> nd(2, 12), rd(1, 4), cd(1, 4), xd(0, 11);
    for (int it = 0; it < 300; ++it) {
        long long n = nd(rng);
        int r = rd(rng), c = cd(rng);
        Mat a = random_matrix(r, c, 15, rng);
        Vec x(c);
        for (auto& v : x) v = xd(rng) % n;
        Vec rhs(r, 0);
        for (int i = 0; i < r; ++i) {
            long long s = 0;
            for (int j = 0; j < c; ++j) s += a[i][j] * x[j];
            rhs[i] = nmod(s, n);
        }
        auto sol = solve_mod_n(a, rhs, n);
        REQUIRE(sol.has_value());
        for (int i = 0; i < r; ++i) {
            long long s = 0;
            for (int j = 0; j < c; ++j) s += a[i][j] * (*sol)[j];
            REQUIRE(nmod(s, n) == rhs[i]);
        }
    }
    // insolvable system is reported as such
    CHECK_FALSE(solve_mod_n({{2}}, {1}, 4).has_value());
    CHECK_FALSE(solve_mod_n({{2, 4}, {0, 0}}, {0, 3}, 6).has_value());
}

TEST_CASE("incremental row reduction preserves the row span") {
    std::mt19937 rng(13);
    for (int it = 0; it < 120; ++it) {
        long long p = it % 2 ? 2 : 3;
        int e = 1 + it % 3;
        long long pk = 1;
        for (int i = 0; i < e; ++i) pk *= p;
        int rows = 1 + it % 5, cols = 1 + (it / 5) % 3;
        Mat a = random_matrix(rows, cols, (int)pk, rng);
        RowEchelonModPk ech(cols, p, e);
        for (const Vec& row : a) ech.add_row(row);
        REQUIRE((int)ech.rows().size() <= cols);
        REQUIRE(span_mod_n(ech.rows(), pk, cols) == span_mod_n(a, pk, cols));
    }
}

TEST_CASE("factorize and modular helpers") {
    CHECK(factorize(360) == std::vector<std::pair<long long, int>>{{2, 3}, {3, 2}, {5, 1}});
    CHECK(factorize(1).empty());
    CHECK(mod_inverse(3, 7) == 5);
    CHECK(mod_pow(2, 10, 1000) == 24);
    CHECK_THROWS_AS(mod_inverse(2, 4), BadModulus);
}
