#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "zetalab/lattice.hpp"

using namespace zetalab;

namespace {

// independent sigma_1 oracle by trial division
long long sigma1_oracle(long long n) {
    long long s = 0;
    for (long long d = 1; d <= n; ++d)
        if (n % d == 0) s += d;
    return s;
}

// deterministic pseudo-random integer-valued f on matrices
long long hash_f(const IntMatrix2& M, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (long long e : {M.k, M.l, M.n, M.m}) {
        h ^= static_cast<std::uint64_t>(e) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 0xbf58476d1ce4e5b9ull;
        h ^= h >> 27;
    }
    return static_cast<long long>(h % 19) - 9;
}

} // namespace

TEST_CASE("partition of the constant function on the B = 1 box") {
    auto p = partition_by_det(BoxSpec{1}, [](const IntMatrix2&) { return 1.0; });
    CHECK(p.total == 81.0); // 3^4 lattice points
    CHECK(p.sum_zero + p.sum_pos + p.sum_neg == p.total);

    // exhaustive det-0 count over all 81 matrices, counted independently
    long long zero = 0;
    for (long long k = -1; k <= 1; ++k)
        for (long long l = -1; l <= 1; ++l)
            for (long long n = -1; n <= 1; ++n)
                for (long long m = -1; m <= 1; ++m)
                    if (k * m - l * n == 0) ++zero;
    CHECK(p.count_zero == zero);
    CHECK(p.sum_zero == static_cast<double>(zero));
}

TEST_CASE("partition of f = det has vanishing zero stratum and odd symmetry") {
    auto p = partition_by_det(BoxSpec{3}, [](const IntMatrix2& M) {
        return static_cast<double>(M.det());
    });
    CHECK(p.sum_zero == 0.0);
    CHECK(p.sum_pos == -p.sum_neg);
    CHECK(p.total == 0.0);
}

TEST_CASE("partition identity is exact for random integer-valued f") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
        auto p = partition_by_det(BoxSpec{4}, [seed](const IntMatrix2& M) {
            return static_cast<double>(hash_f(M, seed));
        });
        CHECK(p.sum_zero + p.sum_pos + p.sum_neg == p.total);
    }
}

TEST_CASE("box guard") {
    CHECK_THROWS_AS(partition_by_det(BoxSpec{-1}, [](const IntMatrix2&) { return 0.0; }),
                    domain_error);
    CHECK_THROWS_AS(partition_by_det(BoxSpec{10000}, [](const IntMatrix2&) { return 0.0; }),
                    domain_error);
}

TEST_CASE("det-zero enumeration") {
    CHECK(enumerate_det_zero(BoxSpec{0}) == 1); // only the zero matrix

    long long count = enumerate_det_zero(BoxSpec{2}, [](const IntMatrix2& M) {
        CHECK(M.det() == 0);
    });
    auto p = partition_by_det(BoxSpec{2}, [](const IntMatrix2&) { return 1.0; });
    CHECK(count == p.count_zero);

    // uniqueness of emission
    std::set<std::array<long long, 4>> seen;
    enumerate_det_zero(BoxSpec{2}, [&](const IntMatrix2& M) {
        auto key = std::array<long long, 4>{M.k, M.l, M.n, M.m};
        CHECK(!seen.count(key));
        seen.insert(key);
    });
    CHECK(static_cast<long long>(seen.size()) == count);
}

TEST_CASE("determinant overflow is an error, not wraparound") {
    IntMatrix2 M{static_cast<long long>(4e18), 1, 1, static_cast<long long>(4e18)};
    CHECK_THROWS_AS(M.det(), overflow_error);
}

TEST_CASE("hecke coset representatives") {
    auto one = hecke_coset_reps(1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == IntMatrix2::identity());

    auto two = hecke_coset_reps(2);
    REQUIRE(two.size() == 3);
    CHECK(two[0] == IntMatrix2{1, 0, 0, 2});
    CHECK(two[1] == IntMatrix2{1, 1, 0, 2});
    CHECK(two[2] == IntMatrix2{2, 0, 0, 1});

    for (long long n = 1; n <= 50; ++n)
        CHECK(static_cast<long long>(hecke_coset_reps(n).size()) == sigma1_oracle(n));

    // multiplicativity spot check
    CHECK(hecke_coset_reps(6).size() == hecke_coset_reps(2).size() * hecke_coset_reps(3).size());
    CHECK(hecke_coset_reps(6).size() == 12);

    CHECK_THROWS_AS(hecke_coset_reps(0), domain_error);
}

TEST_CASE("hecke factorization basics") {
    // a representative factors with gamma = identity
    IntMatrix2 rep{2, 1, 0, 3};
    auto f = factor_det_n(rep);
    CHECK(f.gamma == IntMatrix2::identity());
    CHECK(f.rep == rep);

    IntMatrix2 M{0, -2, 1, 0}; // det 2
    auto g = factor_det_n(M);
    CHECK(g.gamma.det() == 1);
    CHECK(g.gamma * g.rep == M);
    CHECK(g.rep.n == 0);
    CHECK(g.rep.k * g.rep.m == 2);
    CHECK(g.rep.l >= 0);
    CHECK(g.rep.l < g.rep.m);

    CHECK_THROWS_AS(factor_det_n(IntMatrix2{1, 0, 0, -1}), domain_error);
    CHECK_THROWS_AS(factor_det_n(IntMatrix2{1, 0, 0, 0}), domain_error);
}

TEST_CASE("hecke factorization is a bijection on the det-2 slice of the B = 3 box") {
    auto reps = hecke_coset_reps(2);
    std::set<std::array<long long, 4>> rep_set;
    for (const auto& r : reps) rep_set.insert({r.k, r.l, r.n, r.m});

    std::map<std::array<long long, 8>, int> pair_seen;
    long long checked = 0;
    for (long long k = -3; k <= 3; ++k)
        for (long long l = -3; l <= 3; ++l)
            for (long long n = -3; n <= 3; ++n)
                for (long long m = -3; m <= 3; ++m) {
                    IntMatrix2 M{k, l, n, m};
                    if (M.det() != 2) continue;
                    auto f = factor_det_n(M);
                    CHECK(f.gamma * f.rep == M);
                    CHECK(rep_set.count({f.rep.k, f.rep.l, f.rep.n, f.rep.m}) == 1);
                    std::array<long long, 8> key{f.gamma.k, f.gamma.l, f.gamma.n, f.gamma.m,
                                                 f.rep.k,   f.rep.l,   f.rep.n,   f.rep.m};
                    CHECK(pair_seen[key]++ == 0); // distinct matrices never collide
                    ++checked;
                }
    CHECK(checked > 0);
}

TEST_CASE("poincare series of the zero function") {
    auto r = poincare_series(PoincareSpec{0.0, 1.0}, GroupPoint{0.2, 1.1}, 6.0);
    CHECK(r.value == 0.0);
    CHECK(r.terms == 0);
}

TEST_CASE("poincare series approximate Gamma-invariance under the generators") {
    PoincareSpec f;
    GroupPoint g{0.3, 1.2};
    double R = 7.0;
    auto base = poincare_series(f, g, R);

    // n[1]: (x, y) -> (x + 1, y)
    auto tr = poincare_series(f, GroupPoint{g.x + 1.0, g.y}, R);
    CHECK(std::abs(tr.value - base.value) <= 2.0 * base.tail_bound + 1e-12);

    // w = k[pi/2]: z -> -1/z
    double den = g.x * g.x + g.y * g.y;
    auto in = poincare_series(f, GroupPoint{-g.x / den, g.y / den}, R);
    CHECK(std::abs(in.value - base.value) <= 2.0 * base.tail_bound + 1e-12);
}

TEST_CASE("poincare truncation is Cauchy in the cutoff") {
    PoincareSpec f;
    GroupPoint g{0.1, 0.9};
    double prev_tail = std::numeric_limits<double>::infinity();
    double prev_val = 0.0;
    bool first = true;
    for (double R : {5.0, 7.0, 10.0, 14.0}) {
        auto r = poincare_series(f, g, R);
        CHECK(r.tail_bound < prev_tail);
        if (!first) CHECK(std::abs(r.value - prev_val) <= prev_tail);
        prev_tail = r.tail_bound;
        prev_val = r.value;
        first = false;
    }
}

TEST_CASE("poincare cutoff-too-small error") {
    CHECK_THROWS_AS(poincare_series(PoincareSpec{}, GroupPoint{0.0, 1.0}, 1.8, 1e-10),
                    truncation_error);
}
