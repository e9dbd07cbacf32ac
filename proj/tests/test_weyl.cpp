#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zetalab/weyl.hpp"

using namespace zetalab;

namespace {

// expand-the-square oracle: the m != m' part summed term by term, O(M^2)
double offdiag_oracle(long long M, double t, const WeightTable& w) {
    long double total = 0.0L;
    for (std::size_t j = 0; j < w.w.size(); ++j) {
        if (w.w[j] == 0.0) continue;
        long long n = w.n_first + static_cast<long long>(j);
        long double sum = 0.0L;
        for (long long m1 = 1; m1 <= M; ++m1)
            for (long long m2 = 1; m2 <= M; ++m2) {
                if (m1 == m2) continue;
                double ph = t * (std::log(double(m1 + n)) - std::log(double(m2 + n)));
                sum += std::cos(ph);
            }
        total += (long double)w.w[j] * sum;
    }
    return (double)total;
}

} // namespace

TEST_CASE("weyl_square at t = 0 is M^2 times the weight mass") {
    auto w = WeightTable::indicator(3, 12);
    auto r = weyl_square(5, 0.0, w);
    CHECK(r.total == doctest::Approx(25.0 * 10.0).epsilon(1e-14));
    CHECK(r.diagonal == doctest::Approx(5.0 * 10.0).epsilon(1e-14));
}

TEST_CASE("weyl_square with M = 1 is the weight mass") {
    auto w = WeightTable::indicator(1, 7);
    auto r = weyl_square(1, 3.3, w);
    CHECK(r.total == doctest::Approx(7.0).epsilon(1e-14));
    CHECK(r.off_diagonal == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("diagonal + off-diagonal = total against the expand-the-square oracle") {
    auto w = WeightTable::indicator(1, 50);
    auto r = weyl_square(20, 7.3, w);
    CHECK(std::abs(r.diagonal + r.off_diagonal - r.total) < 1e-10);
    CHECK(r.off_diagonal == doctest::Approx(offdiag_oracle(20, 7.3, w)).epsilon(1e-10));
}

TEST_CASE("singleton weight reduces to the direct inner sum") {
    WeightTable w;
    w.n_first = 9;
    w.w = {1.0};
    auto r = weyl_square(13, 2.71, w);
    kahan_csum inner;
    for (long long m = 1; m <= 13; ++m) {
        double ph = 2.71 * std::log(double(m + 9));
        inner.add({std::cos(ph), std::sin(ph)});
    }
    CHECK(std::abs(r.total - std::norm(inner.value())) < 1e-12);
}

TEST_CASE("weyl_square validation") {
    auto w = WeightTable::indicator(1, 3);
    CHECK_THROWS_AS(weyl_square(0, 1.0, w), domain_error);
    w.w[1] = -1.0;
    CHECK_THROWS_AS(weyl_square(2, 1.0, w), domain_error);
}

TEST_CASE("atkinson reindex of the indicator of [1,3]^2") {
    PairTable f;
    f.m_first = f.n_first = 1;
    f.rows = f.cols = 3;
    f.values.assign(9, 1.0);
    auto rep = atkinson_reindex(f);
    CHECK(rep.total_raw == 9.0);
    CHECK(rep.total_offset == 9.0);
    CHECK(rep.total_sym == 9.0);
    CHECK(rep.diagonal == 3.0);
    CHECK(rep.offset_sums.at(0) == 3.0);
    CHECK(rep.offset_sums.at(2) == 1.0);
}

TEST_CASE("atkinson reindex of f(m,n) = m + n on [1,2]^2") {
    PairTable f;
    f.m_first = f.n_first = 1;
    f.rows = f.cols = 2;
    f.values = {2.0, 3.0, 3.0, 4.0};
    auto rep = atkinson_reindex(f);
    CHECK(rep.total_raw == 12.0);
    CHECK(rep.total_offset == 12.0);
    CHECK(rep.total_sym == 12.0);
}

TEST_CASE("route equality is exact for random integer tables") {
    std::mt19937 rng(20107);
    std::uniform_int_distribution<int> vd(-9, 9);
    for (int rep_i = 0; rep_i < 10; ++rep_i) {
        PairTable f;
        f.m_first = 1;
        f.n_first = 1;
        f.rows = f.cols = 10;
        f.values.resize(100);
        for (auto& v : f.values) v = static_cast<double>(vd(rng));
        auto rep = atkinson_reindex(f);
        CHECK(rep.total_raw == rep.total_offset);
        CHECK(rep.total_raw == rep.total_sym);
        CHECK(rep.total_raw == rep.below + rep.diagonal + rep.above);
    }
}
