#include "doctest.h"

#include <algorithm>
#include <stdexcept>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "lptile/arith.hpp"
#include "lptile/geometry.hpp"
#include "lptile/radicals.hpp"

using namespace lptile;

namespace {

std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    std::int64_t out = 1;
    for (std::int64_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

// Independent count: walk the whole box and test every point directly.
std::int64_t brute_ball_size(int n, int p, std::int64_t s) {
    std::int64_t c = 0;
    while (std::pow(static_cast<double>(c + 1), p) <= static_cast<double>(s)) ++c;
    std::vector<std::int64_t> x(static_cast<std::size_t>(n), -c);
    std::int64_t count = 0;
    while (true) {
        std::int64_t sum = 0;
        for (const auto v : x) {
            std::int64_t t = 1;
            for (int k = 0; k < p; ++k) t *= (v < 0 ? -v : v);
            sum += t;
        }
        if (sum <= s) ++count;
        int i = n - 1;
        while (i >= 0 && x[i] == c) x[i--] = -c;
        if (i < 0) break;
        ++x[i];
    }
    return count;
}

}  // namespace

TEST_CASE("checked arithmetic throws instead of wrapping") {
    CHECK(checked_add(3, 4) == 7);
    CHECK(checked_mul(-6, 7) == -42);
    CHECK_THROWS_AS(checked_add(INT64_MAX, 1), std::overflow_error);
    CHECK_THROWS_AS(checked_mul(INT64_MAX / 2 + 1, 2), std::overflow_error);
    CHECK(ipow(3, 4) == 81);
    CHECK(ipow(-2, 3) == -8);
    CHECK_THROWS_AS(ipow(10, 19), std::overflow_error);
}

TEST_CASE("integer roots bracket the real root") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::int64_t> value(0, 4'000'000'000'000LL);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::int64_t v = value(rng);
        for (int p = 1; p <= 5; ++p) {
            const std::int64_t lo = iroot_floor(v, p);
            CHECK(ipow(lo, p) <= v);
            CHECK(static_cast<long double>(lo + 1) * std::pow(static_cast<long double>(lo + 1), p - 1) >
                  static_cast<long double>(v));
            const std::int64_t hi = iroot_ceil(v, p);
            CHECK(ipow(hi, p) >= v);
            CHECK((hi == 0 || ipow(hi - 1, p) < v));
        }
    }
}

TEST_CASE("floor division and residues") {
    CHECK(mod_floor(-7, 5) == 3);
    CHECK(div_floor(-7, 5) == -2);
    CHECK(div_floor(7, 5) == 1);
    const auto eg = extended_gcd(240, 46);
    CHECK(eg.g == 2);
    CHECK(240 * eg.x + 46 * eg.y == 2);
    CHECK(divisors(12) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 12});
    const auto f = factorize(360);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<std::int64_t, int>{2, 3});
    CHECK(f[2] == std::pair<std::int64_t, int>{5, 1});
}

TEST_CASE("power sums decide exactly near overflow") {
    const std::vector<std::int64_t> v{3'000'000'000LL, 3'000'000'000LL};
    CHECK_THROWS_AS(power_sum(v, 3), std::overflow_error);
    CHECK_FALSE(power_sum_leq(v, 3, INT64_MAX));
    const std::vector<std::int64_t> w{2, -3};
    CHECK(power_sum(w, 2) == 13);
    CHECK(power_sum_leq(w, 2, 13));
    CHECK_FALSE(power_sum_leq(w, 2, 12));
}

TEST_CASE("radical sums are signed exactly") {
    // sqrt(2) + sqrt(8) - 3 sqrt(2) = 0
    const std::vector<RadicalTerm> zero{{1, 2}, {1, 8}, {-3, 2}};
    CHECK(radical_sum_sign(zero, 2) == 0);
    // sqrt(2) + sqrt(3) < sqrt(10)
    const std::vector<RadicalTerm> below{{1, 2}, {1, 3}, {-1, 10}};
    CHECK(radical_sum_sign(below, 2) == -1);
    // 2 cbrt(2) = cbrt(16)
    const std::vector<RadicalTerm> cube{{2, 2}, {-1, 16}};
    CHECK(radical_sum_sign(cube, 3) == 0);
    // sqrt(10^12 + 1) - sqrt(10^12) is tiny but positive
    const std::vector<RadicalTerm> tight{{1, 1'000'000'000'001LL}, {-1, 1'000'000'000'000LL}};
    CHECK(radical_sum_sign(tight, 2) == 1);
}

TEST_CASE("exponent parsing") {
    CHECK(Exponent::parse("inf").is_infinite());
    CHECK(Exponent::parse("3").value() == 3);
    CHECK_THROWS(Exponent::parse("0"));
    CHECK_THROWS(Exponent::parse("-2"));
    CHECK_THROWS(Exponent::parse("x"));
    CHECK_THROWS_AS(Exponent::infinity().value(), std::logic_error);
}

TEST_CASE("radius tokens") {
    const RadiusToken r(Exponent::finite(2), 8);
    CHECK_FALSE(r.integer_radius().has_value());
    CHECK(r.coordinate_bound() == 2);
    CHECK(RadiusToken(Exponent::finite(3), 27).integer_radius() == 3);
    CHECK(RadiusToken(Exponent::infinity(), 4).coordinate_bound() == 4);
    CHECK(RadiusToken(Exponent::finite(2), 4) < RadiusToken(Exponent::finite(2), 5));
    CHECK_THROWS_AS((void)(RadiusToken(Exponent::finite(2), 4) < RadiusToken(Exponent::finite(3), 5)),
                    std::invalid_argument);
    CHECK_THROWS(RadiusToken(Exponent::finite(2), -1));
}

TEST_CASE("ball sizes behind the small tilings") {
    const auto two = Exponent::finite(2);
    CHECK(ball_cardinality(2, RadiusToken(two, 1)) == 5);
    CHECK(ball_cardinality(2, RadiusToken(two, 2)) == 9);
    CHECK(ball_cardinality(2, RadiusToken(two, 4)) == 13);
    CHECK(ball_cardinality(2, RadiusToken(two, 8)) == 25);
    CHECK(ball_cardinality(3, RadiusToken(two, 1)) == 7);
    CHECK(ball_cardinality(3, RadiusToken(two, 3)) == 27);
}

TEST_CASE("l1 ball sizes follow the cross-polytope count") {
    for (int n = 1; n <= 4; ++n)
        for (std::int64_t r = 0; r <= 6; ++r) {
            std::int64_t expected = 0;
            for (int i = 0; i <= n; ++i) expected += (std::int64_t{1} << i) * binomial(n, i) * binomial(r, i);
            CHECK(ball_cardinality(n, RadiusToken(Exponent::finite(1), r)) == expected);
        }
}

TEST_CASE("l_inf balls are cubes") {
    for (int n = 1; n <= 3; ++n)
        for (std::int64_t r = 0; r <= 4; ++r)
            CHECK(ball_cardinality(n, RadiusToken(Exponent::infinity(), r)) == ipow(2 * r + 1, n));
}

TEST_CASE("counting and enumeration agree with a brute-force box scan") {
    for (int n = 1; n <= 3; ++n)
        for (int p = 1; p <= 4; ++p)
            for (std::int64_t s = 0; s <= 40; ++s) {
                const RadiusToken r(Exponent::finite(p), s);
                const auto expected = brute_ball_size(n, p, s);
                CHECK(ball_cardinality(n, r) == expected);
                CHECK(static_cast<std::int64_t>(enumerate_ball(n, r).cardinality()) == expected);
            }
}

TEST_CASE("ball points are lexicographic, unique and symmetric") {
    const auto ball = enumerate_ball(3, RadiusToken(Exponent::finite(3), 30));
    const auto& pts = ball.points();
    CHECK(std::is_sorted(pts.begin(), pts.end()));
    CHECK(std::adjacent_find(pts.begin(), pts.end()) == pts.end());
    for (const auto& x : pts) {
        LatticePoint neg(x);
        for (auto& v : neg) v = -v;
        CHECK(ball.contains(neg));
        LatticePoint rotated{x[1], x[2], x[0]};
        CHECK(ball.contains(rotated));
    }
}

TEST_CASE("difference set matches overlap test and pairwise differences") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const int p = 1 + static_cast<int>(rng() % 3);
        const std::int64_t s = static_cast<std::int64_t>(rng() % 12);
        const auto ball = enumerate_ball(n, RadiusToken(Exponent::finite(p), s));
        std::set<LatticePoint> diffs;
        for (const auto& x : ball.points())
            for (const auto& y : ball.points()) {
                LatticePoint d(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
                diffs.insert(d);
            }
        const auto diff = difference_set(ball);
        CHECK(std::vector<LatticePoint>(diffs.begin(), diffs.end()) == diff.points());
        for (const auto& d : diffs) CHECK(balls_overlap(d, ball));
        LatticePoint far(static_cast<std::size_t>(n), 0);
        far[0] = 2 * ball.extent() + 1;
        CHECK_FALSE(balls_overlap(far, ball));
    }
}

TEST_CASE("distances") {
    const std::vector<std::int64_t> x{1, -2, 3}, y{4, 2, 3};
    CHECK(lp_distance(x, y, 2).power_value() == 25);
    CHECK(lp_distance(x, y, 3).power_value() == 27 + 64);
    CHECK(linf_distance(x, y) == 4);
    CHECK(lee_distance(1, 6, 7) == 2);
    CHECK(lee_distance(0, 3, 6) == 3);
}

TEST_CASE("p-Lee distance equals the induced distance of the lift") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 3000; ++trial) {
        const std::int64_t q = 2 + static_cast<std::int64_t>(rng() % 24);
        const int n = 1 + static_cast<int>(rng() % 3);
        const int p = 1 + static_cast<int>(rng() % 3);
        std::vector<std::int64_t> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            a[i] = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
            b[i] = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
        }
        CHECK(plee_distance(a, b, q, Exponent::finite(p)) == induced_distance_oracle(a, b, q, p, 2));
    }
}

TEST_CASE("superball volumes") {
    CHECK(superball_volume(2, 2.0) == doctest::Approx(std::numbers::pi));
    CHECK(superball_volume(3, 2.0) == doctest::Approx(4.0 * std::numbers::pi / 3.0));
    CHECK(superball_volume(3, 1.0) == doctest::Approx(8.0 / 6.0));
    CHECK(superball_volume(2, 1e9) == doctest::Approx(4.0));
}
