#include "doctest.h"

#include <cmath>

#include "takagi/asymptotics.hpp"
#include "takagi/errors.hpp"

TEST_SUITE("asymptotics") {

TEST_CASE("enclosure constants") {
    CHECK(takagi::stretch_lower_const(1, 0.5) == 2.0);
    CHECK(takagi::stretch_lower_const(2, 0.25) == 2.0);
    // product recursion: K=1, beta=1/2 gives 2(1 + 1) = 4
    CHECK(takagi::stretch_upper_const(1, 0.5) == doctest::Approx(4.0).epsilon(1e-14));
    // K=2, beta=1/3 gives 3(1/2 + 2/4 + 2/8) = 3.75
    CHECK(takagi::stretch_upper_const(2, 1.0 / 3.0) ==
          doctest::Approx(3.75).epsilon(1e-14));
    // beta=1 collapses to 1/K even though 1/beta is an integer
    CHECK(takagi::stretch_upper_const(5, 1.0) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK_THROWS_AS(takagi::stretch_upper_const(0.0, 0.5), takagi::DomainError);
}

TEST_CASE("integral quadrature against closed forms") {
    // beta = 1: integral_a^inf e^{-Kx} dx = e^{-Ka}/K
    for (double a : {0.5, 1.0, 4.0})
        CHECK(takagi::stretch_integral(2, 1, a) ==
              doctest::Approx(std::exp(-2 * a) / 2).epsilon(1e-11));
    // beta = 1/2: 2(K sqrt(a) + 1) e^{-K sqrt(a)} / K^2
    CHECK(takagi::stretch_integral(1, 0.5, 4) ==
          doctest::Approx(6.0 * std::exp(-2.0)).epsilon(1e-11));
    CHECK(takagi::stretch_integral(2, 0.5, 9) ==
          doctest::Approx(3.5 * std::exp(-6.0)).epsilon(1e-11));
    // decreasing in a
    CHECK(takagi::stretch_integral(1, 0.3, 8) < takagi::stretch_integral(1, 0.3, 4));
    CHECK_THROWS_AS(takagi::stretch_integral(1, 0.5, -1), takagi::DomainError);
}

TEST_CASE("integral brackets contain the quadrature value") {
    const double params[3][2] = {{1, 0.5}, {2, 1.0 / 3.0}, {0.5, 0.8}};
    for (auto& kb : params) {
        for (double a : {4.0, 16.0, 64.0}) {
            takagi::Bracket b = takagi::stretch_tail_integral_bracket(kb[0], kb[1], a);
            CHECK(b.in_regime);
            CHECK(b.lower <= b.target);
            CHECK(b.target <= b.upper);
            CHECK(b.lower > 0.0);
        }
    }
    // below the regime threshold the flag must say so
    takagi::Bracket out = takagi::stretch_tail_integral_bracket(0.1, 0.5, 1.0);
    CHECK_FALSE(out.in_regime);
    // the upper constant needs beta < 1 strictly
    CHECK_THROWS_AS(takagi::stretch_tail_integral_bracket(1, 1.0, 4),
                    takagi::DomainError);
}

TEST_CASE("tail sum brackets") {
    for (long N : {16L, 64L, 256L}) {
        takagi::Bracket b = takagi::stretch_tail_sum_bracket(1, 0.5, N);
        CHECK(b.in_regime);
        CHECK(b.lower <= b.target);
        CHECK(b.target <= b.upper);
    }
    CHECK_FALSE(takagi::stretch_tail_sum_bracket(1, 0.5, 4).in_regime);
}

TEST_CASE("tail ratio brackets") {
    for (int p : {1, 2}) {
        for (long N : {16L, 64L, 256L}) {
            takagi::Bracket b = takagi::tail_ratio_bracket(1, 0.5, N, p);
            CHECK(b.in_regime);
            CHECK(b.lower <= b.target);
            CHECK(b.target <= b.upper);
        }
    }
    // the normalized ratio flattens out: same bracket holds along N while
    // the raw ratio itself shrinks like N^{beta-1}
    double r16 = takagi::tail_ratio_bracket(1, 0.5, 16, 1).target / std::sqrt(16.0);
    double r256 = takagi::tail_ratio_bracket(1, 0.5, 256, 1).target / std::sqrt(256.0);
    CHECK(r256 < r16);
}

TEST_CASE("rapidly decaying tails keep a ratio floor") {
    takagi::RatioFloor f = takagi::rapid_decay_ratio_floor(1, 1, 16);
    double e1 = std::exp(-1.0);
    CHECK(f.ratio == doctest::Approx((1 - e1) / (1 + e1)).epsilon(1e-14));
    CHECK(f.floor == 0.25);
    CHECK(f.ratio >= f.floor);

    takagi::RatioFloor g = takagi::rapid_decay_ratio_floor(0.5, 2, 2);
    CHECK(g.ratio >= g.floor);
    CHECK(g.floor > 0.0);
    CHECK(g.floor < 1.0);
    CHECK(g.ratio <= 1.0);

    CHECK_THROWS_AS(takagi::rapid_decay_ratio_floor(1, 0.5, 16), takagi::DomainError);
    CHECK_THROWS_AS(takagi::rapid_decay_ratio_floor(0.1, 1, 5), takagi::DomainError);
}

}
