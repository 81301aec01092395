#include "doctest.h"

#include <cmath>

#include "takagi/bit_point.hpp"
#include "takagi/coefficients.hpp"
#include "takagi/errors.hpp"
#include "takagi/point_eval.hpp"
#include "takagi/sampling.hpp"

using takagi::BitPoint;
using takagi::CoefficientSeq;

TEST_SUITE("point_eval") {

TEST_CASE("tent map basics") {
    CHECK(takagi::tent(0.0) == 0.0);
    CHECK(takagi::tent(0.25) == 0.5);
    CHECK(takagi::tent(0.5) == 1.0);
    CHECK(takagi::tent(0.75) == 0.5);
    CHECK(takagi::tent(1.0) == 0.0);
    CHECK_THROWS_AS(takagi::tent(-0.1), takagi::DomainError);
    CHECK_THROWS_AS(takagi::tent(1.1), takagi::DomainError);

    auto fp = takagi::tent_rational(2, 3); // 2/3 is the fixed point
    CHECK(fp.first * 3 == fp.second * 2);
    auto h = takagi::tent_rational(1, 4);
    CHECK(2 * h.first == h.second);
    CHECK_THROWS_AS(takagi::tent_rational(5, 4), takagi::DomainError);
}

TEST_CASE("iterates agree with shift-then-fold") {
    BitPoint x = BitPoint::from_bit_string("0.110100111010");
    for (long n = 1; n <= 14; ++n) {
        double direct = takagi::tent_iter(x, n).value;
        double y = n - 1 >= x.length() ? 0.0 : x.shifted((int)(n - 1)).value();
        CHECK(direct == takagi::tent(y)); // all quantities are short dyadics
        CHECK(takagi::tent_iter(x, n).abs_error == 0.0);
    }
    CHECK(takagi::tent_iter(x, 100).value == 0.0); // exact points extend by zeros

    BitPoint t = x.as_truncated();
    CHECK_THROWS_AS(takagi::tent_iter(t, 13), takagi::PrecisionError);
    CHECK(takagi::tent_iter(t, 4).abs_error <= std::ldexp(1.0, -8) + 1e-15);
}

TEST_CASE("rademacher signs") {
    BitPoint x = BitPoint::from_bit_string("0.10");
    CHECK(takagi::rademacher(x, 1) == -1);
    CHECK(takagi::rademacher(x, 2) == 1);
    CHECK(takagi::rademacher(x, 9) == 1); // implied zero digit
    CHECK_THROWS_AS(takagi::rademacher(x.as_truncated(), 3), takagi::PrecisionError);
}

TEST_CASE("centered iterate and its guard") {
    takagi::SampleBatch batch(11, 4, 64);
    BitPoint x = batch.point(0);
    CHECK_NOTHROW(takagi::phi_star(x, 32));
    CHECK_THROWS_AS(takagi::phi_star(x, 33), takagi::PrecisionError);
    BitPoint e = BitPoint::from_bit_string("0.101");
    CHECK(takagi::phi_star(e, 200).value == -0.5); // iterate is exactly zero
}

TEST_CASE("two evaluation routes") {
    // exact points: both routes coincide over the implied zero tail
    BitPoint e = BitPoint::from_bit_string("0.1101001");
    for (long n = 1; n <= 7; ++n) {
        takagi::RouteCheck rc = takagi::phi_star_routes(e, n);
        CHECK(rc.gap == 0.0);
        CHECK(rc.direct == takagi::phi_star(e, n).value);
        CHECK(rc.series == takagi::phi_star_series(e, n).value);
    }
    // truncated points: the routes differ by exactly one trailing ulp of
    // the stored expansion, 2^-(L-n+1)
    takagi::SampleBatch batch(12, 8, 64);
    for (long i = 0; i < 8; ++i) {
        BitPoint x = batch.point(i);
        for (long n : {1L, 2L, 17L, 40L}) {
            takagi::RouteCheck rc = takagi::phi_star_routes(x, n);
            CHECK(rc.gap == std::ldexp(1.0, (int)-(64 - n + 1)));
        }
    }
}

TEST_CASE("partial sums") {
    CoefficientSeq g = CoefficientSeq::geometric(0.25);
    BitPoint quarter = BitPoint::dyadic(1, 2);
    takagi::CertifiedValue p = takagi::eval_partial(g, quarter, 3);
    CHECK(p.value == 0.1875); // c1/2 + c2
    CHECK(takagi::eval_partial(g, quarter, 1).value == 0.0); // empty sum
    takagi::SampleBatch batch(13, 1, 64);
    CHECK_THROWS_AS(takagi::eval_partial(g, batch.point(0), 70),
                    takagi::PrecisionError);
}

TEST_CASE("full evaluation closed forms") {
    // r = 1/4 sums to the parabola x(1-x)
    CoefficientSeq q = CoefficientSeq::geometric(0.25);
    for (std::uint64_t k = 0; k < 64; ++k) {
        BitPoint x = BitPoint::dyadic(k, 6);
        double xv = (double)k / 64.0;
        takagi::CertifiedValue f = takagi::eval_f(q, x, 1e-12);
        CHECK(std::fabs(f.value - xv * (1.0 - xv)) <= 1e-13);
        CHECK(f.abs_error <= 1e-13);
    }
    // r = 1/2 takes the classic value 1/2 at 1/2
    CoefficientSeq h = CoefficientSeq::geometric(0.5);
    CHECK(std::fabs(takagi::eval_f(h, BitPoint::dyadic(1, 1), 1e-12).value - 0.5) <=
          1e-15);
}

TEST_CASE("evaluation refuses uncertifiable tolerances") {
    CoefficientSeq p = CoefficientSeq::power_law(2);
    takagi::SampleBatch batch(14, 1, 64);
    try {
        takagi::eval_f(p, batch.point(0), 1e-10);
        FAIL("expected a precision error");
    } catch (const takagi::PrecisionError& err) {
        CHECK(err.required_bits > 64); // hint asks for more digits
    }
    // the same tolerance is fine on an exact point
    CHECK_NOTHROW(takagi::eval_f(p, BitPoint::dyadic(3, 5), 1e-10));
}

TEST_CASE("centered tail values at one half") {
    CoefficientSeq h = CoefficientSeq::geometric(0.5);
    BitPoint half = BitPoint::dyadic(1, 1);
    CHECK(std::fabs(takagi::tail_M(h, half, 1, 1e-12).value) <= 1e-15);
    CHECK(takagi::tail_M(h, half, 2, 1e-12).value == doctest::Approx(-0.25).epsilon(1e-13));
    CHECK(takagi::stat_ratio(h, half, 1, 1e-9) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(takagi::stat_clt(h, half, 1, 1e-9) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("normalized statistics at the tent fixed point") {
    // phi^(n)(2/3) = 2/3 for every n, so the ratio statistic is 4/3
    // whatever the coefficients
    BitPoint x = BitPoint::from_rational(2, 3, 192);
    CHECK(takagi::stat_ratio(CoefficientSeq::geometric(0.5), x, 7, 1e-12) ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-9));
    // slowly decaying coefficients keep mass far beyond any fixed digit
    // budget, so certifying a tight tolerance takes a very long expansion
    BitPoint deep = BitPoint::from_rational(2, 3, 1 << 20);
    CHECK(takagi::stat_ratio(CoefficientSeq::power_law(2), deep, 5, 1e-4) ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-5));
}

TEST_CASE("statistics domain checks") {
    BitPoint half = BitPoint::dyadic(1, 1);
    CoefficientSeq e = CoefficientSeq::explicit_terms({1.0, 0.5});
    CHECK_THROWS_AS(takagi::stat_ratio(e, half, 3, 1e-9), takagi::DomainError);
    CoefficientSeq wide = CoefficientSeq::geometric(0.99);
    CHECK_THROWS_AS(takagi::stat_lil(wide, half, 1, 1e-9), takagi::DomainError);
    CHECK_NOTHROW(takagi::stat_lil(CoefficientSeq::geometric(0.5), half, 1, 1e-9));
}

TEST_CASE("dyadic points exhaust every tail") {
    // a point with m digits has phi^(n) = 0 for all n > m, so the tail
    // ratio vanishes identically
    CoefficientSeq g = CoefficientSeq::geometric(0.5);
    for (std::uint64_t k = 1; k < 16; k += 2) {
        BitPoint x = BitPoint::dyadic(k, 4);
        CHECK(std::fabs(takagi::stat_ratio(g, x, 20, 1e-9)) <= 1e-12);
    }
}

TEST_CASE("self similarity of geometric sums") {
    takagi::SampleBatch batch(15, 6, 192);
    for (double r : {0.7, 0.25, -0.5}) {
        for (long i = 0; i < 6; ++i) {
            long N = 1 + (i * 7) % 12;
            takagi::SelfSimCheck sc = takagi::self_similarity(r, batch.point(i), N, 1e-12);
            CHECK(sc.gap <= sc.err + 1e-15);
            CHECK(sc.gap <= 1e-10);
        }
    }
    // exact points too
    takagi::SelfSimCheck sc = takagi::self_similarity(0.7, BitPoint::dyadic(13, 6), 4, 1e-12);
    CHECK(sc.gap <= sc.err + 1e-15);
    CHECK_THROWS_AS(takagi::self_similarity(1.5, BitPoint::dyadic(1, 2), 1, 1e-9),
                    takagi::DomainError);
}

}
