#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "takagi/coefficients.hpp"
#include "takagi/errors.hpp"

using takagi::CoefficientSeq;
using takagi::DifferentiabilityClass;
using takagi::Family;
using takagi::RateCondition;
using takagi::Verdict;

namespace {

takagi::Verdict verdict_of(const CoefficientSeq& seq, RateCondition c) {
    return seq.check_condition(c).verdict;
}

bool contains(const takagi::TailSum& t, double target) {
    return std::fabs(t.value - target) <= t.error_bound;
}

} // namespace

TEST_SUITE("coefficients") {

TEST_CASE("spec strings round trip") {
    const char* specs[] = {
        "powerlaw:alpha=2",         "powerlaw:alpha=1.5",
        "stretchexp:K=1,beta=0.5",  "stretchexp:K=2,beta=0.29999999999999999",
        "geometric:r=0.5",          "geometric:r=-0.5",
        "dyadicsqrt",               "explicit:terms=1;0.5;0.25",
    };
    for (const char* s : specs) {
        CoefficientSeq seq = takagi::parse_seq_spec(s);
        CHECK(takagi::parse_seq_spec(seq.describe()).describe() == seq.describe());
    }
    CHECK(takagi::parse_seq_spec("  GEOMETRIC : r = 0.25 ").r() == 0.25);
    CHECK(takagi::parse_seq_spec("stretchexp:k=1,beta=0.5").K() == 1.0);
    // well-formed spec with an out-of-range parameter is a domain problem
    CHECK_THROWS_AS(takagi::parse_seq_spec("powerlaw:alpha=1"), takagi::DomainError);
    CHECK_THROWS_AS(takagi::parse_seq_spec("geometric:r=1"), takagi::DomainError);
    CHECK_THROWS_AS(takagi::parse_seq_spec("geometric"), takagi::ParseError);
    CHECK_THROWS_AS(takagi::parse_seq_spec("unknown:x=1"), takagi::ParseError);
    CHECK_THROWS_AS(takagi::parse_seq_spec("explicit:terms="), takagi::ParseError);
}

TEST_CASE("explicit file parsing") {
    std::string path = "coeff_terms_tmp.txt";
    std::FILE* f = std::fopen(path.c_str(), "w");
    REQUIRE(f);
    std::fputs("# comment line\n1.0\n0.5\n\n0.25\n", f);
    std::fclose(f);
    CoefficientSeq seq = takagi::parse_seq_spec("explicit:file=" + path);
    REQUIRE(seq.terms().size() == 3);
    CHECK(seq.terms()[1] == 0.5);
    std::remove(path.c_str());
}

TEST_CASE("term values and ratios") {
    CoefficientSeq p = CoefficientSeq::power_law(2);
    CHECK(p.term(1) == 1.0);
    CHECK(p.term(4) == 0.0625);
    CHECK(p.term_ratio(2) == doctest::Approx(4.0 / 9.0).epsilon(1e-15));

    CoefficientSeq g = CoefficientSeq::geometric(-0.5);
    CHECK(g.term(1) == -0.5);
    CHECK(g.term(2) == 0.25);
    CHECK(g.term_ratio(7) == -0.5);

    CoefficientSeq d = CoefficientSeq::dyadic_sqrt();
    CHECK(d.term(1) == 0.5);
    CHECK(d.term(4) == doctest::Approx(0.0625 / 2.0).epsilon(1e-15));
    CHECK(d.term(2000) == 0.0); // underflowed far past double range

    CoefficientSeq e = CoefficientSeq::explicit_terms({1.0, 0.5});
    CHECK(e.term(2) == 0.5);
    CHECK(e.term(3) == 0.0);
    CHECK_THROWS_AS(e.term_ratio(3), takagi::DomainError);
}

TEST_CASE("geometric tails are closed forms") {
    CoefficientSeq g = CoefficientSeq::geometric(0.5);
    CHECK(contains(g.tail_sum(1, 1), 1.0));          // 1/2 / (1 - 1/2)
    CHECK(contains(g.tail_sum(3, 1), 0.25));
    CHECK(contains(g.tail_sum(1, 2), 1.0 / 3.0));
    CHECK(contains(g.tail_sum(3, 2), 1.0 / 48.0));
    CHECK(g.tail_sum(3, 1).error_bound < 1e-12);

    CoefficientSeq n = CoefficientSeq::geometric(-0.5);
    CHECK(contains(n.tail_sum(1, 1), -1.0 / 3.0));
    CHECK(contains(n.tail_sum(1, 2), 1.0 / 3.0));
    CHECK(contains(n.tail_sum_abs(1, 1), 1.0));
}

TEST_CASE("relative tails avoid underflow") {
    CoefficientSeq g = CoefficientSeq::geometric(0.5);
    // sum_{n>=N} (c_n/c_N)^p = 1/(1-r^p) independent of N
    CHECK(g.relative_tail_sum(10000, 1) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(g.relative_tail_sum(10000, 2) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CoefficientSeq p = CoefficientSeq::power_law(2);
    double direct = 0.0;
    for (long n = 5; n < 400000; ++n) direct += std::pow(5.0 / (double)n, 4.0);
    CHECK(p.relative_tail_sum(5, 2) == doctest::Approx(direct).epsilon(1e-9));
}

TEST_CASE("power law tails match brute force") {
    CoefficientSeq p = CoefficientSeq::power_law(2);
    for (long N : {1L, 7L, 100L}) {
        double brute = 0.0;
        for (long n = 2000000; n >= N; --n) brute += 1.0 / ((double)n * (double)n);
        brute += 1.0 / 1999999.5; // integral of the dropped tail, error O(N^-3)
        takagi::TailSum t = p.tail_sum(N, 1);
        CHECK(std::fabs(t.value - brute) <= t.error_bound + 1e-9);
        CHECK(t.error_bound < 1e-10 * std::fabs(t.value) + 1e-12);
    }
    // sum n^-4 from 3 equals pi^4/90 - 1 - 1/16, but evaluating that form in
    // doubles cancels two leading digits; sum upward from the small end instead
    takagi::TailSum t2 = p.tail_sum(3, 2);
    double target = 0.0;
    for (long n = 2000000; n >= 3; --n) target += 1.0 / std::pow((double)n, 4.0);
    CHECK(std::fabs(t2.value - target) <= t2.error_bound + 1e-16);
}

TEST_CASE("stretched exponential tails") {
    CoefficientSeq s = CoefficientSeq::stretched_exp(1, 1);
    // beta = 1 is geometric with r = e^-1
    double r = std::exp(-1.0);
    CHECK(s.tail_sum(1, 1).value == doctest::Approx(r / (1 - r)).epsilon(1e-14));
    CoefficientSeq h = CoefficientSeq::stretched_exp(1, 0.5);
    double brute = 0.0;
    for (long n = 4000; n >= 2; --n) brute += std::exp(-2.0 * std::sqrt((double)n));
    takagi::TailSum t = h.tail_sum(2, 2);
    CHECK(std::fabs(t.value - brute) <= t.error_bound + 1e-13);
}

TEST_CASE("explicit tails and hypothesis failures") {
    CoefficientSeq e = CoefficientSeq::explicit_terms({1.0, 0.5, 0.25});
    CHECK(e.tail_sum(2, 1).value == 0.75);
    CHECK(e.tail_sum(4, 1).value == 0.0);
    CHECK(e.sup_term_sq(2) == 0.25);
    takagi::HypothesisStatus st = e.check_hypotheses();
    CHECK_FALSE(st.tail_square_positive);
    CHECK_FALSE(st.tail_mean_nonzero);
    CHECK(st.first_zero_square_N == 4);
    CHECK(st.first_zero_mean_N == 4);

    CoefficientSeq cancel = CoefficientSeq::explicit_terms({1.0, -1.0, 0.5});
    CHECK(cancel.check_hypotheses().first_zero_mean_N == 4);

    takagi::HypothesisStatus ok = CoefficientSeq::power_law(2).check_hypotheses();
    CHECK(ok.tail_square_positive);
    CHECK(ok.tail_mean_nonzero);
}

TEST_CASE("sup of squared terms") {
    CHECK(CoefficientSeq::power_law(2).sup_term_sq(3) == doctest::Approx(1.0 / 81.0));
    CHECK(CoefficientSeq::geometric(-0.5).sup_term_sq(2) == 0.0625);
}

TEST_CASE("condition verdicts per family") {
    using RC = RateCondition;
    const RC all[] = {RC::WeakLawRatio, RC::StrongLawExpSum, RC::CltMaxTerm,
                      RC::LilFourthPower};

    CoefficientSeq pl = CoefficientSeq::power_law(2);
    for (RC c : all) CHECK(verdict_of(pl, c) == Verdict::Holds);

    CoefficientSeq se3 = CoefficientSeq::stretched_exp(1, 0.3);
    for (RC c : all) CHECK(verdict_of(se3, c) == Verdict::Holds);

    CoefficientSeq se7 = CoefficientSeq::stretched_exp(1, 0.7);
    CHECK(verdict_of(se7, RC::WeakLawRatio) == Verdict::Holds);
    CHECK(verdict_of(se7, RC::StrongLawExpSum) == Verdict::Holds);
    CHECK(verdict_of(se7, RC::CltMaxTerm) == Verdict::Holds);
    CHECK(verdict_of(se7, RC::LilFourthPower) == Verdict::Fails);

    for (double r : {0.5, -0.5, 0.25}) {
        CoefficientSeq g = CoefficientSeq::geometric(r);
        for (RC c : all) CHECK(verdict_of(g, c) == Verdict::Fails);
    }

    CoefficientSeq dy = CoefficientSeq::dyadic_sqrt();
    for (RC c : all) CHECK(verdict_of(dy, c) == Verdict::Fails);

    CoefficientSeq ex = CoefficientSeq::explicit_terms({1.0, 0.5});
    for (RC c : all) CHECK(verdict_of(ex, c) == Verdict::Inconclusive);
}

TEST_CASE("verdicts carry evidence and rationale") {
    takagi::ConditionVerdict v =
        CoefficientSeq::power_law(2).check_condition(RateCondition::WeakLawRatio);
    REQUIRE_FALSE(v.evidence.empty());
    CHECK(v.evidence.front().first == 1);
    // tail2/tail1^2 at N: about (1/(3N^3)) / (1/N)^2 = 1/(3N), decreasing
    double first = v.evidence.front().second;
    double last = v.evidence.back().second;
    CHECK(last < first);
    CHECK_FALSE(v.rationale.empty());
}

TEST_CASE("differentiability trichotomy") {
    CHECK(CoefficientSeq::power_law(2).differentiability() ==
          DifferentiabilityClass::NowhereDifferentiable);
    CHECK(CoefficientSeq::stretched_exp(1, 0.3).differentiability() ==
          DifferentiabilityClass::NowhereDifferentiable);
    CHECK(CoefficientSeq::stretched_exp(1, 0.7).differentiability() ==
          DifferentiabilityClass::NowhereDifferentiable);
    CHECK(CoefficientSeq::geometric(0.5).differentiability() ==
          DifferentiabilityClass::NowhereDifferentiable);
    CHECK(CoefficientSeq::geometric(-0.5).differentiability() ==
          DifferentiabilityClass::NowhereDifferentiable);
    CHECK(CoefficientSeq::geometric(0.25).differentiability() ==
          DifferentiabilityClass::AbsolutelyContinuous);
    CHECK(CoefficientSeq::dyadic_sqrt().differentiability() ==
          DifferentiabilityClass::AEDifferentiableNowhere);
    CHECK(CoefficientSeq::explicit_terms({1.0, 0.5}).differentiability() ==
          DifferentiabilityClass::AbsolutelyContinuous);
}

TEST_CASE("string names") {
    CHECK(takagi::to_string(RateCondition::WeakLawRatio) == "weak_law_ratio");
    CHECK(takagi::to_string(RateCondition::LilFourthPower) == "lil_fourth_power");
    CHECK(takagi::to_string(Verdict::Holds) == "Holds");
    CHECK(takagi::rate_condition_from_string("clt_max_term") ==
          RateCondition::CltMaxTerm);
    CHECK_THROWS_AS(takagi::rate_condition_from_string("bogus"), takagi::ParseError);
}

}
