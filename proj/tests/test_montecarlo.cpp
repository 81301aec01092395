#include "doctest.h"

#include <cmath>
#include <string>

#include "takagi/coefficients.hpp"
#include "takagi/errors.hpp"
#include "takagi/montecarlo.hpp"
#include "takagi/point_eval.hpp"
#include "takagi/report.hpp"
#include "takagi/sampling.hpp"

using takagi::BatchSource;
using takagi::BitPoint;
using takagi::CoefficientSeq;
using takagi::DyadicGridSource;
using takagi::SampleBatch;
using takagi::VerificationReport;

namespace {

double metric(const VerificationReport& rep, const std::string& name, long N = -1) {
    for (const auto& m : rep.metrics) {
        if (m.name == name && m.N == N) return m.value;
    }
    return std::nan("");
}

// A window [lo, lo+n) of an existing batch, for shard-invariance checks.
struct SliceSource final : takagi::PointSource {
    const SampleBatch* b;
    long lo, n;
    SliceSource(const SampleBatch& batch, long lo_, long n_)
        : b(&batch), lo(lo_), n(n_) {}
    long count() const override { return n; }
    BitPoint point(long i) const override { return b->point(lo + i); }
    long bits() const override { return b->bits(); }
    bool exact() const override { return false; }
    std::uint64_t seed() const override { return b->seed(); }
};

} // namespace

TEST_SUITE("montecarlo") {

TEST_CASE("dyadic grid source") {
    DyadicGridSource g(3);
    CHECK(g.count() == 8);
    CHECK(g.bits() == 3);
    CHECK(g.exact());
    CHECK(g.point(5).value() == 0.625);
    CHECK(g.point(5).is_exact());
    CHECK_THROWS_AS(DyadicGridSource(0), takagi::DomainError);
    CHECK_THROWS_AS(DyadicGridSource(31), takagi::DomainError);
    CHECK_THROWS_AS(g.point(8), takagi::DomainError);
}

TEST_CASE("batch source passthrough") {
    SampleBatch b(5, 10, 96);
    BatchSource s(b);
    CHECK(s.count() == 10);
    CHECK(s.bits() == 96);
    CHECK_FALSE(s.exact());
    CHECK(s.seed() == 5);
    CHECK(s.point(3).words() == b.point(3).words());
}

TEST_CASE("digit budget sizing") {
    CoefficientSeq g = CoefficientSeq::geometric(0.5);
    long L = takagi::suggest_bits(g, 20);
    CHECK(L == 90); // variance past L-64 is 4^-7 < 1e-4 of the N=20 tail
    takagi::TailSum kept = g.tail_sum(20, 2);
    takagi::TailSum dropped = g.tail_sum(L - 64 + 1, 2);
    CHECK(dropped.value <= 1e-4 * kept.value);
    CHECK(takagi::suggest_bits(g, 20) >= 20 + 65);
    CHECK(takagi::suggest_bits(CoefficientSeq::power_law(2), 100) > 2000);
    CHECK_THROWS_AS(takagi::suggest_bits(CoefficientSeq::explicit_terms({1.0}), 2),
                    takagi::DomainError);
}

TEST_CASE("runners demand enough digits for truncated sources") {
    SampleBatch b(6, 4, 64);
    BatchSource src(b);
    takagi::LlnConfig cfg;
    cfg.N_list = {10}; // needs 74 stored digits
    CHECK_THROWS_AS(takagi::run_lln(CoefficientSeq::geometric(0.5), src, cfg),
                    takagi::PrecisionError);
}

TEST_CASE("exhausted dyadic grids make the tail ratio vanish") {
    // every grid point has phi^(n) = 0 for n > 10, so stat_ratio = 0 and
    // the deviation is exactly -1; the closed-form mean square is 1/9,
    // so the gate must report a failure
    DyadicGridSource grid(10);
    takagi::LlnConfig cfg;
    cfg.N_list = {30};
    VerificationReport rep = takagi::run_lln(CoefficientSeq::geometric(0.5), grid, cfg);
    CHECK(std::fabs(metric(rep, "mean_dev", 30) + 1.0) <= 1e-12);
    CHECK(std::fabs(metric(rep, "msq_dev", 30) - 1.0) <= 1e-12);
    CHECK(metric(rep, "closed_msq", 30) == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
    CHECK_FALSE(rep.pass);
}

TEST_CASE("finite lists accumulate absolute terms with the grid remainder") {
    // explicit {1, 1/2, 1/4} on the 4-point grid: the n=3 term lies past
    // the stored digits and enters through the closed-form remainder;
    // hand computation gives mean_dev = -1/7 and msq_dev = 13/49
    CoefficientSeq e = CoefficientSeq::explicit_terms({1.0, 0.5, 0.25});
    DyadicGridSource grid(2);
    takagi::LlnConfig cfg;
    cfg.N_list = {1};
    VerificationReport rep = takagi::run_lln(e, grid, cfg);
    CHECK(metric(rep, "mean_dev", 1) == doctest::Approx(-1.0 / 7.0).epsilon(1e-14));
    CHECK(metric(rep, "msq_dev", 1) == doctest::Approx(13.0 / 49.0).epsilon(1e-14));
}

TEST_CASE("sweep route agrees with the certified point route") {
    CoefficientSeq g = CoefficientSeq::geometric(0.45);
    SampleBatch b(7, 3, 128);
    for (long i = 0; i < 3; ++i) {
        SliceSource one(b, i, 1);
        takagi::LlnConfig cfg;
        cfg.N_list = {5, 30};
        VerificationReport rep = takagi::run_lln(g, one, cfg);
        for (long N : {5L, 30L}) {
            double direct = takagi::stat_ratio(g, b.point(i), N, 1e-6) - 1.0;
            CHECK(metric(rep, "mean_dev", N) == doctest::Approx(direct).epsilon(1e-10));
        }
    }
    // grid points cross-checked the same way, through the exact remainder
    DyadicGridSource grid(4);
    takagi::LlnConfig gcfg;
    gcfg.N_list = {3};
    VerificationReport grep = takagi::run_lln(g, grid, gcfg);
    double acc = 0.0, sq = 0.0;
    for (long i = 0; i < grid.count(); ++i) {
        double d = takagi::stat_ratio(g, grid.point(i), 3, 1e-9) - 1.0;
        acc += d;
        sq += d * d;
    }
    CHECK(metric(grep, "mean_dev", 3) ==
          doctest::Approx(acc / (double)grid.count()).epsilon(1e-11));
    CHECK(metric(grep, "msq_dev", 3) ==
          doctest::Approx(sq / (double)grid.count()).epsilon(1e-11));
}

TEST_CASE("lln domain checks") {
    DyadicGridSource grid(2);
    takagi::LlnConfig cfg;
    cfg.N_list = {1};
    CHECK_THROWS_AS(
        takagi::run_lln(CoefficientSeq::explicit_terms({1.0, -1.0}), grid, cfg),
        takagi::DomainError); // tail mean is exactly zero
    takagi::LlnConfig none;
    CHECK_THROWS_AS(takagi::run_lln(CoefficientSeq::geometric(0.5), grid, none),
                    takagi::DomainError); // empty N list
}

TEST_CASE("normal limit runner and shard invariance") {
    CoefficientSeq p = CoefficientSeq::power_law(2);
    long bits = takagi::suggest_bits(p, 100);
    SampleBatch big(8, 5000, (int)bits);
    SampleBatch small(8, 2000, (int)bits);
    takagi::CltConfig cfg;
    cfg.N = 100;
    SliceSource window(big, 0, 2000);
    BatchSource direct(small);
    VerificationReport a = takagi::run_clt(p, window, cfg);
    VerificationReport b = takagi::run_clt(p, direct, cfg);
    takagi::RunConfig rc;
    CHECK(takagi::report_to_json(a, rc, false) == takagi::report_to_json(b, rc, false));
    CHECK(std::isfinite(metric(a, "ks_normal", 100)));
    CHECK(std::isfinite(metric(a, "ks_rescaled_ratio", 100))); // power-law extra form
    CHECK(std::fabs(metric(a, "mean", 100)) < 0.1);
}

TEST_CASE("normal limit negative control") {
    // geometric tails do not normalize: the KS distance must stay large
    CoefficientSeq g = CoefficientSeq::geometric(0.5);
    SampleBatch b(9, 20000, (int)takagi::suggest_bits(g, 20));
    BatchSource src(b);
    takagi::CltConfig cfg;
    cfg.N = 20;
    cfg.negative_control = true;
    cfg.ks_floor = 0.05;
    VerificationReport rep = takagi::run_clt(g, src, cfg);
    CHECK(metric(rep, "ks_normal", 20) >= 0.05);
    CHECK(rep.pass);
    REQUIRE_FALSE(rep.notes.empty());
}

TEST_CASE("envelope runner structure") {
    CoefficientSeq p = CoefficientSeq::power_law(2);
    long bits = takagi::suggest_bits(p, 500);
    SampleBatch b(10, 20, (int)bits);
    BatchSource src(b);
    takagi::LilConfig cfg;
    cfg.N_lo = 50;
    cfg.N_hi = 500;
    VerificationReport rep = takagi::run_lil(p, src, cfg);
    CHECK(metric(rep, "grid_size") >= 20.0); // log(10)/log(1.1) + endpoint
    CHECK(metric(rep, "envelope") == 1.5);
    double ex = metric(rep, "sup_exceed_fraction");
    double dc = metric(rep, "decay_fraction");
    CHECK(ex >= 0.0);
    CHECK(ex <= 1.0);
    CHECK(dc >= 0.0);
    CHECK(dc <= 1.0);
    CHECK(std::isfinite(metric(rep, "sup_max")));
    CHECK(std::isfinite(metric(rep, "neg_sup_max")));

    takagi::LilConfig bad;
    bad.N_lo = 10;
    bad.N_hi = 5;
    CHECK_THROWS_AS(takagi::run_lil(p, src, bad), takagi::DomainError);
    // wide geometric tails have variance above 1/e, where the
    // log-log normalizer is undefined
    takagi::LilConfig low;
    low.N_lo = 1;
    low.N_hi = 2;
    SampleBatch tiny(11, 2, 128);
    BatchSource tsrc(tiny);
    CHECK_THROWS_AS(takagi::run_lil(CoefficientSeq::geometric(0.99), tsrc, low),
                    takagi::DomainError);
}

TEST_CASE("geometric identity runner") {
    takagi::GeometricConfig cfg;
    cfg.N = 20;
    cfg.ks_samples = 20000;
    cfg.ks_threshold = 0.03;
    cfg.check_quarter_cdf = true;
    cfg.cdf_tol = 0.02;
    cfg.cesaro_N = 2000;
    cfg.cesaro_paths = 3;
    cfg.cesaro_tol = 0.1;
    cfg.seed = 12;
    VerificationReport rep = takagi::run_geometric(0.25, cfg);
    CHECK(rep.pass);
    CHECK(metric(rep, "ks_two_sample", 20) <= 0.03);
    CHECK(std::fabs(metric(rep, "limit_mean") - 1.0) <=
          4.0 * metric(rep, "limit_mean_se"));
    CHECK(metric(rep, "cdf_gap_u075") <= 0.02);
    CHECK(metric(rep, "cesaro_worst_dev") <= 0.1);

    // the closed-form CDF points only exist for r = 1/4
    takagi::GeometricConfig half = cfg;
    half.cesaro_N = 0;
    CHECK_THROWS_AS(takagi::run_geometric(0.5, half), takagi::DomainError);
    CHECK_THROWS_AS(takagi::run_geometric(1.5, cfg), takagi::DomainError);
}

TEST_CASE("geometric runner is deterministic") {
    takagi::GeometricConfig cfg;
    cfg.N = 5;
    cfg.ks_samples = 2000;
    cfg.cesaro_N = 500;
    cfg.cesaro_paths = 2;
    cfg.cesaro_tol = 0.5;
    cfg.seed = 13;
    VerificationReport a = takagi::run_geometric(0.7, cfg);
    VerificationReport b = takagi::run_geometric(0.7, cfg);
    takagi::RunConfig rc;
    CHECK(takagi::report_to_json(a, rc, false) == takagi::report_to_json(b, rc, false));
}

TEST_CASE("limit distribution for quarter coefficients") {
    CHECK(takagi::limit_cdf_quarter(0.0) == 0.0);
    CHECK(takagi::limit_cdf_quarter(1.5) == 1.0);
    CHECK(takagi::limit_cdf_quarter(0.75) ==
          doctest::Approx(1.0 - std::sqrt(0.5)).epsilon(1e-15));
    CHECK_THROWS_AS(takagi::limit_cdf_quarter(-0.1), takagi::DomainError);
    CHECK_THROWS_AS(takagi::limit_cdf_quarter(1.6), takagi::DomainError);
}

}
