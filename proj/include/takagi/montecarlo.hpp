#pragma once

#include <cstdint>
#include <vector>

#include "takagi/coefficients.hpp"
#include "takagi/report.hpp"
#include "takagi/sampling.hpp"

namespace takagi {

// Source of evaluation points for the statistical runners.  Point
// evaluations are independent and pure; accumulation is an ordered
// concatenation of per-point values, so sharding the index range and
// merging preserves every metric exactly.
struct PointSource {
    virtual ~PointSource() = default;
    virtual long count() const = 0;
    virtual BitPoint point(long i) const = 0;
    virtual long bits() const = 0;
    virtual bool exact() const = 0;
    virtual std::uint64_t seed() const = 0;
};

class BatchSource final : public PointSource {
public:
    explicit BatchSource(const SampleBatch& b) : b_(&b) {}
    long count() const override { return b_->count(); }
    BitPoint point(long i) const override { return b_->point(i); }
    long bits() const override { return b_->bits(); }
    bool exact() const override { return false; }
    std::uint64_t seed() const override { return b_->seed(); }

private:
    const SampleBatch* b_;
};

// The full dyadic grid k/2^m, k = 0..2^m-1, as exact points.
class DyadicGridSource final : public PointSource {
public:
    explicit DyadicGridSource(int m);
    long count() const override { return count_; }
    BitPoint point(long i) const override;
    long bits() const override { return m_; }
    bool exact() const override { return true; }
    std::uint64_t seed() const override { return 0; }

private:
    int m_;
    long count_;
};

// Smallest digit budget L such that the coefficient mass past L
// contributes at most var_fraction of the tail variance at N_max,
// plus a fixed guard.  Batches fed to the runners should carry
// at least this many bits.
long suggest_bits(const CoefficientSeq& seq, long N_max,
                  double var_fraction = 1e-4);

struct LlnConfig {
    std::vector<long> N_list;
    double rel_tol = 0.10;    // gate on |empirical msq / closed form - 1|
    bool check_decade = false; // also gate consecutive-N msq ratios
    double decade_lo = 8.0;
    double decade_hi = 12.0;
};

// Law-of-large-numbers check for the normalized tail ratio: per N the
// mean and mean-square of (stat_ratio - 1) against the closed form, the
// decay of the mean-square along N, and the fraction of paths whose
// |stat_ratio - 1| shrank from the smallest to the largest N.
VerificationReport run_lln(const CoefficientSeq& seq, const PointSource& src,
                           const LlnConfig& cfg);

struct CltConfig {
    long N = 1000;
    double ks_threshold = 0.02;
    bool negative_control = false; // pass means KS stayed >= ks_floor
    double ks_floor = 0.05;
};

// Central-limit check: KS distance of stat_clt to the standard normal;
// for power-law sequences also the explicitly rescaled ratio form; mean
// and variance gated at four standard errors.
VerificationReport run_clt(const CoefficientSeq& seq, const PointSource& src,
                           const CltConfig& cfg);

struct LilConfig {
    long N_lo = 100;
    long N_hi = 10000;
    double grid_ratio = 1.1; // geometric checkpoint spacing
    double epsilon = 0.5;    // envelope 1 + epsilon
    double max_exceed_fraction = 0.05;
    double min_decay_fraction = 0.90;
};

// Iterated-logarithm envelope check: per path the sup of stat_lil (and of
// its negation) over a geometric N grid, the fraction of paths exceeding
// 1 + epsilon, and the fraction whose |stat_ratio - 1| quartile means
// decayed from the first to the last quarter of the grid.
VerificationReport run_lil(const CoefficientSeq& seq, const PointSource& src,
                           const LilConfig& cfg);

struct GeometricConfig {
    long N = 20;
    long ks_samples = 100000; // 0 disables the distribution-identity part
    double ks_threshold = 0.02;
    bool check_quarter_cdf = false; // closed-form CDF points, r = 1/4 only
    double cdf_tol = 0.01;
    long cesaro_N = 0; // 0 disables the Cesaro part
    long cesaro_paths = 10;
    double cesaro_tol = 0.05;
    std::uint64_t seed = 1;
    long bits = 0; // 0 = auto
};

// Geometric-coefficient distributional identity: stat_ratio at N has the
// same law as the normalized function value at N = 1 (two-sample KS over
// independent batches drawn from seed and seed+1), the limit variable has
// mean 1, optionally its closed-form CDF at fixed points (r = 1/4), and
// per-path Cesaro averages of stat_ratio over N = 1..cesaro_N stay near 1
// (paths drawn from seed+2).
VerificationReport run_geometric(double r, const GeometricConfig& cfg);

// CDF of the r = 1/4 limit variable 6x(1-x) on [0, 3/2].
double limit_cdf_quarter(double u);

} // namespace takagi
