#pragma once

#include "takagi/coefficients.hpp"

namespace takagi {

// Mean and variance of the tail sum starting at N:
//   m_N = (1/2) sum_{n>=N} c_n,  s2_N = (1/12) sum_{n>=N} c_n^2.
struct TailStats {
    long N = 1;
    double m_N = 0.0;
    double s2_N = 0.0;
    double m_err = 0.0;
    double s2_err = 0.0;
};

TailStats tail_stats(const CoefficientSeq& seq, long N);

// Moments of a single centered tent iterate under the uniform law.
struct PhiStarMoments {
    double mean = 0.0;
    double second = 1.0 / 12.0;
    double fourth = 1.0 / 80.0;
};

PhiStarMoments phi_star_moments();

// E[((f - f_N)/m_N - 1)^2] = (1/3) tail2 / tail1^2. Requires m_N != 0.
double l2_ratio_error(const CoefficientSeq& seq, long N);

// Cov((phi*^(i))^2, (phi*^(j))^2) = (1/180) 4^{-(j-i)} for i < j.
double cov_sq(long i, long j);

// Variance of the normalized quadratic variation sum_{n>=N} (c_n phi*^(n))^2 / s2_N,
// with the closed-form upper bound (4/3) sup_{j>=N} c_j^2 / tail2.
struct QuadVarVariance {
    double exact = 0.0;
    double bound = 0.0;
};

QuadVarVariance quadratic_variation_variance(const CoefficientSeq& seq, long N);

// Concentration bound P(|M_N| > c) <= 2 exp(-c^2 / (2 tail2)), clamped to [0,1].
double tail_deviation_bound(const CoefficientSeq& seq, long N, double c);

} // namespace takagi
