#pragma once

#include <utility>

#include "takagi/bit_point.hpp"
#include "takagi/coefficients.hpp"

namespace takagi {

// Truncated points certify tent-iterate evaluations only up to this many
// bits below their length.
inline constexpr long kGuardBits = 32;

// One tent step on a plain real. tent(1/2) = 1 from both branch formulas.
double tent(double x);

// One exact tent step on a rational num/den in [0,1].
std::pair<long, long> tent_rational(long num, long den);

// phi^(n)(x) read off the binary expansion: shift n-1 bits, then fold.
// Exact points evaluate exactly for every n (all hidden bits are zero);
// truncated points require n <= length and carry a 2^-(L-n) bound.
CertifiedValue tent_iter(const BitPoint& x, long n);

// 1 - 2 eps_n(x) in {-1, +1}.
int rademacher(const BitPoint& x, long n);

// phi^(n)(x) - 1/2 via tent_iter. Truncated points require n <= L - guard.
CertifiedValue phi_star(const BitPoint& x, long n);

// The same quantity via the sign-digit series
// -2^(n-1) R_n(x) sum_{k>n} R_k(x) 2^-k, evaluated by backward Horner.
// Kept separate from phi_star as an independent cross-checking route;
// no guard requirement, any n <= length is accepted.
CertifiedValue phi_star_series(const BitPoint& x, long n);

// Both phi_star routes evaluated side by side in extended precision.
// For points of length <= 64 every intermediate fits the 64-bit
// significand, so `gap` is the exact discrepancy of the two formulas
// over the stored digits: 2^-(L-n+1) on truncated points, 0 on exact.
struct RouteCheck {
    double direct = 0.0;
    double series = 0.0;
    double gap = 0.0;
};

RouteCheck phi_star_routes(const BitPoint& x, long n);

// f(x) = sum c_n phi^(n)(x) with abs_error <= tol.
CertifiedValue eval_f(const CoefficientSeq& seq, const BitPoint& x, double tol);

// f_N(x) = sum_{n<N} c_n phi^(n)(x) (empty sum for N = 1).
CertifiedValue eval_partial(const CoefficientSeq& seq, const BitPoint& x, long N);

// M_N(x) = f - f_N - m_N = sum_{n>=N} c_n (phi^(n) - 1/2), abs_error <= tol.
CertifiedValue tail_M(const CoefficientSeq& seq, const BitPoint& x, long N, double tol);

// Normalized tail statistics:
//   stat_ratio = (f - f_N)/m_N            (requires m_N != 0)
//   stat_clt   = M_N / sqrt(s2_N)
//   stat_lil   = M_N / sqrt(2 s2_N log log(1/s2_N))  (requires s2_N < 1/e)
double stat_ratio(const CoefficientSeq& seq, const BitPoint& x, long N, double tol);
double stat_clt(const CoefficientSeq& seq, const BitPoint& x, long N, double tol);
double stat_lil(const CoefficientSeq& seq, const BitPoint& x, long N, double tol);

// Both sides of the geometric self-similarity identity
//   (f_r(x) - f_{r,N}(x)) / m_N = f_r(B^{N-1} x) / E[f_r],
// where B drops one leading bit and E[f_r] = (1/2) r/(1-r).
struct SelfSimCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    double err = 0.0; // combined certified error of both sides
};

SelfSimCheck self_similarity(double r, const BitPoint& x, long N, double tol);

} // namespace takagi
