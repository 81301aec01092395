#pragma once

namespace takagi {

// Two-sided enclosure of a numerically computed target.  The claim
// "lower <= target <= upper" is only made when in_regime is true;
// out-of-regime rows are reported, not failed.
struct Bracket {
    double lower = 0.0;
    double upper = 0.0;
    double target = 0.0;
    bool in_regime = true;
};

// Constants of the stretched-exponential tail enclosure
//   C1 * a^(1-beta) e^(-K a^beta)  <=  integral_a^inf e^(-K x^beta) dx
//                                  <=  C2 * a^(1-beta) e^(-K a^beta),
// the upper half valid for a >= 1 with K a^beta >= 1.
// C1 = 1/(beta K); C2 comes from repeated integration by parts,
// C2 = (1/beta) sum_{i=1..s+1} p_i K^-i with p_1 = 1, p_{i+1} = p_i (1/beta - i),
// s = ceil(1/beta - 1).  The coefficients are built from that product
// recursion directly, which stays finite when 1/beta is an integer.
double stretch_lower_const(double K, double beta);
double stretch_upper_const(double K, double beta);

// integral_a^inf e^(-K x^beta) dx by adaptive quadrature on the
// substituted form (1/(beta K^(1/beta))) integral_{K a^beta}^inf u^(1/beta - 1) e^-u du,
// absolute error <= 1e-12 * value.  Requires K > 0, 0 < beta <= 1, a > 0.
double stretch_integral(double K, double beta, double a);

// Encloses stretch_integral between the two constants above.
// Requires 0 < beta < 1 strictly; in_regime reflects a >= 1 && K a^beta >= 1.
Bracket stretch_tail_integral_bracket(double K, double beta, double a);

// Encloses the tail sum sum_{n>=N} e^(-K n^beta) between
// C1 N^(1-beta) e^(-K N^beta) and (1 + C2) N^(1-beta) e^(-K N^beta);
// the upper half is claimed for N >= 16 with K N^beta >= 1.
Bracket stretch_tail_sum_bracket(double K, double beta, long N);

// For c_n = e^(-K n^beta): encloses
//   N^(1-beta) * sum_{n>=N} c_n^(2p) / (sum_{n>=N} c_n^p)^2
// between constants depending only on (K, beta, p).
Bracket tail_ratio_bracket(double K, double beta, long N, int p);

// For rapidly decaying c_n = e^(-K n^beta) with beta >= 1 the tail ratio
// sum c_n^2 / (sum c_n)^2 stays above a fixed floor instead of decaying:
//   floor = 1 / (1 + beta^-1 K^(-1/beta))^2.
// Requires K > 0, beta >= 1, K N^beta >= 1.
struct RatioFloor {
    double ratio = 0.0;
    double floor = 0.0;
};

RatioFloor rapid_decay_ratio_floor(double K, double beta, long N);

} // namespace takagi
