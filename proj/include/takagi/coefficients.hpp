#pragma once

#include <string>
#include <utility>
#include <vector>

namespace takagi {

// Sum of a series tail with a certified absolute error bound.
struct TailSum {
    double value = 0.0;
    double error_bound = 0.0;
};

enum class Family { PowerLaw, StretchedExp, Geometric, Explicit, DyadicSqrt };

// Tail-ratio conditions that select which limit theorem applies to the
// normalized tail sums. Named by the role each one plays:
//   WeakLawRatio     : tail2(N) / tail1(N)^2 -> 0
//   StrongLawExpSum  : sum_N exp(-K tail1(N)^2 / tail2(N)) < inf for all K > 0
//   CltMaxTerm       : sup_{j>=N} c_j^2 / tail2(N) -> 0
//   LilFourthPower   : sum_N c_N^4 / tail2(N)^2 < inf
// where tail_p(N) = sum_{n>=N} c_n^p.
enum class RateCondition { WeakLawRatio, StrongLawExpSum, CltMaxTerm, LilFourthPower };

enum class Verdict { Holds, Fails, Inconclusive };

// Trichotomy on the scaled coefficients b_n = 2^n c_n:
//   sum b_n^2 < inf        -> AbsolutelyContinuous
//   b_n -> 0, sum = inf    -> AEDifferentiableNowhere
//   limsup |b_n| > 0       -> NowhereDifferentiable
enum class DifferentiabilityClass {
    AbsolutelyContinuous,
    AEDifferentiableNowhere,
    NowhereDifferentiable,
};

struct ConditionVerdict {
    RateCondition condition;
    Verdict verdict;
    std::vector<std::pair<long, double>> evidence; // (N, ratio) on a geometric grid
    std::string rationale;
};

// Standing hypotheses of the limit theorems: every tail has positive
// square sum and nonzero mean sum. Built-in families satisfy both for
// all N; finite explicit lists always violate both beyond their support.
struct HypothesisStatus {
    bool tail_square_positive = true;
    bool tail_mean_nonzero = true;
    long first_zero_square_N = 0; // smallest violating N, 0 if none
    long first_zero_mean_N = 0;
};

class CoefficientSeq {
  public:
    static CoefficientSeq power_law(double alpha);          // c_n = n^-alpha, alpha > 1
    static CoefficientSeq stretched_exp(double K, double beta); // c_n = exp(-K n^beta)
    static CoefficientSeq geometric(double r);              // c_n = r^n, 0 < |r| < 1
    static CoefficientSeq explicit_terms(std::vector<double> terms); // zero beyond list
    static CoefficientSeq dyadic_sqrt();                    // c_n = 2^-n / sqrt(n)

    Family family() const { return family_; }
    double alpha() const { return alpha_; }
    double K() const { return K_; }
    double beta() const { return beta_; }
    double r() const { return r_; }
    const std::vector<double>& terms() const { return terms_; }

    // Canonical spec string, e.g. "powerlaw:alpha=2".
    std::string describe() const;

    double term(long n) const;       // c_n for n >= 1
    double term_ratio(long n) const; // c_{n+1} / c_n (requires c_n != 0)

    // sum_{n>=N} c_n^p with certified error bound. p >= 1.
    TailSum tail_sum(long N, int p) const;
    // sum_{n>=N} |c_n|^p with certified error bound.
    TailSum tail_sum_abs(long N, int p) const;
    // sum_{n>=N} (c_n / c_N)^p, computed in ratio form so it stays
    // well scaled even where c_N itself underflows.
    double relative_tail_sum(long N, int p) const;
    // sup_{j>=N} c_j^2 (closed form for monotone families, scan for Explicit).
    double sup_term_sq(long N) const;

    ConditionVerdict check_condition(RateCondition which) const;
    std::vector<ConditionVerdict> check_all_conditions() const;
    DifferentiabilityClass differentiability() const;
    HypothesisStatus check_hypotheses() const;

  private:
    CoefficientSeq() = default;

    Family family_ = Family::Geometric;
    double alpha_ = 0.0;
    double K_ = 0.0;
    double beta_ = 0.0;
    double r_ = 0.0;
    std::vector<double> terms_;
};

// Parses "powerlaw:alpha=2", "stretchexp:K=1,beta=0.5", "geometric:r=0.5",
// "explicit:file=<path>" (one real per line), "explicit:terms=a;b;c",
// "dyadicsqrt". Throws ParseError on malformed input.
CoefficientSeq parse_seq_spec(const std::string& text);

std::string to_string(Family f);
std::string to_string(RateCondition c);
std::string to_string(Verdict v);
std::string to_string(DifferentiabilityClass d);
RateCondition rate_condition_from_string(const std::string& s);

} // namespace takagi
