#include "takagi/moments.hpp"

#include <cmath>

#include "takagi/errors.hpp"

namespace takagi {

TailStats tail_stats(const CoefficientSeq& seq, long N) {
    TailSum t1 = seq.tail_sum(N, 1);
    TailSum t2 = seq.tail_sum(N, 2);
    TailStats st;
    st.N = N;
    st.m_N = 0.5 * t1.value;
    st.m_err = 0.5 * t1.error_bound;
    st.s2_N = t2.value / 12.0;
    st.s2_err = t2.error_bound / 12.0;
    return st;
}

PhiStarMoments phi_star_moments() { return {}; }

double l2_ratio_error(const CoefficientSeq& seq, long N) {
    if (seq.family() == Family::Explicit) {
        TailSum t1 = seq.tail_sum(N, 1);
        TailSum t2 = seq.tail_sum(N, 2);
        if (t1.value == 0.0) throw DomainError("ratio undefined: zero tail mean");
        return t2.value / (3.0 * t1.value * t1.value);
    }
    // ratio form: tail2/tail1^2 = rel2/rel1^2, immune to underflow of c_N
    double rel1 = seq.relative_tail_sum(N, 1);
    double rel2 = seq.relative_tail_sum(N, 2);
    return rel2 / (3.0 * rel1 * rel1);
}

double cov_sq(long i, long j) {
    if (i < 1 || i >= j) throw DomainError("cov_sq requires 1 <= i < j");
    long d = j - i;
    if (d > 500) return 0.0; // 4^-d underflows
    return std::ldexp(1.0 / 180.0, (int)(-2 * d));
}

QuadVarVariance quadratic_variation_variance(const CoefficientSeq& seq, long N) {
    // All sums are taken relative to c_N^2 so the result is finite wherever
    // the tails themselves are positive:
    //   exact = 144 [ (1/180) rel4 + (1/90) D ] / rel2^2,
    //   D = sum_{i>=N} w_i sum_{d>=1} w_{i+d} 4^-d,  w_k = (c_k/c_N)^2.
    bool finite_list = seq.family() == Family::Explicit;
    double cN = seq.term(N);
    if (finite_list && cN == 0.0)
        throw DomainError("variance undefined: zero coefficient at tail start");

    double rel2 = seq.relative_tail_sum(N, 2);
    double rel4 = seq.relative_tail_sum(N, 4);
    if (!(rel2 > 0.0)) throw DomainError("variance undefined: zero tail");

    constexpr int kMaxLag = 64; // covariance decays as 4^-lag
    long double D = 0.0L;
    long end = finite_list ? (long)seq.terms().size() : N + 2000000;
    std::vector<double> w; // w[k] = (c_{N+k}/c_N)^2, grown on demand
    w.reserve(256);
    w.push_back(1.0);
    auto weight = [&](long k) -> double {
        if (finite_list) { // direct: zero coefficients break the ratio chain
            double c = seq.term(N + k) / cN;
            return c * c;
        }
        while ((long)w.size() <= k) {
            long n = N + (long)w.size() - 1;
            double q = seq.term_ratio(n);
            w.push_back(w.back() * q * q);
        }
        return w[(size_t)k];
    };
    for (long i = N; i <= end; ++i) {
        if (finite_list && seq.term(i) == 0.0) continue;
        double wi = weight(i - N);
        long double inner = 0.0L;
        for (int d = 1; d <= kMaxLag; ++d) {
            if (finite_list && i + d > end) break;
            inner += weight(i - N + d) * std::ldexp(1.0, -2 * d);
        }
        D += (long double)wi * inner;
        if (!finite_list && wi * wi < 1e-18 * (double)(D + 1e-300L)) break;
    }

    QuadVarVariance out;
    out.exact = 144.0 * ((1.0 / 180.0) * rel4 + (1.0 / 90.0) * (double)D) /
                (rel2 * rel2);
    // sup_{j>=N} c_j^2 / tail2 in the same relative scale
    double sup_rel;
    if (finite_list) {
        double t2 = seq.tail_sum(N, 2).value;
        sup_rel = seq.sup_term_sq(N) / t2;
    } else {
        sup_rel = 1.0 / rel2; // |c| monotone for the built-in families
    }
    out.bound = (4.0 / 3.0) * sup_rel;
    return out;
}

double tail_deviation_bound(const CoefficientSeq& seq, long N, double c) {
    if (!(c > 0.0)) throw DomainError("deviation bound requires c > 0");
    TailSum t2 = seq.tail_sum_abs(N, 2);
    if (t2.value <= 0.0) return 0.0;
    double b = 2.0 * std::exp(-c * c / (2.0 * t2.value));
    return std::min(b, 1.0);
}

} // namespace takagi
