#include "takagi/point_eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "takagi/errors.hpp"
#include "takagi/moments.hpp"

namespace takagi {

namespace {

// Rounding slop per evaluated term, folded into certified bounds.
const double kFpSlop = std::ldexp(1.0, -50);

// The 64 digits eps_{start+1} .. eps_{start+64}, MSB first, zero-padded
// past the stored words.
std::uint64_t read64(const std::vector<std::uint64_t>& w, long start) {
    std::size_t wi = (std::size_t)(start >> 6);
    int off = (int)(start & 63);
    std::uint64_t a = wi < w.size() ? w[wi] : 0;
    if (off == 0) return a;
    std::uint64_t b = wi + 1 < w.size() ? w[wi + 1] : 0;
    return (a << off) | (b >> (64 - off));
}

// V(n) = 0.eps_{n+1} eps_{n+2} ... over the stored digits (zero beyond).
long double suffix_value(const BitPoint& x, long n) {
    const auto& w = x.words();
    long double v = ldexpl((long double)read64(w, n), -64);
    if (n + 64 < (long)x.length()) {
        v += ldexpl((long double)read64(w, n + 64), -128);
    }
    return v;
}

// eps_n with zero extension past the stored length (callers range-check
// truncated access).
int bit_raw(const BitPoint& x, long n) {
    if (n > (long)x.length()) return 0;
    std::size_t i = (std::size_t)(n - 1);
    return (int)((x.words()[i >> 6] >> (63 - (i & 63))) & 1u);
}

// Error bound of a single tent_iter value at depth n.
double iter_error(const BitPoint& x, long n) {
    long L = x.length();
    if (x.is_exact()) {
        return L - n <= 53 ? 0.0 : std::ldexp(1.0, -52);
    }
    return std::ldexp(1.0, (int)std::max(-(L - n), -1074L)) + std::ldexp(1.0, -52);
}

struct SweepResult {
    long double sum = 0.0L;   // sum of c_n * (phi^(n) - offset)
    double bit_error = 0.0;   // sum |c_n| 2^-(L-n) over truncated digits
    double abs_sum = 0.0;     // sum |c_n|, for rounding slop
};

// Accumulates c_n * (phi^(n)(x) - offset) for n = lo..hi by the backward
// suffix recurrence V(n-1) = (eps_n + V(n))/2.  hi must be <= length.
SweepResult sweep_terms(const CoefficientSeq& seq, const BitPoint& x,
                        long lo, long hi, double offset) {
    SweepResult out;
    if (hi < lo) return out;
    long L = x.length();
    bool exact = x.is_exact();
    long double v = suffix_value(x, hi);
    for (long n = hi; n >= lo; --n) {
        int e = bit_raw(x, n);
        long double phi = e ? 1.0L - v : v;
        double c = seq.term(n);
        if (c != 0.0) {
            out.sum += (long double)c * (phi - (long double)offset);
            out.abs_sum += std::fabs(c);
            if (!exact) {
                out.bit_error += std::fabs(c) * std::ldexp(1.0, (int)-(L - n));
            }
        }
        v = ((long double)e + v) / 2.0L;
    }
    return out;
}

// Smallest N with tail_sum_abs(N,1) certifiably <= bound, or -1 when the
// search exceeds `cap` (then *reached holds the first satisfying N found
// past the cap, for the precision hint).
long find_tail_cutoff(const CoefficientSeq& seq, double bound, long cap,
                      long* reached) {
    auto ok = [&](long N) {
        TailSum t = seq.tail_sum_abs(N, 1);
        return t.value + t.error_bound <= bound;
    };
    long hi = 1;
    while (!ok(hi)) {
        if (hi > (1L << 40)) {
            if (reached) *reached = hi;
            return -1;
        }
        hi *= 2;
    }
    long lo = hi / 2 + 1;
    if (hi == 1) lo = 1;
    while (lo < hi) {
        long mid = lo + (hi - lo) / 2;
        if (ok(mid)) hi = mid; else lo = mid + 1;
    }
    if (reached) *reached = hi;
    return hi <= cap ? hi : -1;
}

} // namespace

double tent(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("tent: x must lie in [0,1]");
    return x <= 0.5 ? 2.0 * x : 2.0 * (1.0 - x);
}

std::pair<long, long> tent_rational(long num, long den) {
    if (den <= 0 || num < 0 || num > den) {
        throw DomainError("tent_rational: need 0 <= num/den <= 1");
    }
    if (2 * num <= den) return {2 * num, den};
    return {2 * (den - num), den};
}

CertifiedValue tent_iter(const BitPoint& x, long n) {
    if (n < 1) throw DomainError("tent_iter: index must be >= 1");
    long L = x.length();
    if (n > L) {
        if (x.is_exact()) return {0.0, 0.0};
        throw PrecisionError("tent_iter: digit position past truncated length", n);
    }
    long double v = suffix_value(x, n);
    double value = (double)(bit_raw(x, n) ? 1.0L - v : v);
    return {value, iter_error(x, n)};
}

int rademacher(const BitPoint& x, long n) {
    if (n < 1) throw DomainError("rademacher: index must be >= 1");
    if (n > (long)x.length() && !x.is_exact()) {
        throw PrecisionError("rademacher: digit position past truncated length", n);
    }
    return 1 - 2 * bit_raw(x, n);
}

CertifiedValue phi_star(const BitPoint& x, long n) {
    if (n < 1) throw DomainError("phi_star: index must be >= 1");
    if (!x.is_exact() && n > (long)x.length() - kGuardBits) {
        throw PrecisionError("phi_star: needs the guard margin below the truncation",
                             n + kGuardBits);
    }
    CertifiedValue t = tent_iter(x, n);
    return {t.value - 0.5, t.abs_error};
}

CertifiedValue phi_star_series(const BitPoint& x, long n) {
    if (n < 1) throw DomainError("phi_star_series: index must be >= 1");
    long L = x.length();
    if (n > L && !x.is_exact()) {
        throw PrecisionError("phi_star_series: digit position past truncated length", n);
    }
    // Exact points continue with digit 0 (R = +1) forever, so the omitted
    // part of the Horner sum is exactly 2^-(L-n); seed it as the initial
    // value.  Truncated points omit it and carry the bound instead.
    long jmax = L - n;
    long double h = x.is_exact() ? 1.0L : 0.0L;
    for (long j = jmax; j >= 1; --j) {
        h = ((long double)(1 - 2 * bit_raw(x, n + j)) + h) / 2.0L;
    }
    long double rn = (long double)(1 - 2 * bit_raw(x, n));
    double value = (double)(-0.5L * rn * h);
    double err = x.is_exact()
                     ? std::ldexp(1.0, -52)
                     : std::ldexp(1.0, (int)std::max(-(jmax + 1), -1074L)) +
                           std::ldexp(1.0, -52);
    return {value, err};
}

RouteCheck phi_star_routes(const BitPoint& x, long n) {
    if (n < 1) throw DomainError("phi_star_routes: index must be >= 1");
    long L = x.length();
    if (n > L && !x.is_exact()) {
        throw PrecisionError("phi_star_routes: digit position past truncated length", n);
    }
    long double v = suffix_value(x, n);
    long double direct = (bit_raw(x, n) ? 1.0L - v : v) - 0.5L;
    long double h = x.is_exact() ? 1.0L : 0.0L;
    for (long j = L - n; j >= 1; --j) {
        h = ((long double)(1 - 2 * bit_raw(x, n + j)) + h) / 2.0L;
    }
    long double series = -0.5L * (long double)(1 - 2 * bit_raw(x, n)) * h;
    RouteCheck out;
    out.direct = (double)direct;
    out.series = (double)series;
    out.gap = (double)fabsl(direct - series);
    return out;
}

CertifiedValue eval_partial(const CoefficientSeq& seq, const BitPoint& x, long N) {
    if (N < 1) throw DomainError("eval_partial: N must be >= 1");
    long L = x.length();
    if (!x.is_exact() && N - 1 > L) {
        throw PrecisionError("eval_partial: partial sum needs more digits than stored",
                             N - 1);
    }
    // Exact points: terms past the stored digits vanish identically.
    long top = std::min(N - 1, L);
    SweepResult s = sweep_terms(seq, x, 1, top, 0.0);
    return {(double)s.sum, s.bit_error + s.abs_sum * kFpSlop};
}

CertifiedValue eval_f(const CoefficientSeq& seq, const BitPoint& x, double tol) {
    if (!(tol > 0.0)) throw DomainError("eval_f: tolerance must be positive");
    long L = x.length();
    if (x.is_exact()) {
        SweepResult s = sweep_terms(seq, x, 1, L, 0.0);
        return {(double)s.sum, s.abs_sum * kFpSlop};
    }
    long reached = 0;
    long cutoff = find_tail_cutoff(seq, tol / 2.0, L + 1, &reached);
    if (cutoff < 0) {
        throw PrecisionError("eval_f: tolerance unreachable at this truncation length",
                             reached + kGuardBits);
    }
    SweepResult s = sweep_terms(seq, x, 1, cutoff - 1, 0.0);
    TailSum tail = seq.tail_sum_abs(cutoff, 1);
    double err = s.bit_error + s.abs_sum * kFpSlop + tail.value + tail.error_bound;
    if (err > tol) {
        double need = std::log2((s.abs_sum + tail.value + 1e-300) / (tol / 2.0));
        long hint = cutoff + (long)std::ceil(std::max(need, 0.0)) + kGuardBits;
        throw PrecisionError("eval_f: tolerance unreachable at this truncation length",
                             hint);
    }
    return {(double)s.sum, err};
}

CertifiedValue tail_M(const CoefficientSeq& seq, const BitPoint& x, long N,
                      double tol) {
    if (N < 1) throw DomainError("tail_M: N must be >= 1");
    if (!(tol > 0.0)) throw DomainError("tail_M: tolerance must be positive");
    long L = x.length();
    SweepResult s = sweep_terms(seq, x, N, L, 0.5);
    double value;
    double err = s.bit_error + s.abs_sum * kFpSlop;
    if (x.is_exact()) {
        // phi^(n) = 0 exactly past the stored digits, so the rest of the
        // series contributes -1/2 of the signed tail sum.
        if (L + 1 > N) {
            TailSum t1 = seq.tail_sum(L + 1, 1);
            value = (double)(s.sum - 0.5L * (long double)t1.value);
            err += 0.5 * t1.error_bound + std::fabs(t1.value) * kFpSlop;
        } else {
            TailSum t1 = seq.tail_sum(N, 1);
            value = -0.5 * t1.value;
            err += 0.5 * t1.error_bound;
        }
    } else {
        long omitted_from = std::max(N, L + 1);
        TailSum ta = seq.tail_sum_abs(omitted_from, 1);
        value = (double)s.sum;
        err += 0.5 * (ta.value + ta.error_bound);
    }
    if (err > tol) {
        throw PrecisionError("tail_M: tolerance unreachable at this truncation length",
                             L + kGuardBits + 8);
    }
    return {value, err};
}

double stat_ratio(const CoefficientSeq& seq, const BitPoint& x, long N, double tol) {
    TailStats ts = tail_stats(seq, N);
    if (ts.m_N == 0.0) {
        throw DomainError("stat_ratio: normalizer undefined at this N");
    }
    CertifiedValue m = tail_M(seq, x, N, tol * std::fabs(ts.m_N));
    return 1.0 + m.value / ts.m_N;
}

double stat_clt(const CoefficientSeq& seq, const BitPoint& x, long N, double tol) {
    TailStats ts = tail_stats(seq, N);
    if (!(ts.s2_N > 0.0)) {
        throw DomainError("stat_clt: normalizer undefined at this N");
    }
    double sd = std::sqrt(ts.s2_N);
    CertifiedValue m = tail_M(seq, x, N, tol * sd);
    return m.value / sd;
}

double stat_lil(const CoefficientSeq& seq, const BitPoint& x, long N, double tol) {
    TailStats ts = tail_stats(seq, N);
    double inv_e = std::exp(-1.0);
    if (!(ts.s2_N > 0.0) || ts.s2_N >= inv_e) {
        throw DomainError("stat_lil: normalizer undefined at this N");
    }
    double norm = std::sqrt(2.0 * ts.s2_N * std::log(std::log(1.0 / ts.s2_N)));
    CertifiedValue m = tail_M(seq, x, N, tol * norm);
    return m.value / norm;
}

SelfSimCheck self_similarity(double r, const BitPoint& x, long N, double tol) {
    if (!(std::fabs(r) < 1.0) || r == 0.0) {
        throw DomainError("self_similarity: need 0 < |r| < 1");
    }
    if (N < 1) throw DomainError("self_similarity: N must be >= 1");
    if (!(tol > 0.0)) throw DomainError("self_similarity: tolerance must be positive");
    CoefficientSeq seq = CoefficientSeq::geometric(r);
    TailStats ts = tail_stats(seq, N);
    CertifiedValue m = tail_M(seq, x, N, tol * std::fabs(ts.m_N) / 4.0);
    SelfSimCheck out;
    out.lhs = 1.0 + m.value / ts.m_N;
    double lhs_err = (m.abs_error + ts.m_err) / std::fabs(ts.m_N) * 2.0;

    BitPoint y = N == 1 ? x : x.shifted((int)(N - 1));
    double mean_f = 0.5 * r / (1.0 - r);
    CertifiedValue fy = eval_f(seq, y, tol * std::fabs(mean_f) / 4.0);
    out.rhs = fy.value / mean_f;
    double rhs_err = fy.abs_error / std::fabs(mean_f);

    out.gap = std::fabs(out.lhs - out.rhs);
    out.err = lhs_err + rhs_err + kFpSlop;
    return out;
}

} // namespace takagi
