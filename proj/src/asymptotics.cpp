#include "takagi/asymptotics.hpp"

#include <cmath>
#include <functional>
#include <vector>

#include "takagi/errors.hpp"

namespace takagi {

namespace {

// u^(q-1) e^-u in overflow-safe form.
double gamma_integrand(double q, double u) {
    return std::exp((q - 1.0) * std::log(u) - u);
}

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double m, double b,
             double fa, double fm, double fb, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(a, m, fa, flm, fm);
    double right = simpson(m, b, fm, frm, fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adapt(f, a, lm, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adapt(f, m, rm, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    return adapt(f, a, m, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 60);
}

void check_stretch_domain(double K, double beta, bool strict_upper) {
    if (!(K > 0.0)) throw DomainError("stretched tail: K must be positive");
    if (!(beta > 0.0) || beta > 1.0 || (strict_upper && beta >= 1.0)) {
        throw DomainError(strict_upper
                              ? "stretched tail enclosure: beta must lie in (0,1)"
                              : "stretched tail: beta must lie in (0,1]");
    }
}

// Certified sum_{n>=N} e^(-K n^beta) for beta in (0,1); stops once the
// integral remainder bound drops below 1e-13 of the accumulated sum.
double stretch_sum_tail(double K, double beta, long N) {
    double c2 = stretch_upper_const(K, beta);
    long double s = 0.0L;
    for (long n = N;; ++n) {
        double nb = std::pow((double)n, beta);
        s += (long double)std::exp(-K * nb);
        if (n >= 1 && K * nb >= 1.0) {
            double rem = c2 * std::pow((double)n, 1.0 - beta) * std::exp(-K * nb);
            if (rem <= 1e-13 * (double)s) break;
        }
        if (n - N > 200000000L) {
            throw PrecisionError("stretched tail sum needs too many terms at these parameters");
        }
    }
    return (double)s;
}

} // namespace

double stretch_lower_const(double K, double beta) {
    check_stretch_domain(K, beta, false);
    return 1.0 / (beta * K);
}

double stretch_upper_const(double K, double beta) {
    check_stretch_domain(K, beta, false);
    double q = 1.0 / beta;
    long s = (long)std::ceil(q - 1.0 - 1e-12);
    double sum = 0.0, p = 1.0, kpow = 1.0;
    for (long i = 1; i <= s + 1; ++i) {
        kpow /= K;
        sum += p * kpow;
        p *= q - (double)i;
    }
    return sum / beta;
}

double stretch_integral(double K, double beta, double a) {
    check_stretch_domain(K, beta, false);
    if (!(a > 0.0)) throw DomainError("stretch_integral: a must be positive");
    double q = 1.0 / beta;
    double A = K * std::pow(a, beta);
    auto h = [q](double u) { return gamma_integrand(q, u); };
    double peak_at = std::max(A, q - 1.0);
    double pval = h(peak_at);
    if (pval == 0.0) return 0.0;
    double U = std::max(A + 30.0, 2.0 * (q - 1.0) + 10.0);
    while (h(U) > 1e-18 * pval) U += 10.0;

    // Coarse pass sets the absolute tolerance, refined pass delivers it.
    long panels = (long)std::ceil((U - A) / 4.0);
    double width = (U - A) / (double)panels;
    double coarse = 0.0;
    for (long i = 0; i < panels; ++i) {
        double x0 = A + width * (double)i, x1 = x0 + width;
        coarse += simpson(x0, x1, h(x0), h(0.5 * (x0 + x1)), h(x1));
    }
    double tol = 1e-13 * coarse / (double)panels + 1e-320;
    double total = 0.0;
    for (long i = 0; i < panels; ++i) {
        double x0 = A + width * (double)i, x1 = x0 + width;
        total += integrate(h, x0, x1, tol);
    }
    return total / (beta * std::pow(K, q));
}

Bracket stretch_tail_integral_bracket(double K, double beta, double a) {
    check_stretch_domain(K, beta, true);
    if (!(a > 0.0)) throw DomainError("stretch_tail_integral_bracket: a must be positive");
    double scale = std::pow(a, 1.0 - beta) * std::exp(-K * std::pow(a, beta));
    Bracket b;
    b.lower = stretch_lower_const(K, beta) * scale;
    b.upper = stretch_upper_const(K, beta) * scale;
    b.target = stretch_integral(K, beta, a);
    b.in_regime = a >= 1.0 && K * std::pow(a, beta) >= 1.0;
    return b;
}

Bracket stretch_tail_sum_bracket(double K, double beta, long N) {
    check_stretch_domain(K, beta, true);
    if (N < 1) throw DomainError("stretch_tail_sum_bracket: N must be >= 1");
    double scale = std::pow((double)N, 1.0 - beta) * std::exp(-K * std::pow((double)N, beta));
    Bracket b;
    b.lower = stretch_lower_const(K, beta) * scale;
    b.upper = (1.0 + stretch_upper_const(K, beta)) * scale;
    b.target = stretch_sum_tail(K, beta, N);
    b.in_regime = N >= 16 && K * std::pow((double)N, beta) >= 1.0;
    return b;
}

Bracket tail_ratio_bracket(double K, double beta, long N, int p) {
    check_stretch_domain(K, beta, true);
    if (N < 1 || p < 1) throw DomainError("tail_ratio_bracket: need N >= 1, p >= 1");
    double sp = stretch_sum_tail((double)p * K, beta, N);
    double s2p = stretch_sum_tail(2.0 * (double)p * K, beta, N);
    Bracket b;
    b.target = std::pow((double)N, 1.0 - beta) * s2p / (sp * sp);
    b.lower = stretch_lower_const(2.0 * (double)p * K, beta) /
              std::pow(1.0 + stretch_upper_const((double)p * K, beta), 2.0);
    b.upper = (1.0 + stretch_upper_const(2.0 * (double)p * K, beta)) /
              std::pow(stretch_lower_const((double)p * K, beta), 2.0);
    b.in_regime = N >= 16 && (double)p * K * std::pow((double)N, beta) >= 1.0;
    return b;
}

RatioFloor rapid_decay_ratio_floor(double K, double beta, long N) {
    if (!(K > 0.0) || !(beta >= 1.0)) {
        throw DomainError("rapid_decay_ratio_floor: need K > 0, beta >= 1");
    }
    if (N < 1 || K * std::pow((double)N, beta) < 1.0) {
        throw DomainError("rapid_decay_ratio_floor: need K N^beta >= 1");
    }
    RatioFloor out;
    out.floor = 1.0 / std::pow(1.0 + std::pow(K, -1.0 / beta) / beta, 2.0);
    if (beta == 1.0) {
        double r = std::exp(-K);
        out.ratio = (1.0 - r) / (1.0 + r);
        return out;
    }
    // beta > 1: terms die faster than geometrically; truncation error is
    // below accumulation noise once terms fall 1e-25 under the sum.
    long double s1 = 0.0L, s2 = 0.0L;
    for (long n = N;; ++n) {
        double nb = std::pow((double)n, beta);
        double t = std::exp(-K * nb);
        s1 += t;
        s2 += (long double)t * t;
        if (t < 1e-25 * (double)s1) break;
        if (n - N > 200000000L) {
            throw PrecisionError("rapid-decay tail sum needs too many terms");
        }
    }
    out.ratio = (double)(s2 / (s1 * s1));
    return out;
}

} // namespace takagi
