#include "takagi/stats.hpp"

#include <algorithm>
#include <cmath>

#include "takagi/errors.hpp"

namespace takagi {

namespace {

double pairwise_range(const std::vector<double>& xs, std::size_t lo, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += xs[lo + i];
        return s;
    }
    // Split at the largest power of two below n so the tree shape depends
    // only on absolute positions.
    std::size_t half = 1;
    while (half * 2 < n) half *= 2;
    return pairwise_range(xs, lo, half) + pairwise_range(xs, lo + half, n - half);
}

} // namespace

double pairwise_sum(const std::vector<double>& xs) {
    return pairwise_range(xs, 0, xs.size());
}

Summary summarize(const std::vector<double>& xs) {
    Summary s;
    s.n = (long)xs.size();
    if (s.n == 0) return s;
    s.mean = pairwise_sum(xs) / (double)s.n;
    if (s.n < 2) return s;
    std::vector<double> dev(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double d = xs[i] - s.mean;
        dev[i] = d * d;
    }
    s.variance = pairwise_sum(dev) / (double)(s.n - 1);
    s.se_mean = std::sqrt(s.variance / (double)s.n);
    return s;
}

Summary summarize_squares(const std::vector<double>& xs) {
    std::vector<double> sq(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) sq[i] = xs[i] * xs[i];
    return summarize(sq);
}

double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf) {
    if (sample.empty()) throw DomainError("ks_statistic: empty sample");
    std::sort(sample.begin(), sample.end());
    double n = (double)sample.size();
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        double f = cdf(sample[i]);
        d = std::max(d, f - (double)i / n);
        d = std::max(d, (double)(i + 1) / n - f);
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double na = (double)a.size(), nb = (double)b.size();
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() || j < b.size()) {
        double v = (i < a.size() && (j >= b.size() || a[i] <= b[j])) ? a[i] : b[j];
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::fabs((double)i / na - (double)j / nb));
    }
    return d;
}

double ecdf_at(const std::vector<double>& sorted, double u) {
    if (sorted.empty()) throw DomainError("ecdf_at: empty sample");
    auto it = std::upper_bound(sorted.begin(), sorted.end(), u);
    return (double)(it - sorted.begin()) / (double)sorted.size();
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

} // namespace takagi
