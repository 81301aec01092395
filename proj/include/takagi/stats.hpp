#pragma once

#include <functional>
#include <vector>

namespace takagi {

// Sum over a fixed binary tree determined by index positions alone, so the
// result is independent of how the vector was assembled from shards.
double pairwise_sum(const std::vector<double>& xs);

struct Summary {
    long n = 0;
    double mean = 0.0;
    double variance = 0.0; // unbiased (n-1) estimator
    double se_mean = 0.0;  // sqrt(variance / n)
};

Summary summarize(const std::vector<double>& xs);

// Mean of xs^2 with its standard error (for mean-square comparisons).
Summary summarize_squares(const std::vector<double>& xs);

// Kolmogorov-Smirnov distance of a sample against a reference CDF,
// using both one-sided gaps at each order statistic.  Sorts a copy.
double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf);

// Two-sample KS distance; ties across the two samples are stepped
// together before the gap is recorded, so a sample against itself is 0.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Right-continuous empirical CDF of a sorted sample at u.
double ecdf_at(const std::vector<double>& sorted, double u);

// Standard normal CDF via erfc.
double normal_cdf(double x);

} // namespace takagi
