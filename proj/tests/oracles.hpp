#pragma once

// Independent reference implementations used only by the tests. Each one is
// written straight from the defining formula, with no shared code path with
// the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

// j-th largest of |x| by a full copy-and-sort.
inline double jth_largest(const std::vector<double>& x, std::size_t j)
{
    std::vector<double> v;
    for (double e : x) v.push_back(std::abs(e));
    std::sort(v.begin(), v.end(), std::greater<>());
    return v.at(j - 1);
}

// (1/k) sum_{i=1}^n (log X_i - log X_(k+1))_+ with the sum over every index.
inline double hill_mean(const std::vector<double>& x, std::size_t k)
{
    const double t = std::log(jth_largest(x, k + 1));
    double s = 0.0;
    for (double e : x) {
        const double a = std::abs(e);
        if (a > 0.0) s += std::max(std::log(a) - t, 0.0);
    }
    return s / static_cast<double>(k);
}

struct Cusum {
    double statistic;
    std::size_t l_hat;
};

// max over l of |sum_{i<=l} phi_i - (l/n) sum_{i<=n} phi_i| / sqrt(k), with
// each partial sum recomputed from scratch (quadratic, deliberately naive).
inline Cusum cusum(const std::vector<double>& x, std::size_t k, bool indicator)
{
    const double threshold = jth_largest(x, k);
    const std::size_t n = x.size();
    auto phi = [&](double v) {
        const double a = std::abs(v);
        if (indicator) return a > threshold ? 1.0 : 0.0;
        return a > threshold ? std::log(a / threshold) : 0.0;
    };
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += phi(x[i]);

    Cusum best{-1.0, 0};
    for (std::size_t l = 1; l <= n; ++l) {
        double partial = 0.0;
        for (std::size_t i = 0; i < l; ++i) partial += phi(x[i]);
        const double d = std::abs(partial - static_cast<double>(l) / static_cast<double>(n) * total);
        if (d > best.statistic + 1e-12) best = {d, l};
    }
    best.statistic /= std::sqrt(static_cast<double>(k));
    return best;
}

// Kolmogorov CDF through the theta-function form
// sqrt(2 pi)/x sum_{j>=1} exp(-(2j-1)^2 pi^2 / (8 x^2)), which converges fast
// for small and moderate x and shares nothing with the alternating series.
inline double kolmogorov_cdf_theta(double x)
{
    if (x <= 0.0) return 0.0;
    const double pi = std::acos(-1.0);
    double s = 0.0;
    for (int j = 1; j < 200; ++j) {
        const double m = 2.0 * j - 1.0;
        const double term = std::exp(-m * m * pi * pi / (8.0 * x * x));
        s += term;
        if (term < 1e-300) break;
    }
    return std::sqrt(2.0 * pi) / x * s;
}

inline double kolmogorov_quantile_theta(double p)
{
    double lo = 0.1, hi = 4.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (kolmogorov_cdf_theta(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Density of sup|B|: 8x sum_{j>=1} (-1)^{j+1} j^2 exp(-2 j^2 x^2).
inline double kolmogorov_pdf(double x)
{
    double s = 0.0, sign = 1.0;
    for (int j = 1; j < 200; ++j) {
        s += sign * j * j * std::exp(-2.0 * j * j * x * x);
        sign = -sign;
    }
    return 8.0 * x * s;
}

// Frozen values of the Kolmogorov quantiles, computed with 30-digit
// arithmetic (mpmath findroot on the theta form).
inline constexpr double kQuantile90 = 1.2238478702170824;
inline constexpr double kQuantile95 = 1.3580986393225504;
inline constexpr double kQuantile99 = 1.6276236115189502;
// E sup|B| = sqrt(pi/2) ln 2.
inline constexpr double kMeanSup = 0.86873116063615914;

} // namespace oracle
