#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tailcusum/cusum_test.hpp"
#include "tailcusum/variates.hpp"

namespace tailcusum {

enum class ArMethod { Ols, YuleWalker };

std::string to_string(ArMethod method);
ArMethod parse_ar_method(const std::string& name);

/// AR(p) fit without intercept. residuals[i] corresponds to observation
/// i + p (0-based), i.e. xi_hat_t = X_t - sum_j coefficients[j-1] X_{t-j}.
struct ArFit {
    std::size_t order = 0;
    std::vector<double> coefficients;
    Series residuals;
    ArMethod method = ArMethod::Ols;
};

/// Least squares or Yule-Walker (Levinson-Durbin, no mean-centering).
/// Requires n >= p + 2.
ArFit fit_ar(std::span<const double> series, std::size_t order, ArMethod method = ArMethod::Ols);

/// X_t - sum_j phi_j X_{t-j} for t = p..n-1 (0-based).
Series ar_residuals(std::span<const double> series, std::span<const double> coefficients);

struct ResidualTestResult {
    ArFit fit;
    TestOutcome outcome; // indices relative to the residual series (length n - p)
};

/// CUSUM test on |residuals| of an AR(p) fit. The residuals are treated as
/// independent, so cfg.adjust is forced to Iid and cfg.view to Absolute;
/// cfg.k is validated against the residual count n - p.
ResidualTestResult residual_test(std::span<const double> series, std::size_t order,
                                 TailTestConfig cfg, ArMethod method = ArMethod::Ols);

TestOutcome residual_cusum(std::span<const double> series, std::size_t order, std::size_t k,
                           PhiKind phi, ArMethod method = ArMethod::Ols, double level = 0.05);

} // namespace tailcusum
