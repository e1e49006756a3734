#include "tailcusum/ar_fit.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "tailcusum/error.hpp"

namespace tailcusum {

std::string to_string(ArMethod method)
{
    return method == ArMethod::Ols ? "ols" : "yule-walker";
}

ArMethod parse_ar_method(const std::string& name)
{
    if (name == "ols" || name == "ls") return ArMethod::Ols;
    if (name == "yule-walker" || name == "yw") return ArMethod::YuleWalker;
    throw ParameterError("unknown AR method '" + name + "' (expected ols or yule-walker)");
}

namespace {

constexpr double kVanishingResidual = 1e-12;

std::vector<double> fit_ols(std::span<const double> x, std::size_t p)
{
    const auto rows = static_cast<Eigen::Index>(x.size() - p);
    const auto cols = static_cast<Eigen::Index>(p);
    Eigen::MatrixXd design(rows, cols);
    Eigen::VectorXd target(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const std::size_t t = static_cast<std::size_t>(r) + p;
        target(r) = x[t];
        for (Eigen::Index j = 0; j < cols; ++j) design(r, j) = x[t - 1 - static_cast<std::size_t>(j)];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < cols) throw DegenerateDataError("AR least squares: regressor matrix is rank deficient");
    const Eigen::VectorXd coef = qr.solve(target);
    return {coef.data(), coef.data() + coef.size()};
}

// Levinson-Durbin on the uncentred sample autocovariances
// c(h) = (1/n) sum_t x_t x_{t+h}.
std::vector<double> fit_yule_walker(std::span<const double> x, std::size_t p)
{
    const std::size_t n = x.size();
    std::vector<double> acov(p + 1, 0.0);
    for (std::size_t h = 0; h <= p; ++h) {
        double s = 0.0;
        for (std::size_t t = 0; t + h < n; ++t) s += x[t] * x[t + h];
        acov[h] = s / static_cast<double>(n);
    }
    if (!(acov[0] > 0.0)) throw DegenerateDataError("Yule-Walker: zero sample variance");

    std::vector<double> a(p, 0.0);
    std::vector<double> prev(p, 0.0);
    double error = acov[0];
    for (std::size_t m = 0; m < p; ++m) {
        double num = acov[m + 1];
        for (std::size_t j = 0; j < m; ++j) num -= a[j] * acov[m - j];
        const double reflection = num / error;
        prev = a;
        a[m] = reflection;
        for (std::size_t j = 0; j < m; ++j) a[j] = prev[j] - reflection * prev[m - 1 - j];
        error *= 1.0 - reflection * reflection;
        if (!(error > 0.0))
            throw DegenerateDataError("Yule-Walker: autocovariance matrix is not positive definite");
    }
    return a;
}

} // namespace

Series ar_residuals(std::span<const double> series, std::span<const double> coefficients)
{
    const std::size_t p = coefficients.size();
    if (series.size() < p) throw ParameterError("series shorter than AR order");
    Series out(series.size() - p);
    for (std::size_t t = p; t < series.size(); ++t) {
        double predicted = 0.0;
        for (std::size_t j = 0; j < p; ++j) predicted += coefficients[j] * series[t - 1 - j];
        out[t - p] = series[t] - predicted;
    }
    return out;
}

ArFit fit_ar(std::span<const double> series, std::size_t order, ArMethod method)
{
    if (order < 1) throw ParameterError("AR order must be at least 1");
    if (series.size() < order + 2)
        throw ParameterError("AR(" + std::to_string(order) + ") needs at least " +
                             std::to_string(order + 2) + " observations, got " +
                             std::to_string(series.size()));
    for (double x : series)
        if (!std::isfinite(x)) throw ParameterError("AR fit: series contains a non-finite value");

    ArFit fit;
    fit.order = order;
    fit.method = method;
    fit.coefficients = method == ArMethod::Ols ? fit_ols(series, order) : fit_yule_walker(series, order);
    fit.residuals = ar_residuals(series, fit.coefficients);
    return fit;
}

ResidualTestResult residual_test(std::span<const double> series, std::size_t order,
                                 TailTestConfig cfg, ArMethod method)
{
    ResidualTestResult result{fit_ar(series, order, method), {}};

    // Residuals at rounding-noise level mean the recursion is exact; their
    // tail carries no information.
    double data_scale = 0.0;
    double residual_scale = 0.0;
    for (double x : series) data_scale = std::max(data_scale, std::abs(x));
    for (double e : result.fit.residuals) residual_scale = std::max(residual_scale, std::abs(e));
    if (residual_scale <= kVanishingResidual * data_scale)
        throw DegenerateThresholdError("AR residuals vanish (exact recursion); tail threshold is zero");

    cfg.adjust = AdjustMode::Iid;
    cfg.view = ValueView::Absolute;
    result.outcome = run_test(result.fit.residuals, cfg);
    return result;
}

TestOutcome residual_cusum(std::span<const double> series, std::size_t order, std::size_t k,
                           PhiKind phi, ArMethod method, double level)
{
    TailTestConfig cfg;
    cfg.k = k;
    cfg.phi = phi;
    cfg.level = level;
    return residual_test(series, order, cfg, method).outcome;
}

} // namespace tailcusum
