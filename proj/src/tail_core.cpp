#include "tailcusum/tail_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tailcusum/error.hpp"

namespace tailcusum {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double positive_part(double x) noexcept { return x > 0.0 ? x : 0.0; }

} // namespace

TailView::TailView(std::span<const double> series, ValueView view)
    : values_(series.size()), logs_(series.size()), order_(series.size())
{
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double x = series[i];
        if (std::isnan(x)) throw ParameterError("series contains NaN at index " + std::to_string(i));
        if (view == ValueView::Raw && x < 0.0)
            throw ParameterError("negative value at index " + std::to_string(i) +
                                 " with the raw (non-negative) view");
        values_[i] = std::abs(x);
        logs_[i] = values_[i] > 0.0 ? std::log(values_[i]) : kNegInf;
    }
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::sort(order_.begin(), order_.end(), [this](std::size_t a, std::size_t b) {
        if (values_[a] != values_[b]) return values_[a] > values_[b];
        return a < b;
    });
}

double TailView::order_statistic(std::size_t j) const
{
    if (j < 1 || j > size())
        throw IndexError("order statistic index " + std::to_string(j) + " outside [1, " +
                         std::to_string(size()) + "]");
    return values_[order_[j - 1]];
}

double TailView::log_order_statistic(std::size_t j) const
{
    order_statistic(j); // range check
    return logs_[order_[j - 1]];
}

void TailView::check_k(std::size_t k) const
{
    if (k < 1 || k + 1 > size())
        throw ParameterError("tail sample fraction k=" + std::to_string(k) + " outside [1, n-1] for n=" +
                             std::to_string(size()));
}

double TailView::log_threshold(std::size_t j) const
{
    const double lt = log_order_statistic(j);
    if (lt == kNegInf)
        throw DegenerateThresholdError("threshold X_(" + std::to_string(j) + ") is zero");
    return lt;
}

double order_statistic(std::span<const double> series, std::size_t j, ValueView view)
{
    return TailView(series, view).order_statistic(j);
}

HillEstimate hill(const TailView& view, std::size_t k)
{
    view.check_k(k);
    const double threshold = view.log_threshold(k + 1);
    // Only the k largest observations can exceed X_(k+1).
    double sum = 0.0;
    const auto order = view.order_index();
    const auto logs = view.logs();
    for (std::size_t j = 0; j < k; ++j) sum += positive_part(logs[order[j]] - threshold);

    HillEstimate h;
    h.hill_mean = sum / static_cast<double>(k);
    h.alpha_hat = h.hill_mean > 0.0 ? 1.0 / h.hill_mean : std::numeric_limits<double>::infinity();
    return h;
}

HillEstimate hill(std::span<const double> series, std::size_t k, ValueView view)
{
    return hill(TailView(series, view), k);
}

std::vector<int> excess_indicators(const TailView& view, std::size_t k)
{
    view.check_k(k);
    const double threshold = view.order_statistic(k);
    const auto values = view.values();
    std::vector<int> out(values.size());
    std::transform(values.begin(), values.end(), out.begin(),
                   [threshold](double x) { return x > threshold ? 1 : 0; });
    return out;
}

std::vector<int> excess_indicators(std::span<const double> series, std::size_t k, ValueView view)
{
    return excess_indicators(TailView(series, view), k);
}

std::vector<double> log_excesses(const TailView& view, std::size_t k)
{
    view.check_k(k);
    const double threshold = view.log_threshold(k);
    const auto logs = view.logs();
    std::vector<double> out(logs.size());
    std::transform(logs.begin(), logs.end(), out.begin(),
                   [threshold](double lx) { return positive_part(lx - threshold); });
    return out;
}

std::vector<double> log_excesses(std::span<const double> series, std::size_t k, ValueView view)
{
    return log_excesses(TailView(series, view), k);
}

double estimate_omega(const TailView& view, std::size_t k, std::size_t max_lag)
{
    if (max_lag < 1) throw ParameterError("max_lag must be at least 1");
    const auto exceed = excess_indicators(view, k);
    std::size_t pairs = 0;
    for (std::size_t h = 1; h <= max_lag; ++h)
        for (std::size_t i = 0; i + h < exceed.size(); ++i) pairs += exceed[i] & exceed[i + h];
    return 2.0 * static_cast<double>(pairs) / static_cast<double>(k);
}

double estimate_omega(std::span<const double> series, std::size_t k, std::size_t max_lag,
                      ValueView view)
{
    return estimate_omega(TailView(series, view), k, max_lag);
}

double estimate_chi(const TailView& view, std::size_t k, double alpha_hat, std::size_t max_lag)
{
    if (max_lag < 1) throw ParameterError("max_lag must be at least 1");
    if (!std::isfinite(alpha_hat))
        throw DegenerateThresholdError("chi estimate needs a finite alpha_hat");
    if (!(alpha_hat > 0.0)) throw ParameterError("alpha_hat must be positive");
    const auto excess = log_excesses(view, k);
    double sum = 0.0;
    for (std::size_t h = 1; h <= max_lag; ++h)
        for (std::size_t i = 0; i + h < excess.size(); ++i) sum += excess[i] * excess[i + h];
    return 2.0 * alpha_hat * sum / static_cast<double>(k);
}

double estimate_chi(std::span<const double> series, std::size_t k, double alpha_hat,
                    std::size_t max_lag, ValueView view)
{
    return estimate_chi(TailView(series, view), k, alpha_hat, max_lag);
}

} // namespace tailcusum
