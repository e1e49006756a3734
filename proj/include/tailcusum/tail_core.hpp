#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace tailcusum {

/// How signed observations are mapped onto the non-negative scale the tail
/// statistics work on. `Absolute` uses |X_i|; `Raw` requires X_i >= 0.
enum class ValueView { Absolute, Raw };

/// Non-negative view of a series together with its log values and the
/// descending order of its observations.
///
/// Ties in the ordering are broken by position (earlier observation first),
/// so `order_index()` is a deterministic permutation. Zeros map to a log of
/// -infinity; any log-excess they contribute is therefore 0.
class TailView {
public:
    explicit TailView(std::span<const double> series, ValueView view = ValueView::Absolute);

    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    std::span<const double> logs() const noexcept { return logs_; }
    std::span<const std::size_t> order_index() const noexcept { return order_; }

    /// j-th largest value, 1 <= j <= n.
    double order_statistic(std::size_t j) const;
    double log_order_statistic(std::size_t j) const;

    /// Throws ParameterError unless 1 <= k <= n-1.
    void check_k(std::size_t k) const;

    /// log X_(j), throwing DegenerateThresholdError when X_(j) == 0.
    double log_threshold(std::size_t j) const;

private:
    std::vector<double> values_;
    std::vector<double> logs_;
    std::vector<std::size_t> order_;
};

struct HillEstimate {
    double hill_mean = 0.0;
    double alpha_hat = std::numeric_limits<double>::infinity();

    /// False when every log-excess is zero and alpha_hat is +infinity.
    bool finite() const noexcept { return hill_mean > 0.0; }
};

struct ScalingEstimates {
    double omega_hat = 0.0;
    double chi_hat = 0.0;
};

double order_statistic(std::span<const double> series, std::size_t j,
                       ValueView view = ValueView::Absolute);

/// Hill's estimator over the k upper order statistics:
/// hill_mean = (1/k) sum_i (log X_i - log X_(k+1))_+.
HillEstimate hill(const TailView& view, std::size_t k);
HillEstimate hill(std::span<const double> series, std::size_t k,
                  ValueView view = ValueView::Absolute);

/// I(X_i > X_(k)) for every i, with strict inequality.
std::vector<int> excess_indicators(const TailView& view, std::size_t k);
std::vector<int> excess_indicators(std::span<const double> series, std::size_t k,
                                   ValueView view = ValueView::Absolute);

/// (log X_i - log X_(k))_+ for every i.
std::vector<double> log_excesses(const TailView& view, std::size_t k);
std::vector<double> log_excesses(std::span<const double> series, std::size_t k,
                                 ValueView view = ValueView::Absolute);

/// omega_hat = (2/k) sum_{h=1}^{max_lag} sum_i I(X_i > X_(k), X_{i+h} > X_(k)).
///
/// max_lag = 1 is the lag-one estimator suited to one-dependent data; larger
/// lags extend the same sum to m-dependence and are not part of the
/// original estimator.
double estimate_omega(const TailView& view, std::size_t k, std::size_t max_lag = 1);
double estimate_omega(std::span<const double> series, std::size_t k, std::size_t max_lag = 1,
                      ValueView view = ValueView::Absolute);

/// chi_hat = (2 alpha_hat / k) sum_{h=1}^{max_lag} sum_i E_i E_{i+h},
/// E_i = (log X_i - log X_(k))_+.
double estimate_chi(const TailView& view, std::size_t k, double alpha_hat,
                    std::size_t max_lag = 1);
double estimate_chi(std::span<const double> series, std::size_t k, double alpha_hat,
                    std::size_t max_lag = 1, ValueView view = ValueView::Absolute);

} // namespace tailcusum
