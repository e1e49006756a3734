#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tailcusum {

/// P(sup_{0<=t<=1} |B(t)| <= x) for a Brownian bridge B (Kolmogorov law),
/// via 1 - 2 sum_{j>=1} (-1)^{j+1} exp(-2 j^2 x^2).
double kolmogorov_cdf(double x);

/// x with kolmogorov_cdf(x) == p, by bisection on [0.05, 5].
double analytic_quantile(double p);

/// Critical value at nominal significance `level`: the (1 - level) quantile
/// of sup|B|. Memoised; safe to call from several threads.
double critical_value(double level);

/// L = (1/sqrt(N)) max_l |sum_{i<=l} e_i - (l/N) sum_{i<=N} e_i|.
double bridge_supremum(std::span<const double> increments);

/// L for one path of N standard normal increments drawn from `seed`.
double simulate_L(std::size_t path_length, std::uint64_t seed);

/// Linear-interpolation (type 7) quantile of an ascending sample.
double empirical_quantile(std::span<const double> sorted, double p);

struct CriticalValueTable {
    enum class Source { Analytic, MonteCarlo };

    std::vector<double> levels; // quantile probabilities, ascending, e.g. 0.95
    std::vector<double> values;
    Source source = Source::Analytic;
    std::size_t path_length = 0; // Monte Carlo only
    std::size_t replications = 0;
    std::uint64_t seed = 0;

    /// "level,critical_value,source" header plus one row per level.
    std::string to_delimited() const;
};

std::string to_string(CriticalValueTable::Source source);

CriticalValueTable analytic_critical_values(std::span<const double> levels);

/// Empirical quantiles of `replications` simulated L values. Replication r
/// uses split_seed(seed, r), so the table does not depend on `workers`
/// (0 = hardware concurrency).
CriticalValueTable mc_critical_values(std::span<const double> levels, std::size_t path_length,
                                      std::size_t replications, std::uint64_t seed,
                                      unsigned workers = 0);

} // namespace tailcusum
