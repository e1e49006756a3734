#include "tailcusum/null_dist.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <shared_mutex>
#include <sstream>

#include "parallel.hpp"
#include "tailcusum/error.hpp"
#include "tailcusum/rng.hpp"

namespace tailcusum {

namespace {

constexpr double kBracketLow = 0.05;
constexpr double kBracketHigh = 5.0;
constexpr double kSeriesCutoff = 1e-16;

void check_open_unit(double p, const char* what)
{
    if (!(p > 0.0 && p < 1.0)) {
        std::ostringstream msg;
        msg << what << " " << p << " outside (0,1)";
        throw DomainError(msg.str());
    }
}

} // namespace

double kolmogorov_cdf(double x)
{
    if (!(x > 0.0)) return 0.0;
    if (x < 1.0) {
        // The alternating series cancels badly near zero; use the theta form.
        const double c = std::numbers::pi * std::numbers::pi / (8.0 * x * x);
        double sum = 0.0;
        for (int j = 1;; ++j) {
            const double term = std::exp(-(2.0 * j - 1.0) * (2.0 * j - 1.0) * c);
            sum += term;
            if (term < kSeriesCutoff * sum || term == 0.0) break;
        }
        return std::clamp(std::sqrt(2.0 * std::numbers::pi) / x * sum, 0.0, 1.0);
    }
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1;; ++j) {
        const double term = std::exp(-2.0 * j * j * x * x);
        sum += sign * term;
        sign = -sign;
        if (term < kSeriesCutoff) break;
    }
    return std::clamp(1.0 - 2.0 * sum, 0.0, 1.0);
}

double analytic_quantile(double p)
{
    check_open_unit(p, "quantile level");
    double lo = kBracketLow;
    double hi = kBracketHigh;
    // 60 halvings of a width-5 bracket leave ~4e-18, below double spacing.
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (kolmogorov_cdf(mid) < p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double critical_value(double level)
{
    check_open_unit(level, "significance level");
    static std::shared_mutex mutex;
    static std::map<double, double> cache;
    {
        std::shared_lock lock(mutex);
        if (auto it = cache.find(level); it != cache.end()) return it->second;
    }
    const double value = analytic_quantile(1.0 - level);
    std::unique_lock lock(mutex);
    return cache.emplace(level, value).first->second;
}

double bridge_supremum(std::span<const double> increments)
{
    const std::size_t n = increments.size();
    if (n < 2) throw ParameterError("bridge path needs at least 2 increments");
    double total = 0.0;
    for (double e : increments) total += e;

    const double dn = static_cast<double>(n);
    double running = 0.0;
    double best = 0.0;
    for (std::size_t l = 1; l <= n; ++l) {
        running += increments[l - 1];
        best = std::max(best, std::abs(running - (static_cast<double>(l) / dn) * total));
    }
    return best / std::sqrt(dn);
}

double simulate_L(std::size_t path_length, std::uint64_t seed)
{
    if (path_length < 2) throw ParameterError("path length must be at least 2");
    Xoshiro256 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<double> increments(path_length);
    for (auto& e : increments) e = normal(rng);
    return bridge_supremum(increments);
}

double empirical_quantile(std::span<const double> sorted, double p)
{
    if (sorted.empty()) throw ParameterError("quantile of an empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile probability outside [0,1]");
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::string to_string(CriticalValueTable::Source source)
{
    return source == CriticalValueTable::Source::Analytic ? "analytic" : "monte-carlo";
}

std::string CriticalValueTable::to_delimited() const
{
    std::ostringstream out;
    out.precision(6);
    out << std::fixed;
    out << "level,critical_value,source\n";
    for (std::size_t i = 0; i < levels.size(); ++i)
        out << levels[i] << ',' << values[i] << ',' << to_string(source) << '\n';
    return out.str();
}

namespace {

// Ascending, duplicates removed, so table values increase with level.
std::vector<double> normalized_levels(std::span<const double> levels)
{
    if (levels.empty()) throw ParameterError("no quantile levels given");
    for (double p : levels) check_open_unit(p, "quantile level");
    std::vector<double> out(levels.begin(), levels.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

CriticalValueTable analytic_critical_values(std::span<const double> levels)
{
    CriticalValueTable table;
    table.source = CriticalValueTable::Source::Analytic;
    table.levels = normalized_levels(levels);
    for (double p : table.levels) table.values.push_back(analytic_quantile(p));
    return table;
}

CriticalValueTable mc_critical_values(std::span<const double> levels, std::size_t path_length,
                                      std::size_t replications, std::uint64_t seed, unsigned workers)
{
    auto sorted_levels = normalized_levels(levels);
    if (replications < 100) throw ParameterError("Monte Carlo critical values need >= 100 replications");
    if (path_length < 2) throw ParameterError("path length must be at least 2");

    std::vector<double> draws(replications);
    detail::parallel_for(replications, workers, [&](std::size_t r) {
        draws[r] = simulate_L(path_length, split_seed(seed, r));
    });
    std::sort(draws.begin(), draws.end());

    CriticalValueTable table;
    table.source = CriticalValueTable::Source::MonteCarlo;
    table.path_length = path_length;
    table.replications = replications;
    table.seed = seed;
    table.levels = std::move(sorted_levels);
    for (double p : table.levels) table.values.push_back(empirical_quantile(draws, p));
    return table;
}

} // namespace tailcusum
