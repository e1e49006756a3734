#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "oracles.hpp"
#include "tailcusum/error.hpp"
#include "tailcusum/tail_core.hpp"
#include "tailcusum/variates.hpp"

using namespace tailcusum;

namespace {

const Series kFour{5, 1, 2, 3};
const Series kFive{6, 5, 1, 2, 3};

// Every series of length n over `alphabet`, in lexicographic order.
template <class Fn>
void for_each_word(const std::vector<double>& alphabet, std::size_t n, Fn fn)
{
    std::vector<std::size_t> digits(n, 0);
    Series x(n);
    for (;;) {
        for (std::size_t i = 0; i < n; ++i) x[i] = alphabet[digits[i]];
        fn(x);
        std::size_t pos = 0;
        while (pos < n && ++digits[pos] == alphabet.size()) digits[pos++] = 0;
        if (pos == n) return;
    }
}

} // namespace

TEST_CASE("order statistics")
{
    CHECK(order_statistic(kFour, 2) == 3.0);
    CHECK(order_statistic(Series{7, 7, 7}, 2) == 7.0);
    CHECK(order_statistic(Series{-4, 1, 2, 3}, 1) == 4.0);
    CHECK_THROWS_AS(order_statistic(kFour, 0), IndexError);
    CHECK_THROWS_AS(order_statistic(kFour, 5), IndexError);
    CHECK_THROWS_AS(order_statistic(Series{-4, 1, 2, 3}, 1, ValueView::Raw), ParameterError);
}

TEST_CASE("order index breaks ties by position")
{
    const TailView view(Series{2, 5, 2, 5, 1});
    const std::vector<std::size_t> order(view.order_index().begin(), view.order_index().end());
    CHECK(order == std::vector<std::size_t>{1, 3, 0, 2, 4});
}

TEST_CASE("hill estimate by hand")
{
    const double e = std::exp(1.0);
    const Series x{std::exp(3.0), e, std::exp(2.0), 1.0};
    const auto h = hill(x, 2);
    CHECK(h.hill_mean == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(h.alpha_hat == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(h.finite());
}

TEST_CASE("hill on a constant series is flagged infinite")
{
    const auto h = hill(Series(10, 4.2), 3);
    CHECK(h.hill_mean == 0.0);
    CHECK(std::isinf(h.alpha_hat));
    CHECK_FALSE(h.finite());
}

TEST_CASE("hill errors")
{
    CHECK_THROWS_AS(hill(Series{5, 0, 0, 0}, 1), DegenerateThresholdError);
    CHECK_THROWS_AS(hill(kFour, 0), ParameterError);
    CHECK_THROWS_AS(hill(kFour, 4), ParameterError);
}

TEST_CASE("hill matches the direct sum on every small word")
{
    const std::vector<double> alphabet{0.5, 1.0, 2.0, 7.0};
    std::size_t checked = 0;
    for (std::size_t n = 2; n <= 6; ++n)
        for_each_word(alphabet, n, [&](const Series& x) {
            for (std::size_t k = 1; k + 1 <= n; ++k) {
                CHECK(hill(x, k).hill_mean == doctest::Approx(oracle::hill_mean(x, k)).epsilon(1e-12));
                ++checked;
            }
        });
    CHECK(checked > 10000);

    Xoshiro256 rng(3);
    for (int rep = 0; rep < 500; ++rep) {
        Series x(8);
        for (auto& v : x) v = rng.uniform_open() * 10.0;
        for (std::size_t k = 1; k <= 7; ++k)
            CHECK(hill(x, k).hill_mean == doctest::Approx(oracle::hill_mean(x, k)).epsilon(1e-12));
    }
}

TEST_CASE("hill is consistent on exact pareto data")
{
    // 200 replications, n = 1e4, k = 100, alpha = 2: sd ~ alpha/sqrt(k) = 0.2.
    double sum = 0.0;
    int within = 0;
    for (std::uint64_t r = 0; r < 200; ++r) {
        const auto h = hill(pareto_sample(10000, {2}, split_seed(2024, r)), 100);
        sum += h.alpha_hat;
        if (std::abs(h.alpha_hat - 2.0) <= 0.5) ++within;
    }
    CHECK(std::abs(sum / 200.0 - 2.0) <= 0.05);
    CHECK(within >= 190);
}

TEST_CASE("excess indicators")
{
    CHECK(excess_indicators(kFour, 2) == std::vector<int>{1, 0, 0, 0});
    CHECK(excess_indicators(Series(6, 3.0), 2) == std::vector<int>(6, 0));
    CHECK_THROWS_AS(excess_indicators(kFour, 4), ParameterError);

    Xoshiro256 rng(17);
    for (int rep = 0; rep < 100; ++rep) {
        Series x(50);
        for (auto& v : x) v = rng.uniform_open();
        for (std::size_t k : {1u, 5u, 25u, 49u}) {
            const auto ind = excess_indicators(x, k);
            CHECK(std::accumulate(ind.begin(), ind.end(), 0) == static_cast<int>(k) - 1);
        }
    }
}

TEST_CASE("excess indicators depend on ranks only")
{
    Xoshiro256 rng(19);
    for (int rep = 0; rep < 50; ++rep) {
        Series x(80), y(80);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = rng.uniform_open() * 5.0;
            y[i] = std::exp(x[i]) + x[i] * x[i] * x[i];
        }
        for (std::size_t k : {3u, 10u, 40u}) CHECK(excess_indicators(x, k) == excess_indicators(y, k));
    }
}

TEST_CASE("log excesses")
{
    const auto e = log_excesses(kFour, 2);
    CHECK(e[0] == doctest::Approx(std::log(5.0 / 3.0)).epsilon(1e-14));
    CHECK(e[0] == doctest::Approx(0.51083).epsilon(1e-5));
    CHECK(e[1] == 0.0);
    CHECK(e[2] == 0.0);
    CHECK(e[3] == 0.0);
    CHECK(log_excesses(Series(5, 2.0), 2) == std::vector<double>(5, 0.0));
    CHECK_THROWS_AS(log_excesses(Series{3, 0, 0, 0}, 2), DegenerateThresholdError);

    // Zeros below a positive threshold contribute nothing.
    const auto z = log_excesses(Series{4, 0, 2, 1}, 2);
    CHECK(z[1] == 0.0);
}

TEST_CASE("omega estimate")
{
    CHECK(estimate_omega(kFive, 3) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(estimate_omega(Series{9, 1, 8, 1, 7, 1}, 4) == 0.0);
    CHECK_THROWS_AS(estimate_omega(kFive, 5), ParameterError);

    const auto x = pareto_sample(100000, {2}, 99);
    CHECK(std::abs(estimate_omega(x, 500)) < 0.05);
}

TEST_CASE("omega with longer lags counts every lag")
{
    // Exceedances at 0, 1 and 3: one lag-1 pair, one lag-2 pair, one lag-3 pair.
    const Series x{9, 8, 1, 7, 1, 1, 6};
    CHECK(estimate_omega(x, 4, 1) == doctest::Approx(2.0 / 4.0));
    CHECK(estimate_omega(x, 4, 3) == doctest::Approx(2.0 * 3.0 / 4.0));
    CHECK_THROWS_AS(estimate_omega(x, 4, 0), ParameterError);
}

TEST_CASE("chi estimate by hand")
{
    const double alpha = hill(kFive, 3).alpha_hat;
    CHECK(alpha == doctest::Approx(1.239482).epsilon(1e-6));
    const double product = std::log(2.0) * std::log(5.0 / 3.0);
    CHECK(product == doctest::Approx(0.354077).epsilon(1e-6));
    CHECK(estimate_chi(kFive, 3, alpha) == doctest::Approx(2.0 * alpha / 3.0 * product).epsilon(1e-14));
    CHECK(estimate_chi(kFive, 3, alpha) == doctest::Approx(0.29258).epsilon(1e-4));

    CHECK(estimate_chi(Series{9, 1, 8, 1, 7, 1}, 4, 1.5) == 0.0);
    CHECK_THROWS_AS(estimate_chi(kFive, 3, std::numeric_limits<double>::infinity()), DegenerateThresholdError);
    CHECK_THROWS_AS(estimate_chi(kFive, 3, -1.0), ParameterError);
}

TEST_CASE("tail statistics are scale invariant")
{
    Xoshiro256 rng(29);
    for (int rep = 0; rep < 30; ++rep) {
        const auto x = t_sample(400, {2}, split_seed(31, rep));
        const double c = 0.1 + 10.0 * rng.uniform_open();
        Series y(x);
        for (auto& v : y) v *= c;
        for (std::size_t k : {5u, 40u, 200u}) {
            const auto hx = hill(x, k), hy = hill(y, k);
            CHECK(hy.hill_mean == doctest::Approx(hx.hill_mean).epsilon(1e-10));
            CHECK(excess_indicators(x, k) == excess_indicators(y, k));
            const auto ex = log_excesses(x, k), ey = log_excesses(y, k);
            for (std::size_t i = 0; i < ex.size(); ++i) CHECK(std::abs(ex[i] - ey[i]) < 1e-12);
            CHECK(estimate_omega(x, k) == estimate_omega(y, k));
            CHECK(estimate_chi(y, k, 1.7) == doctest::Approx(estimate_chi(x, k, 1.7)).epsilon(1e-10));
        }
    }
}
