#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tailcusum/rng.hpp"

namespace tailcusum {

using Series = std::vector<double>;

/// Burr law with survival function (beta / (beta + x^{-gamma}))^lambda, x >= 0.
/// Tail index 1/alpha with alpha = -gamma * lambda; gamma is the second-order
/// regular-variation exponent.
struct BurrParams {
    double lambda = 1.0;
    double beta = 1.0;
    double gamma = -1.0;

    double alpha() const noexcept { return -gamma * lambda; }
    void validate() const;
};

/// Student t with nu degrees of freedom (alpha = nu).
struct TDistParams {
    double nu = 1.0;

    double alpha() const noexcept { return nu; }
    void validate() const;
};

/// Exact Pareto law: survival x^{-alpha} on [1, inf).
struct ParetoParams {
    double alpha = 1.0;

    void validate() const;
};

using Innovation = std::variant<BurrParams, TDistParams, ParetoParams>;

double tail_alpha(const Innovation& law);
std::string describe(const Innovation& law);

enum class ModelKind { Iid, Ma1, Ar1 };

struct ModelSpec {
    ModelKind kind = ModelKind::Iid;
    double theta = 0.0; // MA(1) coefficient
    double phi = 0.0;   // AR(1) coefficient
    Innovation innovation = TDistParams{};

    void validate() const;
};

/// Innovation law switches from `pre` to `post` strictly after index floor(n*tau)
/// (1-based), i.e. innovations 1..floor(n*tau) follow `pre`.
struct ChangeSpec {
    double tau = 0.5;
    Innovation pre = TDistParams{};
    Innovation post = TDistParams{};

    void validate() const;
    std::size_t change_index(std::size_t n) const;
};

/// Number of presample AR(1) steps discarded before the retained path.
inline constexpr std::size_t kArBurnIn = 1000;

double burr_survival(double x, const BurrParams& p);
/// x with burr_survival(x) == u, for u in (0,1).
double burr_quantile(double u, const BurrParams& p);

double pareto_survival(double x, const ParetoParams& p);
double pareto_quantile(double u, const ParetoParams& p);

Series burr_sample(std::size_t n, const BurrParams& p, std::uint64_t seed);
Series pareto_sample(std::size_t n, const ParetoParams& p, std::uint64_t seed);
Series t_sample(std::size_t n, const TDistParams& p, std::uint64_t seed);

/// Draws i.i.d. variates from one law using a caller-owned generator.
class InnovationSampler {
public:
    explicit InnovationSampler(Innovation law);

    double operator()(Xoshiro256& rng);
    const Innovation& law() const noexcept { return law_; }

private:
    Innovation law_;
    // Normal over sqrt(chi2_nu / nu); engaged for TDistParams only.
    std::optional<std::student_t_distribution<double>> student_;
};

/// X_i = e_i + theta e_{i-1}, with e_0 = xi0.
Series ma1_filter(double theta, double xi0, std::span<const double> innovations);

/// X_i = phi X_{i-1} + e_i, with X_0 = x0.
Series ar1_filter(double phi, double x0, std::span<const double> innovations);

/// One path of length n from `model`. With a change, the innovation law of
/// `model` is ignored in favour of change->pre / change->post.
///
/// MA(1) draws xi_0 from the pre-change law. AR(1) starts from 0 and
/// discards kArBurnIn presample steps driven by the pre-change law.
Series simulate(const ModelSpec& model, std::size_t n, std::uint64_t seed,
                const std::optional<ChangeSpec>& change = std::nullopt);

} // namespace tailcusum
