#include "tailcusum/variates.hpp"

#include <cmath>
#include <sstream>

#include "tailcusum/error.hpp"

namespace tailcusum {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_probability(double u, const char* fn)
{
    if (!(u > 0.0 && u < 1.0)) {
        std::ostringstream msg;
        msg << fn << ": probability " << u << " outside (0,1)";
        throw DomainError(msg.str());
    }
}

void check_length(std::size_t n, const char* fn)
{
    if (n == 0) throw ParameterError(std::string(fn) + ": sample size must be positive");
}

void validate_law(const Innovation& law)
{
    std::visit([](const auto& p) { p.validate(); }, law);
}

} // namespace

void BurrParams::validate() const
{
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw ParameterError("Burr: lambda must be positive");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw ParameterError("Burr: beta must be positive");
    if (!(gamma < 0.0) || !std::isfinite(gamma))
        throw ParameterError("Burr: gamma must be negative");
}

void TDistParams::validate() const
{
    if (!(nu > 0.0) || !std::isfinite(nu))
        throw ParameterError("t: degrees of freedom must be positive");
}

void ParetoParams::validate() const
{
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw ParameterError("Pareto: alpha must be positive");
}

double tail_alpha(const Innovation& law)
{
    return std::visit(Overloaded{
                          [](const BurrParams& p) { return p.alpha(); },
                          [](const TDistParams& p) { return p.alpha(); },
                          [](const ParetoParams& p) { return p.alpha; },
                      },
                      law);
}

std::string describe(const Innovation& law)
{
    std::ostringstream out;
    std::visit(Overloaded{
                   [&](const BurrParams& p) {
                       out << "burr(lambda=" << p.lambda << ";beta=" << p.beta
                           << ";gamma=" << p.gamma << ")";
                   },
                   [&](const TDistParams& p) { out << "t(" << p.nu << ")"; },
                   [&](const ParetoParams& p) { out << "pareto(" << p.alpha << ")"; },
               },
               law);
    return out.str();
}

void ModelSpec::validate() const
{
    validate_law(innovation);
    if (!std::isfinite(theta) || !std::isfinite(phi))
        throw ParameterError("model coefficients must be finite");
    if (kind == ModelKind::Ar1 && !(std::abs(phi) < 1.0))
        throw ParameterError("AR(1) requires |phi| < 1");
}

void ChangeSpec::validate() const
{
    if (!(tau > 0.0 && tau < 1.0)) throw ParameterError("change point tau must lie in (0,1)");
    validate_law(pre);
    validate_law(post);
}

std::size_t ChangeSpec::change_index(std::size_t n) const
{
    return static_cast<std::size_t>(std::floor(static_cast<double>(n) * tau));
}

double burr_survival(double x, const BurrParams& p)
{
    p.validate();
    if (x <= 0.0) return 1.0;
    return std::pow(p.beta / (p.beta + std::pow(x, -p.gamma)), p.lambda);
}

double burr_quantile(double u, const BurrParams& p)
{
    check_probability(u, "burr_quantile");
    p.validate();
    // expm1 keeps precision for u close to 1, where u^{-1/lambda} - 1 is tiny.
    const double base = p.beta * std::expm1(-std::log(u) / p.lambda);
    return std::pow(base, -1.0 / p.gamma);
}

double pareto_survival(double x, const ParetoParams& p)
{
    p.validate();
    if (x <= 1.0) return 1.0;
    return std::pow(x, -p.alpha);
}

double pareto_quantile(double u, const ParetoParams& p)
{
    check_probability(u, "pareto_quantile");
    p.validate();
    return std::pow(u, -1.0 / p.alpha);
}

InnovationSampler::InnovationSampler(Innovation law) : law_(std::move(law))
{
    validate_law(law_);
    if (const auto* t = std::get_if<TDistParams>(&law_)) student_.emplace(t->nu);
}

double InnovationSampler::operator()(Xoshiro256& rng)
{
    if (student_) return (*student_)(rng);
    if (const auto* b = std::get_if<BurrParams>(&law_)) {
        const double u = rng.uniform_open();
        return std::pow(b->beta * std::expm1(-std::log(u) / b->lambda), -1.0 / b->gamma);
    }
    const auto& p = std::get<ParetoParams>(law_);
    return std::pow(rng.uniform_open(), -1.0 / p.alpha);
}

namespace {

Series draw_iid(std::size_t n, Innovation law, std::uint64_t seed)
{
    InnovationSampler sampler(std::move(law));
    Xoshiro256 rng(seed);
    Series out(n);
    for (auto& x : out) x = sampler(rng);
    return out;
}

Series draw_innovations(std::size_t n, std::size_t switch_after, InnovationSampler& pre,
                        std::optional<InnovationSampler>& post, Xoshiro256& rng)
{
    Series xi(n);
    for (std::size_t i = 1; i <= n; ++i) xi[i - 1] = (post && i > switch_after) ? (*post)(rng) : pre(rng);
    return xi;
}

} // namespace

Series burr_sample(std::size_t n, const BurrParams& p, std::uint64_t seed)
{
    check_length(n, "burr_sample");
    return draw_iid(n, p, seed);
}

Series pareto_sample(std::size_t n, const ParetoParams& p, std::uint64_t seed)
{
    check_length(n, "pareto_sample");
    return draw_iid(n, p, seed);
}

Series t_sample(std::size_t n, const TDistParams& p, std::uint64_t seed)
{
    check_length(n, "t_sample");
    return draw_iid(n, p, seed);
}

Series simulate(const ModelSpec& model, std::size_t n, std::uint64_t seed,
                const std::optional<ChangeSpec>& change)
{
    check_length(n, "simulate");
    model.validate();
    if (change) change->validate();

    InnovationSampler pre(change ? change->pre : model.innovation);
    std::optional<InnovationSampler> post;
    if (change) post.emplace(change->post);
    const std::size_t switch_after = change ? change->change_index(n) : n;

    Xoshiro256 rng(seed);
    switch (model.kind) {
    case ModelKind::Iid:
        break;
    case ModelKind::Ma1: {
        const double xi0 = pre(rng);
        return ma1_filter(model.theta, xi0, draw_innovations(n, switch_after, pre, post, rng));
    }
    case ModelKind::Ar1: {
        double start = 0.0;
        for (std::size_t b = 0; b < kArBurnIn; ++b) start = model.phi * start + pre(rng);
        return ar1_filter(model.phi, start, draw_innovations(n, switch_after, pre, post, rng));
    }
    }
    return draw_innovations(n, switch_after, pre, post, rng);
}

Series ma1_filter(double theta, double xi0, std::span<const double> innovations)
{
    Series x(innovations.size());
    double previous = xi0;
    for (std::size_t i = 0; i < innovations.size(); ++i) {
        x[i] = innovations[i] + theta * previous;
        previous = innovations[i];
    }
    return x;
}

Series ar1_filter(double phi, double x0, std::span<const double> innovations)
{
    Series x(innovations.size());
    double state = x0;
    for (std::size_t i = 0; i < innovations.size(); ++i) {
        state = phi * state + innovations[i];
        x[i] = state;
    }
    return x;
}

} // namespace tailcusum
