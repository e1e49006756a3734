#include "tailcusum/experiments.hpp"

#include <cmath>
#include <sstream>

#include "parallel.hpp"
#include "tailcusum/error.hpp"
#include "tailcusum/rng.hpp"

namespace tailcusum {

namespace {

constexpr std::size_t kMaxErrorSamples = 5;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string model_label(const ModelSpec& m)
{
    std::ostringstream out;
    switch (m.kind) {
    case ModelKind::Iid: out << "iid"; break;
    case ModelKind::Ma1: out << "ma1(theta=" << m.theta << ")"; break;
    case ModelKind::Ar1: out << "ar1(phi=" << m.phi << ")"; break;
    }
    return out.str();
}

// Outcome of one (replication, k) evaluation.
struct Trial {
    bool ok = false;
    bool reject = false;
    double tau_hat = 0.0;
    double alpha_hat = 0.0; // NaN when unavailable or infinite
};

struct Replication {
    std::vector<Trial> trials; // one per k
    std::vector<std::string> errors;
};

Replication run_replication(const SimulationSpec& spec, std::size_t r)
{
    Replication rep;
    rep.trials.resize(spec.k_grid.size());
    auto record_error = [&](const std::exception& e) {
        if (rep.errors.size() < kMaxErrorSamples) rep.errors.emplace_back(e.what());
    };

    std::optional<TailView> view;
    try {
        const Series x = simulate(spec.model, spec.n, split_seed(spec.seed, r), spec.change);
        view = std::visit(Overloaded{
                              [&](const DirectTest&) { return TailView(x, ValueView::Absolute); },
                              [&](const ArResidualTest& ar) {
                                  const ArFit fit = fit_ar(x, ar.order, ar.method);
                                  return TailView(fit.residuals, ValueView::Absolute);
                              },
                          },
                          spec.test);
    } catch (const std::exception& e) {
        record_error(e);
        return rep;
    }

    TailTestConfig cfg;
    cfg.phi = spec.phi;
    cfg.adjust = std::holds_alternative<ArResidualTest>(spec.test) ? AdjustMode::Iid : spec.adjust;
    cfg.level = spec.level;
    cfg.critical_value = spec.critical_value;
    for (std::size_t j = 0; j < spec.k_grid.size(); ++j) {
        cfg.k = spec.k_grid[j];
        try {
            const TestOutcome out = run_test(*view, cfg);
            Trial& t = rep.trials[j];
            t.ok = true;
            t.reject = out.reject;
            t.tau_hat = out.tau_hat;
            t.alpha_hat = (out.hill && out.hill->finite()) ? out.hill->alpha_hat
                                                           : std::numeric_limits<double>::quiet_NaN();
        } catch (const std::exception& e) {
            record_error(e);
        }
    }
    return rep;
}

} // namespace

void SimulationSpec::validate() const
{
    model.validate();
    if (change) change->validate();
    if (n < 4) throw ParameterError("simulation length n must be at least 4");
    if (k_grid.empty()) throw ParameterError("k grid is empty");
    for (std::size_t k : k_grid)
        if (k < 1 || k + 2 > n)
            throw ParameterError("k=" + std::to_string(k) + " outside [1, n-2] for n=" + std::to_string(n));
    if (replications < 1) throw ParameterError("replications must be at least 1");
    if (!(level > 0.0 && level < 1.0)) throw ParameterError("level must lie in (0,1)");
    if (const auto* ar = std::get_if<ArResidualTest>(&test)) {
        if (ar->order < 1) throw ParameterError("AR order must be at least 1");
        for (std::size_t k : k_grid)
            if (k + 2 > n - ar->order)
                throw ParameterError("k=" + std::to_string(k) + " too large for the residual series");
    }
}

std::string SimulationSpec::fingerprint() const
{
    std::ostringstream out;
    out << model_label(model) << ':';
    if (change)
        out << describe(change->pre) << "->" << describe(change->post) << "@tau=" << change->tau;
    else
        out << describe(model.innovation);
    out << "|n=" << n << "|phi=" << to_string(phi);
    std::visit(Overloaded{
                   [&](const DirectTest&) { out << "|adjust=" << to_string(adjust) << "|direct"; },
                   [&](const ArResidualTest& ar) {
                       out << "|adjust=iid|ar-residual(p=" << ar.order << ";" << to_string(ar.method) << ")";
                   },
               },
               test);
    out << "|level=" << level;
    if (critical_value) out << "|cv=" << *critical_value;
    return out.str();
}

TableResult run_table(const SimulationSpec& spec, unsigned workers)
{
    spec.validate();

    std::vector<Replication> reps(spec.replications);
    detail::parallel_for(spec.replications, workers,
                         [&](std::size_t r) { reps[r] = run_replication(spec, r); });

    TableResult result;
    result.spec = spec;
    result.replications = spec.replications;
    const double denom = static_cast<double>(spec.replications);

    // Reduction runs in replication order, so sums are independent of scheduling.
    for (std::size_t j = 0; j < spec.k_grid.size(); ++j) {
        CellResult cell;
        cell.k = spec.k_grid[j];
        double sq_err = 0.0;
        double alpha_sum = 0.0;
        std::size_t ok = 0;
        std::size_t alpha_count = 0;
        for (const auto& rep : reps) {
            const Trial& t = rep.trials[j];
            if (!t.ok) {
                ++cell.error_count;
                continue;
            }
            ++ok;
            if (t.reject) ++cell.rejections;
            if (spec.change) sq_err += (t.tau_hat - spec.change->tau) * (t.tau_hat - spec.change->tau);
            if (!std::isnan(t.alpha_hat)) {
                alpha_sum += t.alpha_hat;
                ++alpha_count;
            }
        }
        cell.rejection_rate = static_cast<double>(cell.rejections) / denom;
        if (spec.change && ok > 0) cell.mse_tau = sq_err / static_cast<double>(ok);
        cell.mean_alpha_hat = alpha_count > 0 ? alpha_sum / static_cast<double>(alpha_count)
                                              : std::numeric_limits<double>::quiet_NaN();
        result.error_count += cell.error_count;
        result.cells.push_back(cell);
    }

    for (const auto& rep : reps)
        for (const auto& msg : rep.errors) {
            if (result.error_samples.size() >= kMaxErrorSamples) break;
            if (std::find(result.error_samples.begin(), result.error_samples.end(), msg) ==
                result.error_samples.end())
                result.error_samples.push_back(msg);
        }
    return result;
}

std::vector<SweepItem> sweep(std::span<const SimulationSpec> specs, unsigned workers)
{
    if (specs.empty()) throw ParameterError("sweep needs at least one spec");
    std::vector<SweepItem> items(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        try {
            items[i].result = run_table(specs[i], workers);
        } catch (const std::exception& e) {
            items[i].error = e.what();
        }
    }
    return items;
}

std::string delimited_header()
{
    return "fingerprint,n,k,rejection_rate,mse_tau,mean_alpha_hat,replications,error_count";
}

std::string to_delimited_rows(const TableResult& result)
{
    std::ostringstream out;
    out.precision(10);
    const std::string fp = result.spec.fingerprint();
    for (const auto& c : result.cells) {
        out << fp << ',' << result.spec.n << ',' << c.k << ',' << c.rejection_rate << ',';
        if (c.mse_tau) out << *c.mse_tau;
        out << ',';
        if (!std::isnan(c.mean_alpha_hat)) out << c.mean_alpha_hat;
        out << ',' << result.replications << ',' << c.error_count << '\n';
    }
    return out.str();
}

namespace {

nlohmann::json law_json(const Innovation& law)
{
    return std::visit(Overloaded{
                          [](const BurrParams& p) {
                              return nlohmann::json{{"law", "burr"}, {"lambda", p.lambda},
                                                    {"beta", p.beta}, {"gamma", p.gamma}};
                          },
                          [](const TDistParams& p) { return nlohmann::json{{"law", "t"}, {"nu", p.nu}}; },
                          [](const ParetoParams& p) {
                              return nlohmann::json{{"law", "pareto"}, {"alpha", p.alpha}};
                          },
                      },
                      law);
}

nlohmann::json nullable(double x)
{
    return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

} // namespace

nlohmann::json to_json(const TableResult& result)
{
    const SimulationSpec& s = result.spec;
    nlohmann::json spec = {
        {"fingerprint", s.fingerprint()},
        {"model", model_label(s.model)},
        {"innovation", law_json(s.model.innovation)},
        {"n", s.n},
        {"k_grid", s.k_grid},
        {"phi", to_string(s.phi)},
        {"adjust", to_string(s.adjust)},
        {"level", s.level},
        {"replications", s.replications},
        {"seed", s.seed},
    };
    spec["critical_value"] = s.critical_value ? nlohmann::json(*s.critical_value) : nlohmann::json(nullptr);
    if (s.change)
        spec["change"] = {{"tau", s.change->tau}, {"pre", law_json(s.change->pre)},
                          {"post", law_json(s.change->post)}};
    else
        spec["change"] = nullptr;
    if (const auto* ar = std::get_if<ArResidualTest>(&s.test))
        spec["test"] = {{"kind", "ar-residual"}, {"order", ar->order}, {"method", to_string(ar->method)}};
    else
        spec["test"] = {{"kind", "direct"}};

    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : result.cells) {
        cells.push_back({{"k", c.k},
                         {"rejections", c.rejections},
                         {"rejection_rate", c.rejection_rate},
                         {"mse_tau", c.mse_tau ? nlohmann::json(*c.mse_tau) : nlohmann::json(nullptr)},
                         {"mean_alpha_hat", nullable(c.mean_alpha_hat)},
                         {"error_count", c.error_count}});
    }
    return {{"spec", spec},
            {"replications", result.replications},
            {"error_count", result.error_count},
            {"error_samples", result.error_samples},
            {"cells", cells}};
}

} // namespace tailcusum
