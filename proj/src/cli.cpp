#include "tailcusum/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "tailcusum/ar_fit.hpp"
#include "tailcusum/cusum_test.hpp"
#include "tailcusum/error.hpp"
#include "tailcusum/experiments.hpp"
#include "tailcusum/null_dist.hpp"
#include "tailcusum/paper_tables.hpp"
#include "tailcusum/series_io.hpp"
#include "tailcusum/variates.hpp"

namespace tailcusum {

namespace {

using nlohmann::json;

struct TestOptions {
    std::string input = "-";
    std::size_t k = 0;
    std::string phi = "indicator";
    std::string adjust = "iid";
    double level = 0.05;
    std::size_t max_lag = 1;
    std::optional<double> critical_value;
    bool no_abs = false;
    std::string format = "human";
    // ar-test only
    std::size_t order = 1;
    std::string method = "ols";
};

struct CriticalOptions {
    std::vector<double> levels{0.90, 0.95, 0.99};
    bool mc = false;
    std::size_t paths = 10000;
    std::size_t reps = 10000;
    std::optional<std::uint64_t> seed;
    unsigned workers = 0;
};

struct TablesOptions {
    int table = 0;
    std::size_t reps = 2000;
    std::optional<std::uint64_t> seed;
    bool large = false;
    std::string out = "-";
    std::string report;
    unsigned workers = 0;
    std::optional<double> critical_value;
};

struct SimulateOptions {
    std::string model = "iid";
    std::string law = "t:3";
    std::optional<std::string> post_law;
    double tau = 0.5;
    double theta = 0.0;
    double ar_phi = 0.0;
    std::size_t n = 1000;
    std::optional<std::uint64_t> seed;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag)
{
    if (flag) return *flag;
    if (const char* env = std::getenv(kSeedEnvVar)) {
        char* end = nullptr;
        const auto v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0')
            throw ParameterError(std::string(kSeedEnvVar) + " is not an unsigned integer");
        return v;
    }
    return 1;
}

json optional_number(const std::optional<double>& v)
{
    return (v && std::isfinite(*v)) ? json(*v) : json(nullptr);
}

json outcome_json(const TestOutcome& o, const TestOptions& opt, const std::string& view)
{
    json j = {
        {"input", opt.input},
        {"view", view},
        {"n", o.n},
        {"k", o.k},
        {"phi", to_string(o.phi)},
        {"adjust", to_string(o.adjust)},
        {"level", o.level},
        {"statistic", o.raw_statistic},
        {"scale_factor", o.scale_factor},
        {"scaled_statistic", o.scaled_statistic},
        {"critical_value", o.critical_value},
        {"reject", o.reject},
        {"l_hat", o.l_hat},
        {"tau_hat", o.tau_hat},
    };
    j["hill_mean"] = o.hill ? json(o.hill->hill_mean) : json(nullptr);
    j["alpha_hat"] = o.hill ? optional_number(o.hill->alpha_hat) : json(nullptr);
    j["omega_hat"] = optional_number(o.omega_hat);
    j["chi_hat"] = optional_number(o.chi_hat);
    return j;
}

void print_outcome_human(std::ostream& out, const TestOutcome& o)
{
    out << std::setprecision(6) << std::fixed;
    out << "n                 " << o.n << '\n';
    out << "k                 " << o.k << '\n';
    out << "phi               " << to_string(o.phi) << '\n';
    out << "adjust            " << to_string(o.adjust) << '\n';
    if (o.hill)
        out << "alpha_hat         "
            << (o.hill->finite() ? std::to_string(o.hill->alpha_hat) : std::string("inf")) << '\n';
    if (o.omega_hat) out << "omega_hat         " << *o.omega_hat << '\n';
    if (o.chi_hat) out << "chi_hat           " << *o.chi_hat << '\n';
    out << "statistic         " << o.raw_statistic << '\n';
    out << "scale_factor      " << o.scale_factor << '\n';
    out << "scaled_statistic  " << o.scaled_statistic << '\n';
    out << "critical_value    " << o.critical_value << "  (level " << o.level << ")\n";
    out << "l_hat             " << o.l_hat << '\n';
    out << "tau_hat           " << o.tau_hat << '\n';
    out << "decision          " << (o.reject ? "change in tail index" : "no change") << '\n';
}

Series load_input(const TestOptions& opt, std::istream& in, std::ostream& err)
{
    Series x = read_series_file(opt.input, in);
    if (!opt.no_abs && std::any_of(x.begin(), x.end(), [](double v) { return v < 0.0; }))
        err << "note: input has negative values; testing absolute values (--no-abs to refuse)\n";
    return x;
}

TailTestConfig make_config(const TestOptions& opt)
{
    TailTestConfig cfg;
    cfg.k = opt.k;
    cfg.phi = parse_phi(opt.phi);
    cfg.adjust = parse_adjust(opt.adjust);
    cfg.level = opt.level;
    cfg.max_lag = opt.max_lag;
    cfg.critical_value = opt.critical_value;
    cfg.view = opt.no_abs ? ValueView::Raw : ValueView::Absolute;
    return cfg;
}

void check_k_against(std::size_t k, std::size_t n)
{
    if (n < 4) throw ParameterError("need at least 4 observations, got " + std::to_string(n));
    if (k + 2 > n)
        throw ParameterError("k=" + std::to_string(k) + " too large for " + std::to_string(n) +
                             " observations (need k <= n-2)");
}

int cmd_test(const TestOptions& opt, std::istream& in, std::ostream& out, std::ostream& err)
{
    const Series x = load_input(opt, in, err);
    check_k_against(opt.k, x.size());
    const TailTestConfig cfg = make_config(opt);
    const TestOutcome o = run_test(x, cfg);
    if (opt.format == "structured")
        out << outcome_json(o, opt, opt.no_abs ? "raw" : "absolute").dump() << '\n';
    else
        print_outcome_human(out, o);
    return o.reject ? kExitChange : kExitNoChange;
}

int cmd_ar_test(const TestOptions& opt, std::istream& in, std::ostream& out, std::ostream& err)
{
    const Series x = load_input(opt, in, err);
    if (x.size() < opt.order + 2)
        throw ParameterError("AR(" + std::to_string(opt.order) + ") needs more observations");
    check_k_against(opt.k, x.size() - opt.order);
    const auto result = residual_test(x, opt.order, make_config(opt), parse_ar_method(opt.method));
    if (opt.format == "structured") {
        json j = outcome_json(result.outcome, opt, "absolute-residuals");
        j["ar"] = {{"order", result.fit.order},
                   {"method", to_string(result.fit.method)},
                   {"coefficients", result.fit.coefficients}};
        out << j.dump() << '\n';
    } else {
        out << std::setprecision(6) << std::fixed;
        out << "ar_order          " << result.fit.order << " (" << to_string(result.fit.method) << ")\n";
        for (std::size_t j = 0; j < result.fit.coefficients.size(); ++j)
            out << "coefficient[" << j + 1 << "]    " << result.fit.coefficients[j] << '\n';
        print_outcome_human(out, result.outcome);
    }
    return result.outcome.reject ? kExitChange : kExitNoChange;
}

int cmd_critical_values(const CriticalOptions& opt, std::ostream& out)
{
    const CriticalValueTable table =
        opt.mc ? mc_critical_values(opt.levels, opt.paths, opt.reps, resolve_seed(opt.seed), opt.workers)
               : analytic_critical_values(opt.levels);
    out << table.to_delimited();
    return kExitNoChange;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path);
    if (!file) throw ParameterError("cannot write '" + path + "'");
    file << text;
}

int cmd_tables(const TablesOptions& opt, std::ostream& out, std::ostream& err)
{
    const ReferenceTable table = reference_table(opt.table, opt.reps, resolve_seed(opt.seed), opt.large);
    std::vector<SimulationSpec> specs;
    for (const auto& row : table.rows) {
        specs.push_back(row.spec);
        specs.back().critical_value = opt.critical_value;
    }
    const auto items = sweep(specs, opt.workers);

    std::ostringstream csv;
    csv.precision(10);
    csv << delimited_header() << ",table,row,published\n";
    json report = {{"table", table.id}, {"title", table.title},
                   {"metric", table.metric == TableMetric::MseTau ? "mse_tau" : "rejection_rate"}};
    json rows = json::array();
    for (std::size_t r = 0; r < items.size(); ++r) {
        const auto& row = table.rows[r];
        if (!items[r].result) {
            err << "table " << table.id << " row '" << row.label << "' failed: " << items[r].error << '\n';
            rows.push_back({{"label", row.label}, {"error", items[r].error}});
            continue;
        }
        const TableResult& res = *items[r].result;
        std::istringstream lines(to_delimited_rows(res));
        std::string line;
        for (std::size_t c = 0; std::getline(lines, line); ++c)
            csv << line << ',' << table.id << ',' << row.label << ',' << row.published[c] << '\n';
        json j = to_json(res);
        j["label"] = row.label;
        j["published"] = row.published;
        rows.push_back(std::move(j));
    }
    report["rows"] = std::move(rows);

    write_text(opt.out, csv.str(), out);
    if (!opt.report.empty()) write_text(opt.report, report.dump(2) + "\n", out);
    return kExitNoChange;
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& out)
{
    ModelSpec model;
    if (opt.model == "iid")
        model.kind = ModelKind::Iid;
    else if (opt.model == "ma1")
        model.kind = ModelKind::Ma1;
    else if (opt.model == "ar1")
        model.kind = ModelKind::Ar1;
    else
        throw ParameterError("unknown model '" + opt.model + "' (expected iid, ma1 or ar1)");
    model.theta = opt.theta;
    model.phi = opt.ar_phi;
    model.innovation = parse_law(opt.law);

    std::optional<ChangeSpec> change;
    if (opt.post_law) change = ChangeSpec{opt.tau, model.innovation, parse_law(*opt.post_law)};

    const Series x = simulate(model, opt.n, resolve_seed(opt.seed), change);
    out << std::setprecision(17);
    for (double v : x) out << v << '\n';
    return kExitNoChange;
}

void add_test_flags(CLI::App* cmd, TestOptions& opt)
{
    cmd->add_option("input", opt.input, "Series file, one value per line ('-' for stdin)");
    cmd->add_option("-k,--k", opt.k, "Tail sample fraction (number of upper order statistics)")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--phi", opt.phi, "indicator | log-excess")->capture_default_str();
    cmd->add_option("--level", opt.level, "Nominal significance level")->capture_default_str();
    cmd->add_option("--critical-value", opt.critical_value, "Override the analytic critical value");
    cmd->add_flag("--no-abs", opt.no_abs, "Require non-negative input instead of using |x|");
    cmd->add_option("--format", opt.format, "human | structured")
        ->check(CLI::IsMember({"human", "structured"}))
        ->capture_default_str();
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Tests for a change in the tail index of a heavy-tailed series"};
    app.require_subcommand(1);

    TestOptions test_opt;
    auto* test = app.add_subcommand("test", "CUSUM test on the observations");
    add_test_flags(test, test_opt);
    test->add_option("--adjust", test_opt.adjust, "iid | lag1")->capture_default_str();
    test->add_option("--max-lag", test_opt.max_lag, "Lags in the dependence estimates (lag1 mode)")
        ->capture_default_str();

    TestOptions ar_opt;
    auto* ar = app.add_subcommand("ar-test", "Fit AR(p) and test the absolute residuals");
    add_test_flags(ar, ar_opt);
    ar->add_option("-p,--order", ar_opt.order, "AR order")->capture_default_str()->check(CLI::PositiveNumber);
    ar->add_option("--method", ar_opt.method, "ols | yule-walker")->capture_default_str();

    CriticalOptions cv_opt;
    auto* cv = app.add_subcommand("critical-values", "Quantiles of sup|Brownian bridge|");
    cv->add_option("--levels", cv_opt.levels, "Quantile probabilities")->delimiter(',')->capture_default_str();
    cv->add_flag("--mc", cv_opt.mc, "Monte Carlo instead of the analytic law");
    cv->add_option("--paths", cv_opt.paths, "Monte Carlo path length")->capture_default_str();
    cv->add_option("--reps", cv_opt.reps, "Monte Carlo replications")->capture_default_str();
    cv->add_option("--seed", cv_opt.seed, std::string("Seed (default $") + kSeedEnvVar + " or 1)");
    cv->add_option("--workers", cv_opt.workers, "Threads (0 = all cores)");

    TablesOptions tab_opt;
    auto* tab = app.add_subcommand("tables", "Reproduce a published simulation table (2..10)");
    tab->add_option("--table", tab_opt.table, "Table id")->required();
    tab->add_option("--reps", tab_opt.reps, "Replications per row")->capture_default_str()->check(CLI::PositiveNumber);
    tab->add_option("--seed", tab_opt.seed, std::string("Seed (default $") + kSeedEnvVar + " or 1)");
    tab->add_flag("--large", tab_opt.large, "Include the n = 3000 block (long running)");
    tab->add_option("--out", tab_opt.out, "Delimited output path ('-' for stdout)")->capture_default_str();
    tab->add_option("--report", tab_opt.report, "Structured JSON report path");
    tab->add_option("--workers", tab_opt.workers, "Threads (0 = all cores)");
    tab->add_option("--critical-value", tab_opt.critical_value, "Fixed critical value instead of the analytic one");

    SimulateOptions sim_opt;
    auto* sim = app.add_subcommand("simulate", "Write a simulated series to stdout");
    sim->add_option("--model", sim_opt.model, "iid | ma1 | ar1")->capture_default_str();
    sim->add_option("--law", sim_opt.law, "Innovation law: t:NU, pareto:ALPHA, burr:LAMBDA,BETA,GAMMA")
        ->capture_default_str();
    sim->add_option("--post-law", sim_opt.post_law, "Law after the change point (enables a change)");
    sim->add_option("--tau", sim_opt.tau, "Change point fraction")->capture_default_str();
    sim->add_option("--theta", sim_opt.theta, "MA(1) coefficient")->capture_default_str();
    sim->add_option("--ar-phi", sim_opt.ar_phi, "AR(1) coefficient")->capture_default_str();
    sim->add_option("-n,--n", sim_opt.n, "Length")->capture_default_str();
    sim->add_option("--seed", sim_opt.seed, std::string("Seed (default $") + kSeedEnvVar + " or 1)");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitNoChange;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitNoChange;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitError;
    }

    try {
        if (test->parsed()) return cmd_test(test_opt, in, out, err);
        if (ar->parsed()) return cmd_ar_test(ar_opt, in, out, err);
        if (cv->parsed()) return cmd_critical_values(cv_opt, out);
        if (tab->parsed()) return cmd_tables(tab_opt, out, err);
        if (sim->parsed()) return cmd_simulate(sim_opt, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

} // namespace tailcusum
