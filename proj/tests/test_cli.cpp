#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tailcusum/cli.hpp"
#include "tailcusum/experiments.hpp"
#include "tailcusum/series_io.hpp"
#include "tailcusum/variates.hpp"

using namespace tailcusum;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args, const std::string& stdin_text = "")
{
    args.insert(args.begin(), "tailcusum");
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    const int code = run_cli(args, in, out, err);
    return {code, out.str(), err.str()};
}

class TempFile {
public:
    explicit TempFile(const std::string& contents)
        : path_(fs::temp_directory_path() / ("tailcusum_test_" + std::to_string(counter_++) + "_" +
                                             std::to_string(::getpid()) + ".txt"))
    {
        std::ofstream(path_) << contents;
    }
    ~TempFile() { fs::remove(path_); }
    std::string path() const { return path_.string(); }

private:
    static inline int counter_ = 0;
    fs::path path_;
};

std::string to_lines(const Series& x)
{
    std::ostringstream out;
    out << std::setprecision(17);
    for (double v : x) out << v << '\n';
    return out.str();
}

} // namespace

TEST_CASE("test subcommand on the four-point fixture")
{
    TempFile file("5\n1\n2\n3\n");
    const auto r = cli({"test", file.path(), "--k", "2", "--phi", "indicator", "--adjust", "iid", "--level", "0.05"});
    CHECK(r.code == kExitNoChange);
    CHECK(r.out.find("scaled_statistic  0.530330") != std::string::npos);
    CHECK(r.out.find("decision          no change") != std::string::npos);
}

TEST_CASE("input parsing skips comments and blank lines and reports bad lines")
{
    const auto ok = cli({"test", "-", "--k", "2"}, "# header\n\n5\n  1 \n2\n# mid\n3\n");
    CHECK(ok.code == kExitNoChange);

    const auto bad = cli({"test", "-", "--k", "2"}, "5\n1\nabc\n3\n");
    CHECK(bad.code == kExitError);
    CHECK(bad.err.find(":3:") != std::string::npos);

    std::istringstream in("1\n2\n\n# c\n1e3\n");
    CHECK(read_series(in) == Series{1, 2, 1000});
}

TEST_CASE("usage errors exit with status 1")
{
    CHECK(cli({"test", "-", "--k", "1"}, "5\n").code == kExitError);
    CHECK(cli({"test", "-", "--k", "4"}, "5\n1\n2\n3\n").code == kExitError);
    CHECK(cli({"test", "-"}, "5\n1\n2\n3\n").code == kExitError); // k required
    CHECK(cli({"test", "-", "--k", "2", "--phi", "cube"}, "5\n1\n2\n3\n").code == kExitError);
    CHECK(cli({"test", "/nonexistent/file", "--k", "2"}).code == kExitError);
    CHECK(cli({}).code == kExitError);
    CHECK(cli({"frobnicate"}).code == kExitError);
    CHECK(cli({"--help"}).code == kExitNoChange);
}

TEST_CASE("negative input: absolute view by default, refused with --no-abs")
{
    const std::string data = "-5\n1\n2\n3\n";
    const auto abs_run = cli({"test", "-", "--k", "2", "--format", "structured"}, data);
    CHECK(abs_run.code == kExitNoChange);
    CHECK(abs_run.err.find("absolute values") != std::string::npos);
    CHECK(nlohmann::json::parse(abs_run.out)["scaled_statistic"].get<double>() ==
          doctest::Approx(0.530330085889911).epsilon(1e-12));

    const auto raw_run = cli({"test", "-", "--k", "2", "--no-abs"}, data);
    CHECK(raw_run.code == kExitError);
}

TEST_CASE("structured output carries every field and reruns bit-identically")
{
    ModelSpec m;
    m.kind = ModelKind::Ma1;
    m.theta = 0.5;
    m.innovation = TDistParams{2};
    const std::string data = to_lines(simulate(m, 1000, 3));
    const std::vector<std::string> args{"test", "-", "--k", "50", "--phi", "log-excess", "--adjust", "lag1",
                                        "--format", "structured"};
    const auto a = cli(args, data);
    const auto b = cli(args, data);
    REQUIRE(a.code != kExitError);
    CHECK(a.out == b.out);

    const auto j = nlohmann::json::parse(a.out);
    for (const char* key : {"n", "k", "phi", "adjust", "level", "alpha_hat", "omega_hat", "chi_hat", "statistic",
                            "scale_factor", "scaled_statistic", "critical_value", "reject", "l_hat", "tau_hat"})
        CHECK_MESSAGE(j.contains(key), key);
    CHECK(j["n"] == 1000);
    CHECK(j["phi"] == "log-excess");
    CHECK(j["omega_hat"].is_number());
    CHECK(j["chi_hat"].is_number());
    CHECK(j["scaled_statistic"].get<double>() ==
          j["scale_factor"].get<double>() * j["statistic"].get<double>());
    CHECK((a.code == kExitChange) == j["reject"].get<bool>());

    // Numbers survive the text round trip exactly.
    const auto again = nlohmann::json::parse(j.dump());
    CHECK(again["statistic"].get<double>() == j["statistic"].get<double>());
    CHECK(again["tau_hat"].get<double>() == j["tau_hat"].get<double>());
}

TEST_CASE("simulated change is rejected and located")
{
    ModelSpec m;
    m.kind = ModelKind::Iid;
    const ChangeSpec change{0.5, ParetoParams{3.0}, ParetoParams{0.8}};
    int rejected = 0;
    int located = 0;
    for (std::uint64_t r = 0; r < 200; ++r) {
        const auto run = cli({"test", "-", "--k", "100", "--format", "structured"},
                             to_lines(simulate(m, 2000, split_seed(4242, r), change)));
        REQUIRE(run.code != kExitError);
        const auto j = nlohmann::json::parse(run.out);
        if (run.code == kExitChange) ++rejected;
        if (run.code == kExitChange && std::abs(j["tau_hat"].get<double>() - 0.5) <= 0.1) ++located;
    }
    CHECK(located >= 180);
    CHECK(rejected >= 180);
}

TEST_CASE("ar-test subcommand")
{
    ModelSpec m;
    m.kind = ModelKind::Ar1;
    m.phi = 0.5;
    m.innovation = TDistParams{3};
    const std::string null_data = to_lines(simulate(m, 1000, 1));
    const auto r = cli({"ar-test", "-", "--k", "50", "--order", "1", "--format", "structured"}, null_data);
    REQUIRE(r.code != kExitError);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["n"] == 999);
    CHECK(j["ar"]["coefficients"][0].get<double>() == doctest::Approx(0.5).epsilon(0.1));

    const auto human = cli({"ar-test", "-", "--k", "50", "--method", "yule-walker"}, null_data);
    CHECK(human.out.find("yule-walker") != std::string::npos);

    const std::string change_data = to_lines(simulate(m, 1000, 2, ChangeSpec{0.5, TDistParams{3}, TDistParams{1}}));
    CHECK(cli({"ar-test", "-", "--k", "50"}, change_data).code == kExitChange);
    CHECK(cli({"ar-test", "-", "--k", "999"}, null_data).code == kExitError);
}

TEST_CASE("critical-values subcommand")
{
    const auto def = cli({"critical-values"});
    CHECK(def.code == kExitNoChange);
    CHECK(def.out ==
          "level,critical_value,source\n0.900000,1.223848,analytic\n0.950000,1.358099,analytic\n"
          "0.990000,1.627624,analytic\n");

    const auto single = cli({"critical-values", "--levels", "0.5"});
    CHECK(single.out == "level,critical_value,source\n0.500000,0.827574,analytic\n");

    CHECK(cli({"critical-values", "--levels", "1.5"}).code == kExitError);
    CHECK(cli({"critical-values", "--levels", "0"}).code == kExitError);

    const auto mc = cli({"critical-values", "--mc", "--paths", "10000", "--reps", "10000", "--seed", "7"});
    REQUIRE(mc.code == kExitNoChange);
    std::istringstream lines(mc.out);
    std::string line;
    std::getline(lines, line);
    const double published[] = {1.22, 1.35, 1.60};
    for (double want : published) {
        REQUIRE(std::getline(lines, line));
        const auto first = line.find(',');
        const double value = std::stod(line.substr(first + 1, line.find(',', first + 1) - first - 1));
        CHECK(std::abs(value - want) <= 0.04);
        CHECK(line.find("monte-carlo") != std::string::npos);
    }
}

TEST_CASE("tables subcommand")
{
    CHECK(cli({"tables", "--table", "99"}).code == kExitError);

    TempFile report("");
    const auto t2 = cli({"tables", "--table", "2", "--reps", "2000", "--seed", "1", "--report", report.path()});
    REQUIRE(t2.code == kExitNoChange);
    std::istringstream lines(t2.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == delimited_header() + ",table,row,published");
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
        REQUIRE(fields.size() == 11);
        if (fields[2] == "50") CHECK(std::abs(std::stod(fields[3]) - std::stod(fields[10])) <= 0.015);
    }
    CHECK(rows == 40);

    std::ifstream in(report.path());
    const auto j = nlohmann::json::parse(in);
    CHECK(j["table"] == 2);
    CHECK(j["rows"].size() == 4);

    const auto t10 = cli({"tables", "--table", "10", "--reps", "1000", "--seed", "1"});
    REQUIRE(t10.code == kExitNoChange);
    bool found = false;
    std::istringstream l10(t10.out);
    while (std::getline(l10, line)) {
        if (line.find("tau=0.5") == std::string::npos || line.find(",50,") == std::string::npos) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
        if (fields[2] != "50") continue;
        found = true;
        CHECK(std::stod(fields[4]) <= 0.006);
    }
    CHECK(found);
}

TEST_CASE("simulate subcommand honours the seed environment variable")
{
    const auto by_flag = cli({"simulate", "--model", "ma1", "--theta", "0.5", "--law", "t:3", "-n", "50", "--seed", "17"});
    REQUIRE(by_flag.code == kExitNoChange);
    CHECK(std::count(by_flag.out.begin(), by_flag.out.end(), '\n') == 50);

    ::setenv(kSeedEnvVar, "17", 1);
    const auto by_env = cli({"simulate", "--model", "ma1", "--theta", "0.5", "--law", "t:3", "-n", "50"});
    const auto flag_wins = cli({"simulate", "--model", "ma1", "--theta", "0.5", "--law", "t:3", "-n", "50", "--seed", "18"});
    ::unsetenv(kSeedEnvVar);
    CHECK(by_env.out == by_flag.out);
    CHECK(flag_wins.out != by_flag.out);

    CHECK(cli({"simulate", "--model", "arma"}).code == kExitError);
    CHECK(cli({"simulate", "--law", "t:-1"}).code == kExitError);
    CHECK(cli({"simulate", "--model", "ar1", "--ar-phi", "1.0"}).code == kExitError);
    const auto changed = cli({"simulate", "--law", "pareto:3", "--post-law", "pareto:0.8", "-n", "10"});
    CHECK(changed.code == kExitNoChange);
}

TEST_CASE("law parsing")
{
    CHECK(std::get<TDistParams>(parse_law("t:3")).nu == 3.0);
    CHECK(std::get<ParetoParams>(parse_law("pareto:0.8")).alpha == 0.8);
    const auto b = std::get<BurrParams>(parse_law("burr:1,1,-2"));
    CHECK(b.alpha() == 2.0);
    CHECK_THROWS(parse_law("t"));
    CHECK_THROWS(parse_law("burr:1,1"));
    CHECK_THROWS(parse_law("gamma:2"));
}
