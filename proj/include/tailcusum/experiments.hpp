#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "tailcusum/ar_fit.hpp"
#include "tailcusum/cusum_test.hpp"
#include "tailcusum/variates.hpp"

namespace tailcusum {

/// Test the simulated observations directly.
struct DirectTest {};

/// Fit AR(order) and test the absolute residuals.
struct ArResidualTest {
    std::size_t order = 1;
    ArMethod method = ArMethod::Ols;
};

using TestDesign = std::variant<DirectTest, ArResidualTest>;

struct SimulationSpec {
    ModelSpec model;
    std::optional<ChangeSpec> change;
    std::size_t n = 1000;
    std::vector<std::size_t> k_grid;
    PhiKind phi = PhiKind::Indicator;
    AdjustMode adjust = AdjustMode::Iid;
    TestDesign test = DirectTest{};
    double level = 0.05;
    std::optional<double> critical_value;
    std::size_t replications = 2000;
    std::uint64_t seed = 1;

    void validate() const;
    /// Human-readable identifier of the design (model, change, n, test); the
    /// seed and replication count are not part of it.
    std::string fingerprint() const;
};

struct CellResult {
    std::size_t k = 0;
    std::size_t rejections = 0;
    double rejection_rate = 0.0;   // rejections / replications
    std::optional<double> mse_tau; // only with a change
    double mean_alpha_hat = 0.0;   // over replications with a finite estimate
    std::size_t error_count = 0;
};

struct TableResult {
    SimulationSpec spec;
    std::vector<CellResult> cells; // one per k in spec.k_grid, same order
    std::size_t replications = 0;
    std::size_t error_count = 0;
    std::vector<std::string> error_samples; // first few distinct messages
};

/// Simulates spec.replications paths (replication r seeded with
/// split_seed(spec.seed, r)) and applies the test at every k of the grid to
/// the same path. Bit-identical for any number of workers (0 = hardware
/// concurrency).
TableResult run_table(const SimulationSpec& spec, unsigned workers = 0);

struct SweepItem {
    std::optional<TableResult> result;
    std::string error; // set when the spec itself failed
};

/// Runs every spec independently; a failing spec is reported in its slot
/// and does not stop the others. Throws ParameterError on an empty input.
std::vector<SweepItem> sweep(std::span<const SimulationSpec> specs, unsigned workers = 0);

/// Delimited header line for `to_delimited_rows`.
std::string delimited_header();
/// fingerprint,n,k,rejection_rate,mse_tau,mean_alpha_hat,replications,error_count
std::string to_delimited_rows(const TableResult& result);

nlohmann::json to_json(const TableResult& result);

} // namespace tailcusum
