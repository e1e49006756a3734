#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tailcusum/experiments.hpp"

namespace tailcusum {

enum class TableMetric { RejectionRate, MseTau };

struct ReferenceRow {
    std::string label;               // e.g. "alpha=2 gamma=-2.0"
    SimulationSpec spec;
    std::vector<double> published;   // one per k in spec.k_grid
};

struct ReferenceTable {
    int id = 0;
    std::string title;
    TableMetric metric = TableMetric::RejectionRate;
    std::vector<ReferenceRow> rows;
};

/// Published simulation designs 2..10 with their reported values. The
/// n = 1000 block is always included; the n = 3000 block only with
/// `include_large`. Row r is seeded with split_seed(seed, r).
ReferenceTable reference_table(int id, std::size_t replications, std::uint64_t seed,
                               bool include_large = false);

std::vector<int> reference_table_ids();

} // namespace tailcusum
