#include "tailcusum/paper_tables.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "tailcusum/error.hpp"
#include "tailcusum/rng.hpp"

namespace tailcusum {

namespace {

using Values = std::vector<double>;

const std::vector<std::size_t> kGridSmall{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
const std::vector<std::size_t> kGridLarge{25, 50, 75, 100, 125, 150, 175, 200, 225, 250};

struct Block {
    std::size_t n;
    const std::vector<std::size_t>* grid;
};

constexpr Block kSmall{1000, &kGridSmall};
constexpr Block kLarge{3000, &kGridLarge};

struct BurrRow {
    double alpha;
    double gamma;
    Values small;
    Values large;
};

// Burr with beta = 1 and lambda = alpha / (-gamma).
const std::vector<BurrRow> kIidPhi1{
    {2, -2.0,
     {0.035, 0.040, 0.035, 0.037, 0.035, 0.037, 0.033, 0.032, 0.034, 0.033},
     {0.033, 0.048, 0.043, 0.044, 0.038, 0.033, 0.024, 0.043, 0.037, 0.039}},
    {2, -0.5,
     {0.030, 0.041, 0.039, 0.035, 0.038, 0.035, 0.037, 0.036, 0.032, 0.031},
     {0.031, 0.047, 0.038, 0.040, 0.035, 0.033, 0.033, 0.035, 0.044, 0.038}},
    {1, -2.0,
     {0.035, 0.040, 0.037, 0.041, 0.036, 0.033, 0.033, 0.033, 0.031, 0.028},
     {0.045, 0.047, 0.031, 0.046, 0.035, 0.035, 0.042, 0.043, 0.029, 0.037}},
    {1, -0.5,
     {0.030, 0.036, 0.038, 0.038, 0.037, 0.036, 0.034, 0.029, 0.031, 0.032},
     {0.033, 0.041, 0.040, 0.034, 0.056, 0.038, 0.048, 0.034, 0.046, 0.039}},
};

const std::vector<BurrRow> kIidPhi2{
    {2, -2.0,
     {0.011, 0.021, 0.029, 0.028, 0.029, 0.032, 0.029, 0.028, 0.027, 0.032},
     {0.023, 0.033, 0.033, 0.041, 0.037, 0.032, 0.029, 0.039, 0.020, 0.039}},
    {2, -0.5,
     {0.009, 0.017, 0.022, 0.021, 0.023, 0.021, 0.019, 0.021, 0.018, 0.019},
     {0.025, 0.027, 0.031, 0.034, 0.037, 0.030, 0.031, 0.021, 0.027, 0.030}},
    {1, -2.0,
     {0.012, 0.023, 0.029, 0.029, 0.030, 0.031, 0.031, 0.032, 0.035, 0.031},
     {0.031, 0.026, 0.032, 0.039, 0.044, 0.040, 0.043, 0.034, 0.035, 0.029}},
    {1, -0.5,
     {0.009, 0.019, 0.025, 0.027, 0.023, 0.025, 0.024, 0.026, 0.024, 0.023},
     {0.029, 0.031, 0.041, 0.038, 0.035, 0.032, 0.038, 0.029, 0.028, 0.035}},
};

struct CoefRow {
    double coef; // theta for MA(1), phi for AR(1), tau for change designs
    Values small;
    Values large;
};

const std::vector<CoefRow> kMaPhi1{
    {0.1,
     {0.030, 0.031, 0.028, 0.026, 0.030, 0.016, 0.021, 0.019, 0.021, 0.015},
     {0.047, 0.038, 0.032, 0.027, 0.024, 0.039, 0.025, 0.026, 0.013, 0.019}},
    {0.5,
     {0.031, 0.030, 0.032, 0.030, 0.025, 0.028, 0.023, 0.021, 0.024, 0.019},
     {0.034, 0.039, 0.034, 0.036, 0.039, 0.035, 0.020, 0.042, 0.030, 0.022}},
    {1.0,
     {0.031, 0.026, 0.026, 0.030, 0.026, 0.025, 0.029, 0.024, 0.022, 0.022},
     {0.025, 0.043, 0.046, 0.044, 0.034, 0.034, 0.032, 0.035, 0.024, 0.032}},
};

const std::vector<CoefRow> kMaPhi2{
    {0.1,
     {0.004, 0.022, 0.018, 0.023, 0.019, 0.017, 0.022, 0.018, 0.011, 0.016},
     {0.030, 0.022, 0.029, 0.035, 0.028, 0.033, 0.029, 0.021, 0.029, 0.031}},
    {0.5,
     {0.004, 0.010, 0.015, 0.017, 0.017, 0.019, 0.020, 0.022, 0.015, 0.019},
     {0.007, 0.015, 0.029, 0.025, 0.022, 0.034, 0.026, 0.032, 0.028, 0.029}},
    {1.0,
     {0.002, 0.012, 0.016, 0.021, 0.017, 0.018, 0.019, 0.022, 0.013, 0.019},
     {0.020, 0.030, 0.023, 0.030, 0.033, 0.038, 0.033, 0.028, 0.027, 0.016}},
};

const std::vector<CoefRow> kArPhi1{
    {0.5,
     {0.034, 0.037, 0.037, 0.039, 0.035, 0.035, 0.033, 0.035, 0.030, 0.030},
     {0.045, 0.046, 0.037, 0.049, 0.044, 0.043, 0.033, 0.046, 0.034, 0.043}},
    {0.9,
     {0.032, 0.035, 0.037, 0.036, 0.036, 0.039, 0.036, 0.033, 0.036, 0.033},
     {0.031, 0.049, 0.046, 0.039, 0.039, 0.040, 0.037, 0.032, 0.041, 0.039}},
};

const std::vector<CoefRow> kArPhi2{
    {0.5,
     {0.012, 0.021, 0.026, 0.024, 0.028, 0.029, 0.024, 0.026, 0.028, 0.022},
     {0.024, 0.034, 0.034, 0.033, 0.024, 0.033, 0.027, 0.039, 0.029, 0.032}},
    {0.9,
     {0.010, 0.022, 0.026, 0.023, 0.024, 0.026, 0.028, 0.029, 0.024, 0.021},
     {0.031, 0.032, 0.037, 0.039, 0.040, 0.032, 0.030, 0.027, 0.027, 0.019}},
};

const std::vector<CoefRow> kMaPower{
    {0.25,
     {0.06, 0.15, 0.29, 0.46, 0.71, 0.81, 0.85, 0.84, 0.84, 0.84},
     {0.24, 0.94, 0.99, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00}},
    {0.50,
     {0.44, 0.99, 0.99, 0.99, 0.99, 0.99, 0.99, 0.99, 0.98, 0.99},
     {1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00}},
    {0.75,
     {0.93, 0.97, 0.97, 0.97, 0.95, 0.94, 0.93, 0.89, 0.85, 0.82},
     {1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00}},
};

const std::vector<CoefRow> kArPower{
    {0.25,
     {0.11, 0.34, 0.75, 0.86, 0.90, 0.89, 0.90, 0.89, 0.86, 0.83},
     {0.65, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00}},
    {0.50,
     {0.94, 0.99, 0.99, 0.99, 0.99, 0.98, 0.99, 0.98, 0.98, 0.97},
     {1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00}},
    {0.75,
     {0.94, 0.97, 0.98, 0.96, 0.95, 0.92, 0.91, 0.87, 0.83, 0.78},
     {1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00}},
};

const std::vector<CoefRow> kMaMse{
    {0.25,
     {0.090, 0.056, 0.036, 0.034, 0.024, 0.024, 0.019, 0.017, 0.018, 0.016},
     {0.047, 0.025, 0.016, 0.010, 0.007, 0.006, 0.005, 0.005, 0.004, 0.004}},
    {0.50,
     {0.019, 0.007, 0.004, 0.003, 0.003, 0.003, 0.002, 0.002, 0.002, 0.002},
     {0.005, 0.002, 0.001, 0.000, 0.000, 0.000, 0.000, 0.000, 0.000, 0.000}},
    {0.75,
     {0.003, 0.001, 0.002, 0.002, 0.003, 0.003, 0.003, 0.005, 0.007, 0.007},
     {0.000, 0.000, 0.000, 0.000, 0.000, 0.000, 0.000, 0.000, 0.000, 0.000}},
};

// Innovations of the dependent null designs: t with alpha = nu = 2.
constexpr double kNullNu = 2.0;
constexpr double kPreNu = 3.0;
constexpr double kPostNu = 1.0;
constexpr double kChangeCoef = 0.5;

SimulationSpec base_spec(const Block& block, PhiKind phi, std::size_t replications)
{
    SimulationSpec s;
    s.n = block.n;
    s.k_grid = *block.grid;
    s.phi = phi;
    s.replications = replications;
    return s;
}

std::string number(double x)
{
    std::ostringstream out;
    out << x;
    return out.str();
}

class Builder {
public:
    Builder(int id, std::string title, TableMetric metric, std::size_t reps, std::uint64_t seed,
            bool large)
        : reps_(reps), seed_(seed), large_(large)
    {
        table_.id = id;
        table_.title = std::move(title);
        table_.metric = metric;
    }

    // Adds the n = 1000 row and, if requested, the n = 3000 row.
    template <class Make>
    void add(const std::string& label, const Values& small, const Values& large, Make make)
    {
        push(label, kSmall, small, make);
        if (large_) push(label, kLarge, large, make);
    }

    ReferenceTable finish()
    {
        // Rows ordered n = 1000 block first, as published.
        std::stable_sort(table_.rows.begin(), table_.rows.end(),
                         [](const ReferenceRow& a, const ReferenceRow& b) { return a.spec.n < b.spec.n; });
        for (std::size_t r = 0; r < table_.rows.size(); ++r) table_.rows[r].spec.seed = split_seed(seed_, r);
        return std::move(table_);
    }

private:
    template <class Make>
    void push(const std::string& label, const Block& block, const Values& published, Make make)
    {
        ReferenceRow row;
        row.label = label;
        row.spec = make(block);
        row.spec.replications = reps_;
        row.published = published;
        table_.rows.push_back(std::move(row));
    }

    ReferenceTable table_;
    std::size_t reps_;
    std::uint64_t seed_;
    bool large_;
};

ReferenceTable iid_table(int id, const std::vector<BurrRow>& rows, PhiKind phi, std::size_t reps,
                         std::uint64_t seed, bool large)
{
    Builder b(id, std::string("Empirical sizes of T_n(") + (phi == PhiKind::Indicator ? "phi1" : "phi2") +
                      ") in the i.i.d. case",
              TableMetric::RejectionRate, reps, seed, large);
    for (const auto& row : rows) {
        b.add("alpha=" + number(row.alpha) + " gamma=" + number(row.gamma), row.small, row.large,
              [&](const Block& block) {
                  SimulationSpec s = base_spec(block, phi, reps);
                  s.model.kind = ModelKind::Iid;
                  s.model.innovation = BurrParams{row.alpha / -row.gamma, 1.0, row.gamma};
                  s.adjust = AdjustMode::Iid;
                  return s;
              });
    }
    return b.finish();
}

ReferenceTable ma_null_table(int id, const std::vector<CoefRow>& rows, PhiKind phi, std::size_t reps,
                             std::uint64_t seed, bool large)
{
    Builder b(id, std::string("Empirical sizes of T_n(") + (phi == PhiKind::Indicator ? "phi1" : "phi2") +
                      ") for the MA(1) model",
              TableMetric::RejectionRate, reps, seed, large);
    for (const auto& row : rows) {
        b.add("alpha=2 theta=" + number(row.coef), row.small, row.large, [&](const Block& block) {
            SimulationSpec s = base_spec(block, phi, reps);
            s.model.kind = ModelKind::Ma1;
            s.model.theta = row.coef;
            s.model.innovation = TDistParams{kNullNu};
            s.adjust = AdjustMode::Lag1Dependent;
            return s;
        });
    }
    return b.finish();
}

ReferenceTable ar_null_table(int id, const std::vector<CoefRow>& rows, PhiKind phi, std::size_t reps,
                             std::uint64_t seed, bool large)
{
    Builder b(id, std::string("Empirical sizes of T*_n(") + (phi == PhiKind::Indicator ? "phi1" : "phi2") +
                      ") for the AR(1) model",
              TableMetric::RejectionRate, reps, seed, large);
    for (const auto& row : rows) {
        b.add("alpha=2 phi=" + number(row.coef), row.small, row.large, [&](const Block& block) {
            SimulationSpec s = base_spec(block, phi, reps);
            s.model.kind = ModelKind::Ar1;
            s.model.phi = row.coef;
            s.model.innovation = TDistParams{kNullNu};
            s.test = ArResidualTest{1, ArMethod::Ols};
            return s;
        });
    }
    return b.finish();
}

ReferenceTable change_table(int id, std::string title, TableMetric metric, ModelKind kind,
                            const std::vector<CoefRow>& rows, std::size_t reps, std::uint64_t seed,
                            bool large)
{
    Builder b(id, std::move(title), metric, reps, seed, large);
    for (const auto& row : rows) {
        b.add("tau=" + number(row.coef), row.small, row.large, [&](const Block& block) {
            SimulationSpec s = base_spec(block, PhiKind::Indicator, reps);
            s.model.kind = kind;
            s.model.innovation = TDistParams{kPreNu};
            s.change = ChangeSpec{row.coef, TDistParams{kPreNu}, TDistParams{kPostNu}};
            if (kind == ModelKind::Ma1) {
                s.model.theta = kChangeCoef;
                s.adjust = AdjustMode::Lag1Dependent;
            } else {
                s.model.phi = kChangeCoef;
                s.test = ArResidualTest{1, ArMethod::Ols};
            }
            return s;
        });
    }
    return b.finish();
}

} // namespace

std::vector<int> reference_table_ids() { return {2, 3, 4, 5, 6, 7, 8, 9, 10}; }

ReferenceTable reference_table(int id, std::size_t replications, std::uint64_t seed, bool include_large)
{
    switch (id) {
    case 2: return iid_table(2, kIidPhi1, PhiKind::Indicator, replications, seed, include_large);
    case 3: return iid_table(3, kIidPhi2, PhiKind::LogExcess, replications, seed, include_large);
    case 4: return ma_null_table(4, kMaPhi1, PhiKind::Indicator, replications, seed, include_large);
    case 5: return ma_null_table(5, kMaPhi2, PhiKind::LogExcess, replications, seed, include_large);
    case 6: return ar_null_table(6, kArPhi1, PhiKind::Indicator, replications, seed, include_large);
    case 7: return ar_null_table(7, kArPhi2, PhiKind::LogExcess, replications, seed, include_large);
    case 8:
        return change_table(8, "Empirical powers of T_n(phi1) for the MA(1) model", TableMetric::RejectionRate,
                            ModelKind::Ma1, kMaPower, replications, seed, include_large);
    case 9:
        return change_table(9, "Empirical powers of T*_n(phi1) for the AR(1) model", TableMetric::RejectionRate,
                            ModelKind::Ar1, kArPower, replications, seed, include_large);
    case 10:
        return change_table(10, "MSE of tau_hat of T_n(phi1) for the MA(1) model", TableMetric::MseTau,
                            ModelKind::Ma1, kMaMse, replications, seed, include_large);
    default: throw ParameterError("unknown table id " + std::to_string(id) + " (expected 2..10)");
    }
}

} // namespace tailcusum
