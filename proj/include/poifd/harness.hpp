#pragma once

// Monte Carlo scenario runner: simulate -> contaminate -> observe -> depths ->
// ordinary and trimmed means -> integrated errors, repeated N times, plus the
// four result tables and the figure data.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "poifd/core.hpp"
#include "poifd/depth.hpp"
#include "poifd/estimators.hpp"
#include "poifd/metrics.hpp"
#include "poifd/simulation.hpp"

namespace poifd {

struct ScenarioConfig {
    std::size_t len = 200;
    std::size_t n_curves = 50;
    double q = 0.1;
    double magnitude = 25.0;
    double alpha = 0.2;
    ContaminationKind contamination = ContaminationKind::Symmetric;
    ObservationSpec observation{ObservationKind::CenteredInterval, 3, 0.5};
    UnivariateDepthKind depth = UnivariateDepthKind::FraimanMuniz;
    std::string phi = "identity";
    WeightMode weights = WeightMode::PointMass;
    std::optional<double> theta;  // covariance rate; defaults to n_curves
    std::size_t replications = 10;
    std::uint64_t seed = 1;

    double effective_theta() const { return theta.value_or(static_cast<double>(n_curves)); }
    DepthOptions depth_options() const;
    void validate() const;
    std::string describe() const;
};

/// Reads fields present in `object` over `base`. Unknown keys are rejected.
ScenarioConfig scenario_from_json(const nlohmann::json& object, const ScenarioConfig& base = {});
/// Accepts a single object, an array of objects, or {"defaults": {...},
/// "scenarios": [...]}.
std::vector<ScenarioConfig> scenarios_from_json(const nlohmann::json& document, const ScenarioConfig& base = {});

/// Everything produced by one replication of a scenario.
struct Replication {
    FunctionalSample sample;
    std::vector<ContaminationDraw> draws;
    DepthResult depths;
    TrimSpec trim;
    LocationEstimate mean;
    LocationEstimate trimmed;
    ReplicationError mean_error;
    ReplicationError trimmed_error;
};

/// Seeds are derived from (config.seed, scenario_index, replication), so the
/// result does not depend on scheduling.
Replication run_replication(const ScenarioConfig& config, std::size_t scenario_index, std::size_t replication);

struct ScenarioResult {
    ScenarioConfig config;
    ScenarioMetrics plain;
    ScenarioMetrics trimmed;
    std::vector<ReplicationError> plain_errors;
    std::vector<ReplicationError> trimmed_errors;
};

ScenarioResult run_scenario(const ScenarioConfig& config, std::size_t scenario_index = 0, unsigned threads = 0);

/// Runs many scenarios in parallel; scenario k uses scenario index k.
std::vector<ScenarioResult> run_scenarios(const std::vector<ScenarioConfig>& configs, unsigned threads = 0);

/// One line of a result table.
struct TableRow {
    double len = 0;
    double p = 0;
    double q = 0;
    double magnitude = 0;
    double alpha = 0;
    std::string pollution_type;
    double observability = 0;
    double e = 0, e_trim = 0;
    double sd = 0, sd_trim = 0;
    double med = 0, med_trim = 0;

    bool operator==(const TableRow&) const = default;
};

TableRow to_table_row(const ScenarioResult& result);

extern const std::vector<std::string> kTableColumns;

void write_table_csv(std::ostream& out, const std::vector<ScenarioResult>& results);
std::vector<TableRow> read_table_csv(std::istream& in);

/// The 12 scenarios of table `number` (1..4): alpha 0.2/0.3 crossed with
/// observation proportion 0.5/0.9, rows ordered by n, then M (25 before 5),
/// then contamination kind.
std::vector<ScenarioConfig> table_scenarios(int number, const ScenarioConfig& base = {});

struct TableSet {
    std::vector<std::vector<ScenarioResult>> tables;  // 4 x 12
    std::vector<std::filesystem::path> files;
};

/// Runs all 48 scenarios and writes table1.csv .. table4.csv to `out_dir`.
TableSet reproduce_tables(const std::filesystem::path& out_dir, std::uint64_t seed, const ScenarioConfig& base = {},
                          unsigned threads = 0);

struct PlotData {
    Replication replication;
    std::vector<double> coverage;          // q_n over all curves
    std::vector<double> trimmed_coverage;  // q_n over the retained curves
    std::vector<std::filesystem::path> files;
};

/// Data behind the figures for one replication: all partial curves, the
/// retained curves after trimming, coverage per grid point and per-curve
/// depths. Optionally also writes two SVG panels.
PlotData plot_data(const ScenarioConfig& config, const std::filesystem::path& out_dir, bool svg = false,
                   std::size_t replication = 0);

}  // namespace poifd
