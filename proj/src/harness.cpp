#include "poifd/harness.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "poifd/csv.hpp"
#include "poifd/parallel.hpp"
#include "poifd/rng.hpp"
#include "poifd/svg.hpp"

namespace poifd {

namespace {

double trend(double t) { return 4.0 * t; }

GpModel model_for(const ScenarioConfig& config) {
    GpModel model;
    model.grid = Grid::uniform(config.len);
    model.theta = config.effective_theta();
    model.trend = trend;
    return model;
}

Replication replicate(const ScenarioConfig& config, const GpSampler& sampler, std::size_t scenario_index,
                      std::size_t replication) {
    const std::uint64_t rep_seed = derive_seed(config.seed, {scenario_index, replication});
    const Grid& grid = sampler.model().grid;

    auto paths = sampler.sample(config.n_curves, derive_seed(rep_seed, {1}));
    const ContaminationSpec spec{config.contamination, config.q, config.magnitude};
    auto contaminated = contaminate(std::move(paths), grid, spec, derive_seed(rep_seed, {2}));
    FunctionalSample sample = observe(grid, contaminated.paths, config.observation, derive_seed(rep_seed, {3}));

    DepthResult depths = poifd_all(sample, config.depth_options(), 1);
    TrimSpec trim = select_trim(depths.depth, config.alpha);
    LocationEstimate mean = ordinary_mean(sample);
    LocationEstimate trimmed = trimmed_mean(sample, trim);
    const ReplicationError mean_error = integrated_error(mean, grid, trend);
    const ReplicationError trimmed_error = integrated_error(trimmed, grid, trend);

    return Replication{std::move(sample), std::move(contaminated.draws), std::move(depths), std::move(trim),
                       std::move(mean), std::move(trimmed), mean_error, trimmed_error};
}

template <typename Fn>
auto with_context(const ScenarioConfig& config, Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        throw std::runtime_error("scenario [" + config.describe() + "]: " + e.what());
    }
}

}  // namespace

DepthOptions ScenarioConfig::depth_options() const {
    return DepthOptions{depth, PhiFunction::parse(phi), weights};
}

void ScenarioConfig::validate() const {
    if (len < 2) throw std::invalid_argument("len must be at least 2");
    if (n_curves < 1) throw std::invalid_argument("number of curves must be positive");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("q must lie in [0, 1]");
    if (!(magnitude >= 0.0) || !std::isfinite(magnitude)) throw std::invalid_argument("M must be finite and >= 0");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");
    if (!(observation.p_obs > 0.0 && observation.p_obs <= 1.0)) {
        throw std::invalid_argument("observation proportion must lie in (0, 1]");
    }
    if (observation.kind == ObservationKind::RandomIntervals && observation.intervals == 0) {
        throw std::invalid_argument("interval count must be positive");
    }
    if (!(effective_theta() > 0.0) || !std::isfinite(effective_theta())) {
        throw std::invalid_argument("theta must be positive and finite");
    }
    if (replications < 1) throw std::invalid_argument("N must be at least 1");
    PhiFunction::parse(phi);
}

std::string ScenarioConfig::describe() const {
    std::ostringstream out;
    out << "len=" << len << " p=" << n_curves << " q=" << q << " M=" << magnitude << " alpha=" << alpha
        << " contamination=" << to_string(contamination) << " observe=" << to_string(observation.kind)
        << " p_obs=" << observation.p_obs << " depth=" << to_string(depth) << " phi=" << phi
        << " theta=" << effective_theta() << " N=" << replications << " seed=" << seed;
    return out.str();
}

ScenarioConfig scenario_from_json(const nlohmann::json& object, const ScenarioConfig& base) {
    if (!object.is_object()) {
        throw std::invalid_argument("scenario entry must be a JSON object");
    }
    ScenarioConfig c = base;
    for (const auto& [key, value] : object.items()) {
        if (key == "len") c.len = value.get<std::size_t>();
        else if (key == "p" || key == "n" || key == "n_curves") c.n_curves = value.get<std::size_t>();
        else if (key == "q") c.q = value.get<double>();
        else if (key == "M" || key == "magnitude") c.magnitude = value.get<double>();
        else if (key == "alpha") c.alpha = value.get<double>();
        else if (key == "contamination") c.contamination = parse_contamination_kind(value.get<std::string>());
        else if (key == "observe" || key == "observation") c.observation.kind = parse_observation_kind(value.get<std::string>());
        else if (key == "m") c.observation.intervals = value.get<std::size_t>();
        else if (key == "p_obs") c.observation.p_obs = value.get<double>();
        else if (key == "depth") c.depth = parse_depth_kind(value.get<std::string>());
        else if (key == "phi") c.phi = value.get<std::string>();
        else if (key == "weights") c.weights = parse_weight_mode(value.get<std::string>());
        else if (key == "theta") {
            if (value.is_null()) c.theta.reset();
            else c.theta = value.get<double>();
        }
        else if (key == "N" || key == "replications") c.replications = value.get<std::size_t>();
        else if (key == "seed") c.seed = value.get<std::uint64_t>();
        else throw std::invalid_argument("unknown scenario key '" + key + "'");
    }
    c.validate();
    return c;
}

std::vector<ScenarioConfig> scenarios_from_json(const nlohmann::json& document, const ScenarioConfig& base) {
    std::vector<ScenarioConfig> out;
    if (document.is_array()) {
        for (const auto& entry : document) out.push_back(scenario_from_json(entry, base));
    } else if (document.is_object() && document.contains("scenarios")) {
        ScenarioConfig defaults = base;
        if (document.contains("defaults")) defaults = scenario_from_json(document.at("defaults"), base);
        for (const auto& entry : document.at("scenarios")) out.push_back(scenario_from_json(entry, defaults));
    } else {
        out.push_back(scenario_from_json(document, base));
    }
    return out;
}

Replication run_replication(const ScenarioConfig& config, std::size_t scenario_index, std::size_t replication) {
    return with_context(config, [&] {
        config.validate();
        const GpSampler sampler(model_for(config));
        return replicate(config, sampler, scenario_index, replication);
    });
}

ScenarioResult run_scenario(const ScenarioConfig& config, std::size_t scenario_index, unsigned threads) {
    return with_context(config, [&] {
        config.validate();
        const GpSampler sampler(model_for(config));
        ScenarioResult result;
        result.config = config;
        result.plain_errors.resize(config.replications);
        result.trimmed_errors.resize(config.replications);
        parallel_for(
            config.replications,
            [&](std::size_t r) {
                const Replication rep = replicate(config, sampler, scenario_index, r);
                result.plain_errors[r] = rep.mean_error;
                result.trimmed_errors[r] = rep.trimmed_error;
            },
            threads);
        result.plain = aggregate(result.plain_errors);
        result.trimmed = aggregate(result.trimmed_errors);
        return result;
    });
}

std::vector<ScenarioResult> run_scenarios(const std::vector<ScenarioConfig>& configs, unsigned threads) {
    std::vector<ScenarioResult> results(configs.size());
    parallel_for(
        configs.size(), [&](std::size_t k) { results[k] = run_scenario(configs[k], k, 1); }, threads);
    return results;
}

const std::vector<std::string> kTableColumns = {"len", "p",  "q",      "M",  "alpha",   "pollution_type", "observability",
                                                "E",   "E_trim", "sd", "sd_trim", "Med",            "Med_trim"};

TableRow to_table_row(const ScenarioResult& result) {
    const auto& c = result.config;
    TableRow row;
    row.len = static_cast<double>(c.len);
    row.p = static_cast<double>(c.n_curves);
    row.q = c.q;
    row.magnitude = c.magnitude;
    row.alpha = c.alpha;
    row.pollution_type = std::string(table_label(c.contamination));
    row.observability = c.observation.p_obs;
    row.e = result.plain.e_mean;
    row.e_trim = result.trimmed.e_mean;
    row.sd = result.plain.s_dev;
    row.sd_trim = result.trimmed.s_dev;
    row.med = result.plain.m_median;
    row.med_trim = result.trimmed.m_median;
    return row;
}

void write_table_csv(std::ostream& out, const std::vector<ScenarioResult>& results) {
    for (std::size_t k = 0; k < kTableColumns.size(); ++k) {
        out << (k ? "," : "") << kTableColumns[k];
    }
    out << '\n';
    for (const auto& result : results) {
        const TableRow r = to_table_row(result);
        out << format_double(r.len) << ',' << format_double(r.p) << ',' << format_double(r.q) << ','
            << format_double(r.magnitude) << ',' << format_double(r.alpha) << ',' << r.pollution_type << ','
            << format_double(r.observability) << ',' << format_double(r.e) << ',' << format_double(r.e_trim) << ','
            << format_double(r.sd) << ',' << format_double(r.sd_trim) << ',' << format_double(r.med) << ','
            << format_double(r.med_trim) << '\n';
    }
}

std::vector<TableRow> read_table_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || split_csv_line(line) != kTableColumns) {
        throw std::invalid_argument("table CSV header does not match the expected columns");
    }
    std::vector<TableRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != kTableColumns.size()) {
            throw std::invalid_argument("table CSV row has the wrong number of cells");
        }
        TableRow r;
        r.len = parse_double(cells[0]);
        r.p = parse_double(cells[1]);
        r.q = parse_double(cells[2]);
        r.magnitude = parse_double(cells[3]);
        r.alpha = parse_double(cells[4]);
        r.pollution_type = cells[5];
        r.observability = parse_double(cells[6]);
        r.e = parse_double(cells[7]);
        r.e_trim = parse_double(cells[8]);
        r.sd = parse_double(cells[9]);
        r.sd_trim = parse_double(cells[10]);
        r.med = parse_double(cells[11]);
        r.med_trim = parse_double(cells[12]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<ScenarioConfig> table_scenarios(int number, const ScenarioConfig& base) {
    if (number < 1 || number > 4) {
        throw std::invalid_argument("table number must be 1..4");
    }
    const double alpha = (number == 1 || number == 3) ? 0.2 : 0.3;
    const double p_obs = number <= 2 ? 0.5 : 0.9;
    std::vector<ScenarioConfig> out;
    for (std::size_t n : {std::size_t{50}, std::size_t{80}}) {
        for (double magnitude : {25.0, 5.0}) {
            for (auto kind : {ContaminationKind::Symmetric, ContaminationKind::Asymmetric, ContaminationKind::Partial}) {
                ScenarioConfig c = base;
                c.n_curves = n;
                c.magnitude = magnitude;
                c.alpha = alpha;
                c.contamination = kind;
                c.observation.p_obs = p_obs;
                out.push_back(c);
            }
        }
    }
    return out;
}

TableSet reproduce_tables(const std::filesystem::path& out_dir, std::uint64_t seed, const ScenarioConfig& base,
                          unsigned threads) {
    ScenarioConfig seeded = base;
    seeded.seed = seed;
    std::vector<ScenarioConfig> all;
    for (int t = 1; t <= 4; ++t) {
        auto rows = table_scenarios(t, seeded);
        all.insert(all.end(), rows.begin(), rows.end());
    }
    const auto results = run_scenarios(all, threads);

    std::filesystem::create_directories(out_dir);
    TableSet set;
    for (int t = 0; t < 4; ++t) {
        std::vector<ScenarioResult> table(results.begin() + t * 12, results.begin() + (t + 1) * 12);
        const auto path = out_dir / ("table" + std::to_string(t + 1) + ".csv");
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot write '" + path.string() + "'");
        }
        write_table_csv(out, table);
        set.tables.push_back(std::move(table));
        set.files.push_back(path);
    }
    return set;
}

PlotData plot_data(const ScenarioConfig& config, const std::filesystem::path& out_dir, bool svg,
                   std::size_t replication) {
    PlotData data{run_replication(config, 0, replication), {}, {}, {}};
    const auto& sample = data.replication.sample;
    const auto& kept = data.replication.trim.kept;
    data.coverage.assign(sample.coverage().begin(), sample.coverage().end());
    data.trimmed_coverage.resize(sample.point_count());
    for (std::size_t l = 0; l < sample.point_count(); ++l) {
        std::size_t hits = 0;
        for (std::size_t i : kept) {
            hits += data.replication.sample.curve(i).observed(l) ? 1 : 0;
        }
        data.trimmed_coverage[l] = static_cast<double>(hits) / static_cast<double>(kept.size());
    }

    std::filesystem::create_directories(out_dir);
    auto open = [&](const std::string& name) {
        const auto path = out_dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot write '" + path.string() + "'");
        }
        data.files.push_back(path);
        return out;
    };

    const auto& s = data.replication.sample;
    {
        auto out = open("curves.csv");
        write_curves_csv(out, s);
    }
    {
        auto out = open("trimmed.csv");
        write_curves_csv(out, s, kept);
    }
    {
        auto out = open("coverage.csv");
        out << "t,q_n,q_n_trimmed\n";
        for (std::size_t l = 0; l < s.point_count(); ++l) {
            out << format_double(s.grid()[l]) << ',' << format_double(data.coverage[l]) << ','
                << format_double(data.trimmed_coverage[l]) << '\n';
        }
    }
    {
        auto out = open("depths.csv");
        out << "curve_id,poifd,kept,contaminated,sign,onset\n";
        for (std::size_t i = 0; i < s.size(); ++i) {
            const auto& d = data.replication.draws[i];
            out << "curve_" << (i + 1) << ',' << format_double(data.replication.depths.depth[i]) << ','
                << (data.replication.trim.keeps(i) ? 1 : 0) << ',' << (d.contaminated ? 1 : 0) << ',' << d.sign
                << ',' << format_double(d.onset) << '\n';
        }
    }
    if (svg) {
        std::vector<std::size_t> all(s.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        {
            auto out = open("curves.svg");
            write_curve_panels_svg(out, s, all, data.coverage, "Partially observed functions");
        }
        {
            auto out = open("trimmed.svg");
            write_curve_panels_svg(out, s, kept, data.trimmed_coverage, "After trimming");
        }
    }
    return data;
}

}  // namespace poifd
