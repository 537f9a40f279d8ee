#include "cellplan/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace cellplan {

using nlohmann::json;

namespace {

AlgorithmChoice parse_algorithm_entry(const json& j) {
    if (!j.is_object() || !j.contains("algorithm"))
        throw std::invalid_argument("algorithm entry must be an object with 'algorithm'");
    const std::string name = j["algorithm"].get<std::string>();
    if (name == "pam") {
        if (!j.contains("k")) throw std::invalid_argument("pam entry requires 'k'");
        return AlgorithmChoice::pam(j["k"].get<std::size_t>());
    }
    if (name == "mpam") return AlgorithmChoice::mpam();
    if (name == "cwn-pam") {
        const int method = j.value("method", 1);
        if (method != 1 && method != 2)
            throw std::invalid_argument("cwn-pam method must be 1 or 2");
        return AlgorithmChoice::cwnpam(method == 1 ? AdjustMethod::MethodI
                                                   : AdjustMethod::MethodII);
    }
    throw std::invalid_argument("unknown algorithm: " + name);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& content) {
    json doc;
    try {
        doc = json::parse(content);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed config JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    for (const auto& d : doc.at("datasets")) cfg.datasets.push_back(d.get<std::string>());
    for (const auto& a : doc.at("algorithms")) cfg.algorithms.push_back(parse_algorithm_entry(a));
    for (const auto& r : doc.at("cell_ranges_m")) cfg.cell_ranges_m.push_back(r.get<double>());
    cfg.subscribers_per_cell = doc.at("subs_per_cell").get<std::int64_t>();
    for (const auto& s : doc.at("seeds")) cfg.seeds.push_back(s.get<std::uint64_t>());
    cfg.out_path = doc.value("out", "");
    cfg.report_timing = doc.value("timing", false);
    if (cfg.datasets.empty() || cfg.algorithms.empty() || cfg.cell_ranges_m.empty() ||
        cfg.seeds.empty()) {
        throw std::invalid_argument("config lists must be non-empty");
    }
    return cfg;
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
    std::vector<ExperimentRow> rows;
    for (const auto& dataset : config.datasets) {
        PlanningMap map = load_map_file(dataset);  // bad dataset paths abort up front
        for (const auto& algorithm : config.algorithms) {
            for (double range : config.cell_ranges_m) {
                for (std::uint64_t seed : config.seeds) {
                    ExperimentRow row;
                    row.dataset = dataset;
                    row.algorithm = algorithm;
                    row.cell_range_m = range;
                    row.subs_per_cell = config.subscribers_per_cell;
                    row.seed = seed;
                    const CellParams params{range, config.subscribers_per_cell};
                    const auto t0 = std::chrono::steady_clock::now();
                    try {
                        const Plan p = plan(map, params, algorithm, seed);
                        row.ok = true;
                        row.num_bs = p.num_base_stations;
                        row.total_cost = p.total_cost;
                        row.rounds = p.adjustment_rounds;
                        row.feasible = true;
                        for (const auto& c : p.clusters) {
                            if (!c.feasibility.feasible()) row.feasible = false;
                        }
                    } catch (const std::exception& e) {
                        row.ok = false;
                        row.error = e.what();
                    }
                    if (config.report_timing) {
                        row.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                     std::chrono::steady_clock::now() - t0)
                                     .count();
                    }
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    return rows;
}

std::string emit_csv(const std::vector<ExperimentRow>& rows) {
    std::string out =
        "dataset,algorithm,method,cell_range_m,subs_per_cell,seed,num_bs,total_cost,"
        "feasible,rounds,ms\n";
    for (const auto& r : rows) {
        out += r.dataset;
        out += ',';
        out += algorithm_name(r.algorithm.algorithm);
        out += ',';
        if (r.algorithm.algorithm == Algorithm::CWNPAM) {
            out += r.algorithm.method == AdjustMethod::MethodI ? "1" : "2";
        }
        out += ',';
        out += format_double(r.cell_range_m);
        out += ',';
        out += std::to_string(r.subs_per_cell);
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        out += std::to_string(r.num_bs);
        out += ',';
        out += format_double(r.total_cost);
        out += ',';
        out += r.ok && r.feasible ? "true" : "false";
        out += ',';
        out += std::to_string(r.rounds);
        out += ',';
        out += std::to_string(r.ms);
        out += '\n';
    }
    return out;
}

}  // namespace cellplan
