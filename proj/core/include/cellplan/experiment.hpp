#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cellplan/planner.hpp"

namespace cellplan {

struct ExperimentConfig {
    std::vector<std::string> datasets;        // map file paths
    std::vector<AlgorithmChoice> algorithms;
    std::vector<double> cell_ranges_m;
    std::int64_t subscribers_per_cell = 0;
    std::vector<std::uint64_t> seeds;
    std::string out_path;
    bool report_timing = false;  // off by default so output is a pure function of config
};

struct ExperimentRow {
    std::string dataset;
    AlgorithmChoice algorithm;
    double cell_range_m = 0.0;
    std::int64_t subs_per_cell = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;           // per-row failure, never aborts the matrix
    std::size_t num_bs = 0;
    double total_cost = 0.0;
    bool feasible = false;       // every cluster feasible
    std::int64_t rounds = 0;
    std::int64_t ms = 0;         // wall time; 0 unless report_timing
};

// JSON config document mirroring ExperimentConfig.
ExperimentConfig parse_experiment_config(const std::string& content);

// Full (dataset x algorithm x cell_range x seed) cross product, rows in that
// deterministic order.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

// dataset,algorithm,method,cell_range_m,subs_per_cell,seed,num_bs,total_cost,feasible,rounds,ms
std::string emit_csv(const std::vector<ExperimentRow>& rows);

}  // namespace cellplan
