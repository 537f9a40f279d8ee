#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cellplan/experiment.hpp"
#include "cellplan/planner.hpp"
#include "cellplan/synthetic.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInternal = 3;

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    out << content;
}

cellplan::AlgorithmChoice make_choice(const std::string& algorithm, int method,
                                      std::size_t k) {
    if (algorithm == "pam") {
        if (k == 0) throw CLI::ValidationError("--k is required for pam");
        return cellplan::AlgorithmChoice::pam(k);
    }
    if (algorithm == "mpam") return cellplan::AlgorithmChoice::mpam();
    if (algorithm == "cwn-pam") {
        return cellplan::AlgorithmChoice::cwnpam(method == 2
                                                     ? cellplan::AdjustMethod::MethodII
                                                     : cellplan::AdjustMethod::MethodI);
    }
    throw CLI::ValidationError("unknown algorithm: " + algorithm);
}

nlohmann::json row_to_json(const cellplan::ExperimentRow& r) {
    nlohmann::json j = nlohmann::json::object();
    j["dataset"] = r.dataset;
    j["algorithm"] = cellplan::algorithm_name(r.algorithm.algorithm);
    if (r.algorithm.algorithm == cellplan::Algorithm::CWNPAM) {
        j["method"] = r.algorithm.method == cellplan::AdjustMethod::MethodI ? 1 : 2;
    }
    j["cell_range_m"] = r.cell_range_m;
    j["subs_per_cell"] = r.subs_per_cell;
    j["seed"] = r.seed;
    j["ok"] = r.ok;
    if (!r.ok) j["error"] = r.error;
    j["num_bs"] = r.num_bs;
    j["total_cost"] = r.total_cost;
    j["feasible"] = r.feasible;
    j["rounds"] = r.rounds;
    j["ms"] = r.ms;
    return j;
}

// Flags which adjustment method needed fewer base stations, per
// (dataset, cell_range, seed) pair where both methods completed.
void report_method_comparison(const std::vector<cellplan::ExperimentRow>& rows) {
    std::map<std::tuple<std::string, double, std::uint64_t>, std::pair<long, long>> counts;
    for (const auto& r : rows) {
        if (!r.ok || r.algorithm.algorithm != cellplan::Algorithm::CWNPAM) continue;
        auto& entry = counts[{r.dataset, r.cell_range_m, r.seed}];
        if (r.algorithm.method == cellplan::AdjustMethod::MethodI)
            entry.first = static_cast<long>(r.num_bs);
        else
            entry.second = static_cast<long>(r.num_bs);
    }
    for (const auto& [key, bs] : counts) {
        if (bs.first == 0 || bs.second == 0) continue;
        const char* fewer = bs.first < bs.second ? "I" : bs.second < bs.first ? "II" : "tie";
        std::cerr << "method-comparison dataset=" << std::get<0>(key)
                  << " cell_range_m=" << std::get<1>(key) << " seed=" << std::get<2>(key)
                  << " method_I_bs=" << bs.first << " method_II_bs=" << bs.second
                  << " fewer=" << fewer << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cellplan: base-station placement by load-weighted k-medoids clustering"};
    app.require_subcommand(1);

    // plan
    std::string plan_map_path, plan_algorithm = "cwn-pam", plan_out;
    int plan_method = 1;
    std::size_t plan_k = 0;
    double plan_cell_range = 0.0;
    std::int64_t plan_subs_per_cell = 0;
    std::uint64_t plan_seed = 1;
    auto* plan_cmd = app.add_subcommand("plan", "plan base stations for one map");
    plan_cmd->add_option("--map", plan_map_path, "map JSON file")->required();
    plan_cmd->add_option("--algorithm", plan_algorithm, "pam | mpam | cwn-pam")
        ->check(CLI::IsMember({"pam", "mpam", "cwn-pam"}));
    plan_cmd->add_option("--method", plan_method, "adjustment method (cwn-pam)")
        ->check(CLI::IsMember({1, 2}));
    plan_cmd->add_option("--k", plan_k, "cluster count (pam only)");
    plan_cmd->add_option("--cell-range-m", plan_cell_range, "cell radius in meters")
        ->required();
    plan_cmd->add_option("--subs-per-cell", plan_subs_per_cell, "subscribers per cell")
        ->required();
    plan_cmd->add_option("--seed", plan_seed, "RNG seed");
    plan_cmd->add_option("--out", plan_out, "output path (default stdout)");

    // generate
    std::size_t gen_nodes = 0, gen_hotspots = 0;
    std::int64_t gen_subs = 0;
    double gen_area = 0.0, gen_share = 0.6;
    std::string gen_density = "hom", gen_out;
    std::uint64_t gen_seed = 1;
    auto* gen_cmd = app.add_subcommand("generate", "generate a synthetic map");
    gen_cmd->add_option("--nodes", gen_nodes, "node count")->required();
    gen_cmd->add_option("--subs", gen_subs, "total subscribers")->required();
    gen_cmd->add_option("--area-m2", gen_area, "planning area in m^2")->required();
    gen_cmd->add_option("--density", gen_density, "hom | het")
        ->check(CLI::IsMember({"hom", "het"}));
    gen_cmd->add_option("--hotspot-count", gen_hotspots,
                        "hotspot node count (het; default 10% of nodes)");
    gen_cmd->add_option("--hotspot-share", gen_share, "load share on hotspots (het)");
    gen_cmd->add_option("--seed", gen_seed, "RNG seed");
    gen_cmd->add_option("--out", gen_out, "output path (default stdout)");

    // compare
    std::string cmp_config, cmp_out, cmp_format = "csv";
    bool cmp_timing = false;
    auto* cmp_cmd = app.add_subcommand("compare", "run the algorithm comparison matrix");
    cmp_cmd->add_option("--config", cmp_config, "experiment config JSON")->required();
    cmp_cmd->add_option("--out", cmp_out, "output path (overrides config)");
    cmp_cmd->add_option("--format", cmp_format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmp_cmd->add_flag("--timing", cmp_timing,
                      "measure wall time per row (makes output non-reproducible)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (plan_cmd->parsed()) {
            const auto map = cellplan::load_map_file(plan_map_path);
            const cellplan::CellParams params{plan_cell_range, plan_subs_per_cell};
            const auto choice = make_choice(plan_algorithm, plan_method, plan_k);
            const auto result = cellplan::plan(map, params, choice, plan_seed);
            write_output(plan_out, cellplan::serialize_plan(result) + "\n");
        } else if (gen_cmd->parsed()) {
            cellplan::SyntheticSpec spec;
            spec.node_count = gen_nodes;
            spec.target_total_subscribers = gen_subs;
            spec.target_area_m2 = gen_area;
            spec.seed = gen_seed;
            if (gen_density == "het") {
                spec.density_mode = cellplan::DensityMode::Heterogeneous;
                spec.hotspot_count =
                    gen_hotspots > 0 ? gen_hotspots : std::max<std::size_t>(1, gen_nodes / 10);
                spec.hotspot_share = gen_share;
            }
            const auto map = cellplan::generate_map(spec);
            write_output(gen_out, cellplan::emit_map(map) + "\n");
        } else if (cmp_cmd->parsed()) {
            std::ifstream in(cmp_config, std::ios::binary);
            if (!in) throw std::invalid_argument("cannot open config: " + cmp_config);
            std::ostringstream buf;
            buf << in.rdbuf();
            auto config = cellplan::parse_experiment_config(buf.str());
            if (cmp_timing) config.report_timing = true;
            if (!cmp_out.empty()) config.out_path = cmp_out;
            const auto rows = cellplan::run_experiment(config);
            if (cmp_format == "csv") {
                write_output(config.out_path, cellplan::emit_csv(rows));
            } else {
                nlohmann::json arr = nlohmann::json::array();
                for (const auto& r : rows) arr.push_back(row_to_json(r));
                write_output(config.out_path, arr.dump() + "\n");
            }
            report_method_comparison(rows);
        }
    } catch (const cellplan::InfeasibleCapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const cellplan::MapFormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}
