// sensel: command-line harness for the sensor-selection experiments.
//
//   sensel generate   --count N --seed S --out catalog.jsonl
//   sensel rank       --catalog FILE --algorithm TOPSIS --criteria battery,price
//   sensel fronts     --catalog FILE --criteria battery,price --out fronts.tsv
//   sensel verify     --catalog FILE | --count N --seed S
//   sensel experiment [--plan plan.json] --out results.csv [--summary summary.csv]
//   sensel summarize  --results results.csv --out summary.csv

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "sensel/errors.hpp"
#include "sensel/experiment.hpp"
#include "sensel/mcda.hpp"
#include "sensel/pareto.hpp"
#include "sensel/sensor_catalog.hpp"

namespace {

using namespace sensel;

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(fmt::format("cannot open '{}' for writing", path));
    }
    return out;
}

void apply_range_override(CatalogSpec& spec, const std::string& text) {
    // field=low:high
    const auto eq = text.find('=');
    const auto colon = text.find(':', eq == std::string::npos ? 0 : eq);
    if (eq == std::string::npos || colon == std::string::npos) {
        throw ValidationError(fmt::format("range '{}' is not field=low:high", text));
    }
    const auto field = parse_field(text.substr(0, eq));
    if (!field) {
        throw ValidationError(fmt::format("unknown field in range '{}'", text));
    }
    try {
        spec.range(*field) = {std::stod(text.substr(eq + 1, colon - eq - 1)),
                              std::stod(text.substr(colon + 1))};
    } catch (const std::logic_error&) {
        throw ValidationError(fmt::format("range '{}' has a non-numeric bound", text));
    }
}

struct CatalogSource {
    std::string path;
    std::size_t count = 200;
    std::uint64_t seed = 2016;

    std::vector<SensorDescription> load() const {
        if (!path.empty()) {
            return load_catalog(path);
        }
        CatalogSpec spec;
        spec.count = count;
        spec.seed = seed;
        return generate_catalog(spec);
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sensor search and selection: MCDA ranking scored against Pareto fronts"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "Write a synthetic sensor catalog");
    CatalogSpec gen_spec;
    std::string gen_out;
    std::vector<std::string> gen_ranges;
    generate->add_option("--count", gen_spec.count, "Number of sensors")->capture_default_str();
    generate->add_option("--seed", gen_spec.seed, "Generator seed")->capture_default_str();
    generate->add_option("--range", gen_ranges, "Override a field range: field=low:high");
    generate->add_option("--out", gen_out, "Catalog file (JSON lines)")->required();

    // rank
    auto* rank_cmd = app.add_subcommand("rank", "Rank a catalog under fixed weights");
    CatalogSource rank_src;
    std::string rank_algo = "TOPSIS";
    std::string rank_criteria = "battery,price";
    std::string rank_weights;
    double rank_v = 0.5;
    std::size_t rank_top = 0;
    std::string rank_out;
    rank_cmd->add_option("--catalog", rank_src.path, "Catalog file")->required();
    rank_cmd->add_option("--algorithm", rank_algo, "SAW, TOPSIS or VIKOR")->capture_default_str();
    rank_cmd->add_option("--criteria", rank_criteria, "Comma-separated criteria")
        ->capture_default_str();
    rank_cmd->add_option("--weights", rank_weights, "Comma-separated weights (default equal)");
    rank_cmd->add_option("--vikor-v", rank_v, "VIKOR group-utility weight")->capture_default_str();
    rank_cmd->add_option("--top", rank_top, "Only emit the first k (0 = all)");
    rank_cmd->add_option("--out", rank_out, "Output CSV (default stdout)");

    // fronts
    auto* fronts_cmd = app.add_subcommand("fronts", "Stratify a catalog into Pareto fronts");
    CatalogSource fronts_src;
    std::string fronts_criteria = "battery,price";
    std::string fronts_out;
    fronts_cmd->add_option("--catalog", fronts_src.path, "Catalog file")->required();
    fronts_cmd->add_option("--criteria", fronts_criteria, "Comma-separated criteria")
        ->capture_default_str();
    fronts_cmd->add_option("--out", fronts_out, "Two-column TSV (id, front_index)")->required();

    // verify
    auto* verify_cmd =
        app.add_subcommand("verify", "Check fast sorting against the brute-force oracle");
    CatalogSource verify_src;
    std::string verify_criteria;
    std::size_t verify_cap = kDefaultOracleCap;
    verify_cmd->add_option("--catalog", verify_src.path, "Catalog file (else generated)");
    verify_cmd->add_option("--count", verify_src.count, "Generated catalog size")
        ->capture_default_str();
    verify_cmd->add_option("--seed", verify_src.seed, "Generated catalog seed")
        ->capture_default_str();
    verify_cmd->add_option("--criteria", verify_criteria,
                           "Comma-separated criteria (default: every prefix of length 2..6)");
    verify_cmd->add_option("--cap", verify_cap, "Oracle size cap")->capture_default_str();

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "Run a factorial experiment plan");
    std::string exp_plan;
    std::string exp_out;
    std::string exp_summary;
    std::optional<std::uint64_t> exp_seed;
    std::optional<std::uint64_t> exp_catalog_seed;
    std::optional<std::size_t> exp_reps;
    std::optional<std::size_t> exp_count;
    std::string exp_catalog;
    std::optional<std::size_t> exp_front_cap;
    bool exp_suppress = false;
    unsigned exp_threads = 0;
    bool exp_quiet = false;
    exp_cmd->add_option("--plan", exp_plan, "Plan file (JSON); default plan if omitted");
    exp_cmd->add_option("--out", exp_out, "Results CSV")->required();
    exp_cmd->add_option("--summary", exp_summary, "Also write a boxplot summary CSV");
    exp_cmd->add_option("--seed", exp_seed, "Override master_seed");
    exp_cmd->add_option("--catalog-seed", exp_catalog_seed, "Override the generated catalog seed");
    exp_cmd->add_option("--replications", exp_reps, "Override replications");
    exp_cmd->add_option("--count", exp_count, "Override the generated catalog size");
    exp_cmd->add_option("--catalog", exp_catalog, "Use a catalog file instead of generating");
    exp_cmd->add_option("--front-cap", exp_front_cap, "Summary: drop fronts above this index");
    exp_cmd->add_flag("--suppress-outliers", exp_suppress, "Summary: omit outlier columns");
    exp_cmd->add_option("--threads", exp_threads, "Worker threads (0 = all cores)");
    exp_cmd->add_flag("--quiet", exp_quiet, "No progress on stderr");

    // summarize
    auto* sum_cmd = app.add_subcommand("summarize", "Boxplot summary of a results CSV");
    std::string sum_in;
    std::string sum_out;
    std::optional<std::size_t> sum_front_cap;
    bool sum_suppress = false;
    sum_cmd->add_option("--results", sum_in, "Results CSV")->required();
    sum_cmd->add_option("--out", sum_out, "Summary CSV")->required();
    sum_cmd->add_option("--front-cap", sum_front_cap, "Drop fronts above this index");
    sum_cmd->add_flag("--suppress-outliers", sum_suppress, "Omit outlier columns");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*generate) {
            for (const auto& r : gen_ranges) {
                apply_range_override(gen_spec, r);
            }
            const auto sensors = generate_catalog(gen_spec);
            save_catalog(sensors, gen_out);
            std::cerr << fmt::format("wrote {} sensors to {}\n", sensors.size(), gen_out);
        } else if (*rank_cmd) {
            const auto algo = parse_algorithm(rank_algo);
            if (!algo) {
                throw ValidationError(fmt::format("unknown algorithm '{}'", rank_algo));
            }
            const auto sensors = rank_src.load();
            const auto names = split_list(rank_criteria);
            const auto matrix = catalog_to_matrix(sensors, names);
            WeightVector w = matrix.default_weights();
            if (!rank_weights.empty()) {
                std::vector<double> raw;
                for (const auto& item : split_list(rank_weights)) {
                    raw.push_back(std::stod(item));
                }
                w = WeightVector::normalized(std::move(raw));
            }
            const auto ranked = rank(*algo, matrix, w, VikorParams{rank_v});
            const std::size_t k = rank_top == 0 ? ranked.size() : rank_top;
            const auto top = select_top_k_rows(ranked, k);
            std::ofstream file;
            if (!rank_out.empty()) {
                file = open_output(rank_out);
            }
            std::ostream& out = rank_out.empty() ? std::cout : file;
            out << "rank,id,score\n";
            for (std::size_t i = 0; i < top.size(); ++i) {
                out << fmt::format("{},{},{:.12g}\n", i + 1, ranked.id_at(i),
                                   ranked.score_of_row(top[i]));
            }
        } else if (*fronts_cmd) {
            const auto sensors = fronts_src.load();
            const auto matrix = catalog_to_matrix(sensors, split_list(fronts_criteria));
            const auto strat = pareto_fronts(matrix);
            auto out = open_output(fronts_out);
            write_fronts_table(strat, out);
            std::cerr << fmt::format("{} fronts, first front has {} sensors\n",
                                     strat.num_fronts(), strat.front_rows(1).size());
        } else if (*verify_cmd) {
            const auto sensors = verify_src.load();
            std::vector<std::vector<std::string>> sets;
            if (!verify_criteria.empty()) {
                sets.push_back(split_list(verify_criteria));
            } else {
                const auto& all = criterion_names();
                for (std::size_t n = 2; n <= all.size(); ++n) {
                    sets.emplace_back(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n));
                }
            }
            bool ok = true;
            for (const auto& set : sets) {
                const auto matrix = catalog_to_matrix(sensors, set);
                const auto fast = pareto_fronts(matrix);
                const auto oracle = brute_force_fronts(matrix, verify_cap);
                const bool same = fast == oracle;
                ok = ok && same;
                std::cout << fmt::format("{} n_criteria={} M={} fronts={} oracle_fronts={}\n",
                                         same ? "OK  " : "FAIL", set.size(), matrix.rows(),
                                         fast.num_fronts(), oracle.num_fronts());
            }
            return ok ? 0 : 1;
        } else if (*exp_cmd) {
            ExperimentPlan plan = exp_plan.empty() ? default_plan() : load_plan(exp_plan);
            if (!exp_catalog.empty()) {
                plan.catalog = std::filesystem::path(exp_catalog);
            }
            if (auto* spec = std::get_if<CatalogSpec>(&plan.catalog)) {
                if (exp_count) {
                    spec->count = *exp_count;
                }
                if (exp_catalog_seed) {
                    spec->seed = *exp_catalog_seed;
                }
            }
            if (exp_seed) {
                plan.master_seed = *exp_seed;
            }
            if (exp_reps) {
                plan.replications = *exp_reps;
            }
            validate(plan);

            const std::filesystem::path out_path = exp_out;
            auto plan_path = out_path;
            plan_path.replace_extension(".plan.json");
            save_plan(plan, plan_path);

            RunOptions options;
            options.threads = exp_threads;
            options.log = exp_quiet ? nullptr : &std::cerr;
            const auto records = run_experiment(plan, options);

            EmitOptions emit;
            if (!exp_summary.empty()) {
                emit.summary_path = exp_summary;
            }
            emit.summary.front_cap = exp_front_cap;
            emit.summary.suppress_outliers = exp_suppress;
            emit_results(records, out_path, emit);
            if (!exp_quiet) {
                std::cerr << fmt::format("wrote {} records to {} (plan: {})\n", records.size(),
                                         out_path.string(), plan_path.string());
            }
        } else if (*sum_cmd) {
            std::ifstream in(sum_in, std::ios::binary);
            if (!in) {
                throw IoError(fmt::format("cannot open '{}'", sum_in));
            }
            const auto records = read_results_csv(in);
            SummaryOptions opts{sum_front_cap, sum_suppress};
            const auto rows = summarize_results(records, opts);
            auto out = open_output(sum_out);
            write_summary_csv(rows, out, opts);
        }
    } catch (const sensel::Error& e) {
        std::cerr << "sensel: error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "sensel: error: invalid number (" << e.what() << ")\n";
        return 2;
    }
    return 0;
}
