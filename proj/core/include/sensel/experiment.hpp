#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sensel/decision_core.hpp"
#include "sensel/mcda.hpp"
#include "sensel/metrics.hpp"
#include "sensel/sensor_catalog.hpp"

namespace sensel {

struct CriteriaSet {
    std::string name;
    std::vector<std::string> criteria;

    bool operator==(const CriteriaSet&) const = default;
};

/// Full factorial design: every algorithm x selection fraction x criteria set,
/// each replicated with freshly drawn weights.
struct ExperimentPlan {
    std::variant<CatalogSpec, std::filesystem::path> catalog = CatalogSpec{};
    std::vector<Algorithm> algorithms{Algorithm::Saw, Algorithm::Topsis, Algorithm::Vikor};
    std::vector<double> selection_fractions{0.01, 0.10};
    std::vector<CriteriaSet> criteria_sets{
        {"two", {"battery", "price"}},
        {"six",
         {"battery", "price", "drift", "frequency", "energy_consumption", "response_time"}},
    };
    std::size_t replications = 100;
    std::uint64_t master_seed = 2016;
    double vikor_v = 0.5;

    bool operator==(const ExperimentPlan&) const = default;
};

/// 10,000 generated sensors, SAW/TOPSIS/VIKOR, 1% and 10% selection,
/// criteria {battery, price} and all six, 100 replications.
inline ExperimentPlan default_plan() { return {}; }

/// Structural checks that do not need the catalog. Throws ValidationError.
void validate(const ExperimentPlan& plan);

/// k = round(fraction * M). Throws ValidationError unless 1 <= k <= M.
std::size_t selection_size(double fraction, std::size_t catalog_size);

/// Uniform draw from the (n-1)-simplex: n exponential variates -ln(u),
/// u from unit_open_closed, divided by their sum.
WeightVector sample_weights(std::size_t n_criteria, std::mt19937_64& rng);

/// Weights of replication `replication` for criteria set `set_index`. Every
/// algorithm and selection fraction of a plan sees the same vector.
WeightVector replication_weights(std::uint64_t master_seed, std::size_t set_index,
                                 std::size_t replication, std::size_t n_criteria);

struct ResultRecord {
    Algorithm algorithm = Algorithm::Saw;
    std::size_t n_criteria = 0;
    std::size_t k_selected = 0;
    std::size_t replication = 0;
    std::vector<double> weight_vector;
    std::size_t front_index = 0;
    std::size_t front_size = 0;
    std::size_t selected_in_front = 0;
    double onvgr = 0.0;

    bool operator==(const ResultRecord&) const = default;
};

struct RunOptions {
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
    /// Per-cell progress and timing; nullptr silences it.
    std::ostream* log = nullptr;
};

struct RunStats {
    std::size_t catalog_size = 0;
    std::size_t stratifications = 0;
    std::size_t rankings = 0;
    /// Indexed like plan.criteria_sets.
    std::vector<std::size_t> fronts_per_set;
};

/// Generate (or load) -> rank -> select top-k -> score against the cached
/// stratification of each criteria set. Records are ordered by algorithm,
/// fraction, criteria set, replication and front regardless of threading.
std::vector<ResultRecord> run_experiment(const ExperimentPlan& plan, const RunOptions& options = {},
                                         RunStats* stats = nullptr);

/// As above over an already materialized catalog; plan.catalog is ignored.
std::vector<ResultRecord> run_experiment(const ExperimentPlan& plan,
                                         std::span<const SensorDescription> catalog,
                                         const RunOptions& options = {},
                                         RunStats* stats = nullptr);

inline constexpr const char* kResultsHeader =
    "algorithm,n_criteria,k_selected,replication,weight_vector,front_index,front_size,"
    "selected_in_front,onvgr";

void write_results_csv(std::span<const ResultRecord> records, std::ostream& out);
/// Throws ParseError naming the offending line.
std::vector<ResultRecord> read_results_csv(std::istream& in);

struct SummaryOptions {
    /// Drop groups whose front_index exceeds the cap.
    std::optional<std::size_t> front_cap;
    /// Omit min/max/outlier_count columns, leaving box and whiskers only.
    bool suppress_outliers = false;
};

struct SummaryRow {
    Algorithm algorithm = Algorithm::Saw;
    std::size_t n_criteria = 0;
    std::size_t k_selected = 0;
    std::size_t front_index = 0;
    BoxplotSummary stats;
};

/// ONVGR distribution per (algorithm, n_criteria, k_selected, front_index),
/// sorted by that key.
std::vector<SummaryRow> summarize_results(std::span<const ResultRecord> records,
                                          const SummaryOptions& options = {});
void write_summary_csv(std::span<const SummaryRow> rows, std::ostream& out,
                       const SummaryOptions& options = {});

struct EmitOptions {
    std::optional<std::filesystem::path> summary_path;
    SummaryOptions summary;
};

/// Writes the results table to `path` and, if requested, the summary table.
/// Throws IoError.
void emit_results(std::span<const ResultRecord> records, const std::filesystem::path& path,
                  const EmitOptions& options = {});

/// Plan files are JSON objects; see README for the grammar. Relative catalog
/// paths are resolved against `base_dir`. Throws ValidationError.
ExperimentPlan parse_plan(const std::string& text, const std::filesystem::path& base_dir = {});
std::string plan_to_json(const ExperimentPlan& plan);
ExperimentPlan load_plan(const std::filesystem::path& path);
void save_plan(const ExperimentPlan& plan, const std::filesystem::path& path);

} // namespace sensel
