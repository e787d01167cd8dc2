#include "sensel/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

#include <fmt/format.h>

#include "sensel/errors.hpp"
#include "sensel/pareto.hpp"
#include "sensel/seeding.hpp"

namespace sensel {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = count;
            }
        }
    };
    std::vector<std::jthread> pool;
    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    for (unsigned t = 0; t < n; ++t) {
        pool.emplace_back(worker);
    }
    pool.clear();
    if (failure) {
        std::rethrow_exception(failure);
    }
}

std::string format_weights(std::span<const double> w) {
    std::string out;
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (j != 0) {
            out += ';';
        }
        out += fmt::format("{:.12g}", w[j]);
    }
    return out;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

template <typename T>
T parse_number(std::string_view text, std::size_t line_no, std::string_view what) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ParseError(line_no, fmt::format("invalid {} '{}'", what, text));
    }
    return value;
}

} // namespace

void validate(const ExperimentPlan& plan) {
    if (plan.algorithms.empty()) {
        throw ValidationError("plan has no algorithms");
    }
    if (plan.selection_fractions.empty()) {
        throw ValidationError("plan has no selection fractions");
    }
    for (double f : plan.selection_fractions) {
        if (!(f > 0.0 && f <= 1.0)) {
            throw ValidationError(fmt::format("selection fraction {} is outside (0, 1]", f));
        }
    }
    if (plan.criteria_sets.empty()) {
        throw ValidationError("plan has no criteria sets");
    }
    for (const auto& set : plan.criteria_sets) {
        if (set.criteria.size() < 2 || set.criteria.size() > kCriterionFieldCount) {
            throw ValidationError(
                fmt::format("criteria set '{}' must name 2 to 6 criteria", set.name));
        }
        std::vector<std::string> sorted = set.criteria;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw ValidationError(fmt::format("criteria set '{}' repeats a criterion", set.name));
        }
        for (const auto& name : set.criteria) {
            sensor_criterion(name);
        }
    }
    if (plan.replications == 0) {
        throw ValidationError("replications must be at least 1");
    }
    if (!(plan.vikor_v >= 0.0 && plan.vikor_v <= 1.0)) {
        throw ValidationError(fmt::format("vikor_v must lie in [0, 1], got {}", plan.vikor_v));
    }
    if (const auto* spec = std::get_if<CatalogSpec>(&plan.catalog)) {
        validate(*spec);
    }
}

std::size_t selection_size(double fraction, std::size_t catalog_size) {
    const auto k = std::llround(fraction * static_cast<double>(catalog_size));
    if (k < 1 || static_cast<std::size_t>(k) > catalog_size) {
        throw ValidationError(fmt::format(
            "selection fraction {} of {} sensors selects {} (need 1..{})", fraction,
            catalog_size, k, catalog_size));
    }
    return static_cast<std::size_t>(k);
}

WeightVector sample_weights(std::size_t n_criteria, std::mt19937_64& rng) {
    if (n_criteria == 0) {
        throw ValidationError("cannot sample an empty weight vector");
    }
    std::vector<double> draws(n_criteria);
    double sum = 0.0;
    for (double& d : draws) {
        d = -std::log(unit_open_closed(rng));
        sum += d;
    }
    if (sum == 0.0) {
        return WeightVector::uniform(n_criteria);
    }
    for (double& d : draws) {
        d /= sum;
    }
    return WeightVector(std::move(draws));
}

WeightVector replication_weights(std::uint64_t master_seed, std::size_t set_index,
                                 std::size_t replication, std::size_t n_criteria) {
    std::mt19937_64 rng(derive_seed(master_seed, set_index, replication));
    return sample_weights(n_criteria, rng);
}

std::vector<ResultRecord> run_experiment(const ExperimentPlan& plan, const RunOptions& options,
                                         RunStats* stats) {
    validate(plan);
    std::vector<SensorDescription> catalog;
    if (const auto* spec = std::get_if<CatalogSpec>(&plan.catalog)) {
        catalog = generate_catalog(*spec);
    } else {
        catalog = load_catalog(std::get<std::filesystem::path>(plan.catalog));
    }
    return run_experiment(plan, catalog, options, stats);
}

std::vector<ResultRecord> run_experiment(const ExperimentPlan& plan,
                                         std::span<const SensorDescription> catalog,
                                         const RunOptions& options, RunStats* stats) {
    validate(plan);
    if (catalog.empty()) {
        throw ValidationError("catalog is empty");
    }
    const std::size_t n_sets = plan.criteria_sets.size();
    const std::size_t n_algos = plan.algorithms.size();
    const std::size_t n_fracs = plan.selection_fractions.size();
    const std::size_t reps = plan.replications;

    std::vector<std::size_t> ks;
    for (double f : plan.selection_fractions) {
        ks.push_back(selection_size(f, catalog.size()));
    }
    unsigned threads = options.threads;
    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }

    RunStats local;
    local.catalog_size = catalog.size();

    // One matrix and one stratification per criteria set; weights never
    // affect dominance.
    std::vector<DecisionMatrix> matrices;
    std::vector<ParetoStratification> strata;
    for (const auto& set : plan.criteria_sets) {
        const auto start = Clock::now();
        matrices.push_back(catalog_to_matrix(catalog, set.criteria));
        strata.push_back(pareto_fronts(matrices.back()));
        ++local.stratifications;
        local.fronts_per_set.push_back(strata.back().num_fronts());
        if (options.log) {
            *options.log << fmt::format(
                "[stratify] set={} n_criteria={} M={} fronts={} first_front={} {:.2f}s\n",
                set.name, set.criteria.size(), catalog.size(), strata.back().num_fronts(),
                strata.back().front_rows(1).size(), seconds_since(start));
        }
    }

    // Slot (set, rep) holds weights and, per (algorithm, fraction), a report.
    // Ranking once per algorithm serves every fraction: top-k lists nest.
    struct Slot {
        std::vector<double> weights;
        std::vector<OnvgrReport> reports; // [algo * n_fracs + frac]
    };
    std::vector<Slot> slots(n_sets * reps);
    const auto start = Clock::now();
    parallel_for(slots.size(), threads, [&](std::size_t task) {
        const std::size_t s = task / reps;
        const std::size_t r = task % reps;
        const auto& matrix = matrices[s];
        const auto w = replication_weights(plan.master_seed, s, r, matrix.cols());
        Slot& slot = slots[task];
        slot.weights.assign(w.values().begin(), w.values().end());
        slot.reports.resize(n_algos * n_fracs);
        for (std::size_t a = 0; a < n_algos; ++a) {
            const auto ranked = rank(plan.algorithms[a], matrix, w, VikorParams{plan.vikor_v});
            for (std::size_t f = 0; f < n_fracs; ++f) {
                slot.reports[a * n_fracs + f] =
                    onvgr_per_front_rows(select_top_k_rows(ranked, ks[f]), strata[s]);
            }
        }
    });
    local.rankings = slots.size() * n_algos;
    if (options.log) {
        *options.log << fmt::format("[rank] {} rankings in {:.2f}s\n", local.rankings,
                                    seconds_since(start));
    }

    std::size_t total = 0;
    for (std::size_t s = 0; s < n_sets; ++s) {
        total += n_algos * n_fracs * reps * strata[s].num_fronts();
    }
    std::vector<ResultRecord> records;
    records.reserve(total);
    for (std::size_t a = 0; a < n_algos; ++a) {
        for (std::size_t f = 0; f < n_fracs; ++f) {
            for (std::size_t s = 0; s < n_sets; ++s) {
                double first_front_sum = 0.0;
                for (std::size_t r = 0; r < reps; ++r) {
                    const Slot& slot = slots[s * reps + r];
                    const auto& report = slot.reports[a * n_fracs + f];
                    first_front_sum += report.per_front.front().onvgr;
                    for (const auto& front : report.per_front) {
                        records.push_back({plan.algorithms[a], matrices[s].cols(), ks[f], r,
                                           slot.weights, front.front_index, front.front_size,
                                           front.selected_in_front, front.onvgr});
                    }
                }
                if (options.log) {
                    *options.log << fmt::format(
                        "[cell] {} k={} set={} reps={} mean_first_front_onvgr={:.4f}\n",
                        to_string(plan.algorithms[a]), ks[f], plan.criteria_sets[s].name, reps,
                        first_front_sum / static_cast<double>(reps));
                }
            }
        }
    }
    if (stats) {
        *stats = std::move(local);
    }
    return records;
}

void write_results_csv(std::span<const ResultRecord> records, std::ostream& out) {
    fmt::memory_buffer buf;
    buf.append(std::string_view(kResultsHeader));
    buf.push_back('\n');
    for (const auto& r : records) {
        fmt::format_to(std::back_inserter(buf), "{},{},{},{},{},{},{},{},{}\n",
                       to_string(r.algorithm), r.n_criteria, r.k_selected, r.replication,
                       format_weights(r.weight_vector), r.front_index, r.front_size,
                       r.selected_in_front, r.onvgr);
        if (buf.size() > (1U << 20)) {
            out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
            buf.clear();
        }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

std::vector<ResultRecord> read_results_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kResultsHeader) {
        throw ParseError(1, "missing or unexpected results header");
    }
    std::vector<ResultRecord> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto cols = split(line, ',');
        if (cols.size() != 9) {
            throw ParseError(line_no, fmt::format("expected 9 columns, found {}", cols.size()));
        }
        ResultRecord r;
        const auto algo = parse_algorithm(cols[0]);
        if (!algo) {
            throw ParseError(line_no, fmt::format("unknown algorithm '{}'", cols[0]));
        }
        r.algorithm = *algo;
        r.n_criteria = parse_number<std::size_t>(cols[1], line_no, "n_criteria");
        r.k_selected = parse_number<std::size_t>(cols[2], line_no, "k_selected");
        r.replication = parse_number<std::size_t>(cols[3], line_no, "replication");
        for (auto w : split(cols[4], ';')) {
            r.weight_vector.push_back(parse_number<double>(w, line_no, "weight"));
        }
        r.front_index = parse_number<std::size_t>(cols[5], line_no, "front_index");
        r.front_size = parse_number<std::size_t>(cols[6], line_no, "front_size");
        r.selected_in_front = parse_number<std::size_t>(cols[7], line_no, "selected_in_front");
        r.onvgr = parse_number<double>(cols[8], line_no, "onvgr");
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<SummaryRow> summarize_results(std::span<const ResultRecord> records,
                                          const SummaryOptions& options) {
    using Key = std::tuple<Algorithm, std::size_t, std::size_t, std::size_t>;
    std::map<Key, std::vector<double>> groups;
    for (const auto& r : records) {
        if (options.front_cap && r.front_index > *options.front_cap) {
            continue;
        }
        groups[{r.algorithm, r.n_criteria, r.k_selected, r.front_index}].push_back(r.onvgr);
    }
    std::vector<SummaryRow> out;
    out.reserve(groups.size());
    for (const auto& [key, samples] : groups) {
        out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), std::get<3>(key),
                       summarize(samples)});
    }
    return out;
}

void write_summary_csv(std::span<const SummaryRow> rows, std::ostream& out,
                       const SummaryOptions& options) {
    fmt::memory_buffer buf;
    auto it = std::back_inserter(buf);
    fmt::format_to(it, "algorithm,n_criteria,k_selected,front_index,n,mean,median,q1,q3,"
                       "whisker_low,whisker_high");
    if (!options.suppress_outliers) {
        fmt::format_to(it, ",min,max,outlier_count");
    }
    buf.push_back('\n');
    for (const auto& row : rows) {
        const auto& s = row.stats;
        fmt::format_to(it, "{},{},{},{},{},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g}",
                       to_string(row.algorithm), row.n_criteria, row.k_selected, row.front_index,
                       s.n, s.mean, s.median, s.q1, s.q3, s.whisker_low, s.whisker_high);
        if (!options.suppress_outliers) {
            fmt::format_to(it, ",{:.12g},{:.12g},{}", s.min, s.max, s.outlier_count);
        }
        buf.push_back('\n');
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void emit_results(std::span<const ResultRecord> records, const std::filesystem::path& path,
                  const EmitOptions& options) {
    auto write_file = [](const std::filesystem::path& p, auto&& body) {
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError(fmt::format("cannot open '{}' for writing", p.string()));
        }
        body(out);
        out.flush();
        if (!out) {
            throw IoError(fmt::format("failed writing '{}'", p.string()));
        }
    };
    write_file(path, [&](std::ostream& out) { write_results_csv(records, out); });
    if (options.summary_path) {
        const auto rows = summarize_results(records, options.summary);
        write_file(*options.summary_path,
                   [&](std::ostream& out) { write_summary_csv(rows, out, options.summary); });
    }
}

} // namespace sensel
