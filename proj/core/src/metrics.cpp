#include "sensel/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "sensel/errors.hpp"

namespace sensel {

namespace {

OnvgrReport report_from_counts(const ParetoStratification& strat,
                               const std::vector<std::size_t>& hits) {
    OnvgrReport report;
    report.per_front.reserve(strat.num_fronts());
    for (std::size_t f = 1; f <= strat.num_fronts(); ++f) {
        const std::size_t size = strat.front_rows(f).size();
        const std::size_t hit = hits[f - 1];
        report.per_front.push_back(
            {f, size, hit, static_cast<double>(hit) / static_cast<double>(size)});
    }
    return report;
}

} // namespace

OnvgrReport onvgr_per_front_rows(std::span<const std::size_t> selected_rows,
                                 const ParetoStratification& strat) {
    std::vector<std::size_t> hits(strat.num_fronts(), 0);
    std::vector<bool> seen(strat.num_alternatives(), false);
    for (std::size_t row : selected_rows) {
        if (row >= seen.size()) {
            throw ValidationError(fmt::format("selected row {} is out of range", row));
        }
        if (seen[row]) {
            throw ValidationError(fmt::format("row {} selected twice", row));
        }
        seen[row] = true;
        ++hits[strat.front_of_row(row) - 1];
    }
    return report_from_counts(strat, hits);
}

OnvgrReport onvgr_per_front(std::span<const std::string> selected,
                            const ParetoStratification& strat) {
    std::vector<std::size_t> rows;
    rows.reserve(selected.size());
    for (const auto& id : selected) {
        const std::size_t row = strat.row_of(id);
        if (row == ParetoStratification::npos) {
            throw ValidationError(fmt::format("selected alternative '{}' is not stratified", id));
        }
        rows.push_back(row);
    }
    return onvgr_per_front_rows(rows, strat);
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) {
        throw ValidationError("quantile of an empty sample");
    }
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) {
        return sorted.back();
    }
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

BoxplotSummary summarize(std::span<const double> samples) {
    if (samples.empty()) {
        throw ValidationError("cannot summarize an empty sample");
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());

    BoxplotSummary s;
    s.n = sorted.size();
    s.min = sorted.front();
    s.max = sorted.back();
    s.q1 = quantile_sorted(sorted, 0.25);
    s.median = quantile_sorted(sorted, 0.5);
    s.q3 = quantile_sorted(sorted, 0.75);
    // Summing in sorted order keeps the mean independent of input order.
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(s.n);

    const double iqr = s.q3 - s.q1;
    const double fence_low = s.q1 - 1.5 * iqr;
    const double fence_high = s.q3 + 1.5 * iqr;
    const auto first_in = std::lower_bound(sorted.begin(), sorted.end(), fence_low);
    const auto last_in = std::upper_bound(sorted.begin(), sorted.end(), fence_high);
    // q1 and q3 lie inside the fences, so at least one sample does too.
    s.whisker_low = *first_in;
    s.whisker_high = *(last_in - 1);
    s.outlier_count = static_cast<std::size_t>(first_in - sorted.begin()) +
                      static_cast<std::size_t>(sorted.end() - last_in);
    return s;
}

} // namespace sensel
