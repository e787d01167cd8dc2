#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sensel/pareto.hpp"

namespace sensel {

struct FrontOnvgr {
    std::size_t front_index = 0; // 1-based
    std::size_t front_size = 0;
    std::size_t selected_in_front = 0;
    double onvgr = 0.0;

    bool operator==(const FrontOnvgr&) const = default;
};

/// Share of each Pareto front captured by a selection, one record per front
/// including fronts the selection never touches.
struct OnvgrReport {
    std::vector<FrontOnvgr> per_front;

    std::size_t num_fronts() const noexcept { return per_front.size(); }
};

/// onvgr_i = |selected ∩ F_i| / |F_i|. Throws ValidationError for an
/// identifier absent from the stratification or listed twice.
OnvgrReport onvgr_per_front(std::span<const std::string> selected,
                            const ParetoStratification& strat);

/// Same as above with the selection given as matrix rows.
OnvgrReport onvgr_per_front_rows(std::span<const std::size_t> selected_rows,
                                 const ParetoStratification& strat);

/// Tukey boxplot statistics. Quartiles use linear interpolation between
/// closest ranks; whiskers reach the most extreme samples inside
/// [q1 - 1.5 IQR, q3 + 1.5 IQR].
struct BoxplotSummary {
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double whisker_low = 0.0;
    double whisker_high = 0.0;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::size_t outlier_count = 0;
    std::size_t n = 0;
};

/// Throws ValidationError on an empty sample.
BoxplotSummary summarize(std::span<const double> samples);

/// Linear-interpolation quantile of already sorted data, p in [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

} // namespace sensel
