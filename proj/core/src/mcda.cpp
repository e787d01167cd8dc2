#include "sensel/mcda.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include <fmt/format.h>

#include "sensel/errors.hpp"

namespace sensel {

namespace {

void check_weights(const DecisionMatrix& m, const WeightVector& w) {
    if (w.size() != m.cols()) {
        throw ValidationError(
            fmt::format("{} weights given for {} criteria", w.size(), m.cols()));
    }
}

struct ColumnRange {
    double lo;
    double hi;
};

std::vector<ColumnRange> column_ranges(const DecisionMatrix& m) {
    std::vector<ColumnRange> out(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        out[j] = {m.at(0, j), m.at(0, j)};
    }
    for (std::size_t i = 1; i < m.rows(); ++i) {
        const auto row = m.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) {
            out[j].lo = std::min(out[j].lo, row[j]);
            out[j].hi = std::max(out[j].hi, row[j]);
        }
    }
    return out;
}

// Every score lies in [0, 1]; ordering compares them on a 2^-40 grid so that
// differences at rounding-noise level count as ties, which keep ascending row
// order.
constexpr double kTieGrid = 0x1.0p40;

std::vector<std::size_t> order_by(const std::vector<double>& scores, ScorePolarity polarity) {
    std::vector<std::pair<double, std::size_t>> keyed(scores.size());
    const double sign = polarity == ScorePolarity::HigherIsBetter ? -1.0 : 1.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        keyed[i] = {sign * std::round(scores[i] * kTieGrid), i};
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::size_t> order(scores.size());
    std::transform(keyed.begin(), keyed.end(), order.begin(),
                   [](const auto& kv) { return kv.second; });
    return order;
}

RankedList make_ranked(const DecisionMatrix& m, std::vector<double> scores,
                       ScorePolarity polarity) {
    auto order = order_by(scores, polarity);
    return RankedList(m.shared_alternatives(), std::move(order), std::move(scores), polarity);
}

} // namespace

NormalizedMatrix normalize_minmax(const DecisionMatrix& m) {
    const auto ranges = column_ranges(m);
    NormalizedMatrix out{m.rows(), m.cols(), std::vector<double>(m.values().size(), 0.0),
                         NormalizationScheme::MinMax};
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const double range = ranges[j].hi - ranges[j].lo;
        if (range == 0.0) {
            continue;
        }
        const bool benefit = m.criteria()[j].direction == Direction::Maximize;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            const double q = m.at(i, j);
            out.values[i * out.cols + j] =
                benefit ? (q - ranges[j].lo) / range : (ranges[j].hi - q) / range;
        }
    }
    return out;
}

NormalizedMatrix normalize_vector(const DecisionMatrix& m) {
    NormalizedMatrix out{m.rows(), m.cols(), std::vector<double>(m.values().size(), 0.0),
                         NormalizationScheme::Vector};
    std::vector<double> sumsq(m.cols(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto row = m.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) {
            sumsq[j] += row[j] * row[j];
        }
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (sumsq[j] == 0.0) {
            continue;
        }
        const double norm = std::sqrt(sumsq[j]);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            out.values[i * out.cols + j] = m.at(i, j) / norm;
        }
    }
    return out;
}

RankedList rank_saw(const DecisionMatrix& m, const WeightVector& w) {
    check_weights(m, w);
    const auto norm = normalize_minmax(m);
    std::vector<double> scores(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            s += w[j] * norm.at(i, j);
        }
        scores[i] = s;
    }
    return make_ranked(m, std::move(scores), ScorePolarity::HigherIsBetter);
}

RankedList rank_topsis(const DecisionMatrix& m, const WeightVector& w) {
    check_weights(m, w);
    const auto norm = normalize_vector(m);
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();

    std::vector<double> weighted(norm.values.size());
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            weighted[i * cols + j] = w[j] * norm.at(i, j);
        }
    }

    std::vector<double> ideal(cols);
    std::vector<double> anti(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        double lo = weighted[j];
        double hi = weighted[j];
        for (std::size_t i = 1; i < rows; ++i) {
            lo = std::min(lo, weighted[i * cols + j]);
            hi = std::max(hi, weighted[i * cols + j]);
        }
        const bool benefit = m.criteria()[j].direction == Direction::Maximize;
        ideal[j] = benefit ? hi : lo;
        anti[j] = benefit ? lo : hi;
    }

    std::vector<double> closeness(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        double to_ideal = 0.0;
        double to_anti = 0.0;
        for (std::size_t j = 0; j < cols; ++j) {
            const double v = weighted[i * cols + j];
            to_ideal += (v - ideal[j]) * (v - ideal[j]);
            to_anti += (v - anti[j]) * (v - anti[j]);
        }
        const double d_plus = std::sqrt(to_ideal);
        const double d_minus = std::sqrt(to_anti);
        const double total = d_plus + d_minus;
        closeness[i] = total == 0.0 ? 0.5 : d_minus / total;
    }
    return make_ranked(m, std::move(closeness), ScorePolarity::HigherIsBetter);
}

VikorScores vikor_scores(const DecisionMatrix& m, const WeightVector& w, VikorParams p) {
    check_weights(m, w);
    if (!(p.v >= 0.0 && p.v <= 1.0)) {
        throw ValidationError(fmt::format("VIKOR v must lie in [0, 1], got {}", p.v));
    }
    const auto ranges = column_ranges(m);
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();

    VikorScores out{std::vector<double>(rows, 0.0), std::vector<double>(rows, 0.0),
                    std::vector<double>(rows, 0.0)};
    for (std::size_t j = 0; j < cols; ++j) {
        const bool benefit = m.criteria()[j].direction == Direction::Maximize;
        const double best = benefit ? ranges[j].hi : ranges[j].lo;
        const double worst = benefit ? ranges[j].lo : ranges[j].hi;
        const double span = best - worst;
        if (span == 0.0) {
            continue;
        }
        for (std::size_t i = 0; i < rows; ++i) {
            const double d = w[j] * (best - m.at(i, j)) / span;
            out.group_utility[i] += d;
            out.individual_regret[i] = std::max(out.individual_regret[i], d);
        }
    }

    const auto [s_best, s_worst] =
        std::minmax_element(out.group_utility.begin(), out.group_utility.end());
    const auto [r_best, r_worst] =
        std::minmax_element(out.individual_regret.begin(), out.individual_regret.end());
    const double s_lo = *s_best;
    const double s_span = *s_worst - s_lo;
    const double r_lo = *r_best;
    const double r_span = *r_worst - r_lo;
    for (std::size_t i = 0; i < rows; ++i) {
        const double s_term = s_span == 0.0 ? 0.0 : (out.group_utility[i] - s_lo) / s_span;
        const double r_term = r_span == 0.0 ? 0.0 : (out.individual_regret[i] - r_lo) / r_span;
        out.q[i] = p.v * s_term + (1.0 - p.v) * r_term;
    }
    return out;
}

RankedList rank_vikor(const DecisionMatrix& m, const WeightVector& w, VikorParams p) {
    auto scores = vikor_scores(m, w, p);
    return make_ranked(m, std::move(scores.q), ScorePolarity::LowerIsBetter);
}

std::string_view to_string(Algorithm a) noexcept {
    switch (a) {
    case Algorithm::Saw:
        return "SAW";
    case Algorithm::Topsis:
        return "TOPSIS";
    case Algorithm::Vikor:
        return "VIKOR";
    }
    return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (auto a : {Algorithm::Saw, Algorithm::Topsis, Algorithm::Vikor}) {
        if (upper == to_string(a)) {
            return a;
        }
    }
    return std::nullopt;
}

RankedList rank(Algorithm a, const DecisionMatrix& m, const WeightVector& w, VikorParams p) {
    switch (a) {
    case Algorithm::Saw:
        return rank_saw(m, w);
    case Algorithm::Topsis:
        return rank_topsis(m, w);
    case Algorithm::Vikor:
        return rank_vikor(m, w, p);
    }
    throw ValidationError("unknown algorithm");
}

} // namespace sensel
