#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sensel/decision_core.hpp"

namespace sensel {

enum class NormalizationScheme { MinMax, Vector };

struct NormalizedMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;
    NormalizationScheme scheme = NormalizationScheme::MinMax;

    double at(std::size_t i, std::size_t j) const noexcept { return values[i * cols + j]; }
};

/// Benefit columns map to (q - min) / range, cost columns to (max - q) / range,
/// so 1 is always the best value. Zero-range columns become all zeros.
NormalizedMatrix normalize_minmax(const DecisionMatrix& m);

/// q / ||column||_2, ignoring direction. All-zero columns stay zero.
NormalizedMatrix normalize_vector(const DecisionMatrix& m);

struct VikorParams {
    /// Weight of group utility S against individual regret R, in [0, 1].
    double v = 0.5;
};

/// Weighted sum of min-max normalized values; higher is better.
RankedList rank_saw(const DecisionMatrix& m, const WeightVector& w);

/// Relative closeness D- / (D+ + D-) to the weighted ideal point over the
/// vector-normalized matrix; higher is better. A row equidistant at zero
/// from both reference points scores 0.5.
RankedList rank_topsis(const DecisionMatrix& m, const WeightVector& w);

/// Compromise index Q = v * S' + (1 - v) * R' where S is the weighted
/// Manhattan regret, R the largest single weighted regret, and the primes
/// denote min-max rescaling across alternatives; lower is better. No
/// acceptable-advantage / stability filtering is applied.
RankedList rank_vikor(const DecisionMatrix& m, const WeightVector& w, VikorParams p = {});

/// Intermediate VIKOR quantities, indexed by row.
struct VikorScores {
    std::vector<double> group_utility;     // S
    std::vector<double> individual_regret; // R
    std::vector<double> q;
};

VikorScores vikor_scores(const DecisionMatrix& m, const WeightVector& w, VikorParams p = {});

enum class Algorithm { Saw, Topsis, Vikor };

std::string_view to_string(Algorithm a) noexcept;
/// Accepts "SAW", "TOPSIS", "VIKOR" in any case.
std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;

RankedList rank(Algorithm a, const DecisionMatrix& m, const WeightVector& w,
                VikorParams p = {});

} // namespace sensel
