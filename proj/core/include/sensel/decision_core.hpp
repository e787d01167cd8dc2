#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sensel {

enum class Direction { Maximize, Minimize };

std::string_view to_string(Direction d) noexcept;

struct CriterionSpec {
    std::string name;
    Direction direction = Direction::Maximize;
    /// Default relative importance; a WeightVector overrides it per run.
    double weight = 0.0;

    bool operator==(const CriterionSpec&) const = default;
};

/// Nonnegative weights summing to one (absolute tolerance 1e-9).
class WeightVector {
public:
    static constexpr double kSumTolerance = 1e-9;

    /// Validates `weights` as-is. Throws ValidationError.
    explicit WeightVector(std::vector<double> weights);

    /// Scales nonnegative raw values so they sum to one.
    static WeightVector normalized(std::vector<double> raw);
    static WeightVector uniform(std::size_t n);

    std::size_t size() const noexcept { return weights_.size(); }
    double operator[](std::size_t j) const noexcept { return weights_[j]; }
    std::span<const double> values() const noexcept { return weights_; }

    bool operator==(const WeightVector&) const = default;

private:
    std::vector<double> weights_;
};

using IdList = std::vector<std::string>;

/// M alternatives by N criteria of finite raw performance values, stored
/// row-major. Immutable once built; identifier storage is shared so ranked
/// lists and stratifications can refer back to it cheaply.
class DecisionMatrix {
public:
    std::size_t rows() const noexcept { return ids_->size(); }
    std::size_t cols() const noexcept { return criteria_.size(); }

    const IdList& alternatives() const noexcept { return *ids_; }
    const std::shared_ptr<const IdList>& shared_alternatives() const noexcept { return ids_; }
    const std::vector<CriterionSpec>& criteria() const noexcept { return criteria_; }

    double at(std::size_t i, std::size_t j) const noexcept { return values_[i * cols() + j]; }
    std::span<const double> row(std::size_t i) const noexcept {
        return {values_.data() + i * cols(), cols()};
    }
    std::span<const double> values() const noexcept { return values_; }

    /// Default weights taken from the criterion specs.
    WeightVector default_weights() const;

private:
    DecisionMatrix(std::shared_ptr<const IdList> ids, std::vector<CriterionSpec> criteria,
                   std::vector<double> values)
        : ids_(std::move(ids)), criteria_(std::move(criteria)), values_(std::move(values)) {}

    friend DecisionMatrix build_matrix(IdList, std::vector<CriterionSpec>, std::vector<double>);

    std::shared_ptr<const IdList> ids_;
    std::vector<CriterionSpec> criteria_;
    std::vector<double> values_;
};

/// Builds a validated matrix from a row-major value buffer of size M*N.
/// Throws ValidationError on empty input, dimension mismatch, duplicate
/// identifiers, invalid criteria or a non-finite value (the message names
/// the row and column).
DecisionMatrix build_matrix(IdList alternatives, std::vector<CriterionSpec> criteria,
                            std::vector<double> values);

DecisionMatrix build_matrix(IdList alternatives, std::vector<CriterionSpec> criteria,
                            const std::vector<std::vector<double>>& grid);

/// Direction-adjusted objective values: every column is to be minimized.
struct ObjectiveGrid {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    std::span<const double> row(std::size_t i) const noexcept {
        return {values.data() + i * cols, cols};
    }
    double at(std::size_t i, std::size_t j) const noexcept { return values[i * cols + j]; }
};

/// Maximize columns are negated, Minimize columns copied.
ObjectiveGrid evaluate_objectives(const DecisionMatrix& m);

enum class ScorePolarity { HigherIsBetter, LowerIsBetter };

/// An ordering of a matrix's alternatives, best first, with the producing
/// algorithm's score for every alternative. The rankers in mcda.hpp order by
/// score rounded to a 2^-40 grid; equal rounded scores keep row order.
class RankedList {
public:
    RankedList(std::shared_ptr<const IdList> ids, std::vector<std::size_t> order,
               std::vector<double> scores, ScorePolarity polarity);

    std::size_t size() const noexcept { return order_.size(); }
    ScorePolarity polarity() const noexcept { return polarity_; }

    /// Row indices into the source matrix, best first.
    std::span<const std::size_t> order_rows() const noexcept { return order_; }
    std::vector<std::string> order() const;

    const std::string& id_at(std::size_t rank) const { return (*ids_)[order_.at(rank)]; }
    double score_of_row(std::size_t row) const { return scores_.at(row); }
    /// Throws ValidationError for an unknown identifier.
    double score(std::string_view id) const;
    /// Scores indexed by source row.
    std::span<const double> scores() const noexcept { return scores_; }

private:
    std::shared_ptr<const IdList> ids_;
    std::vector<std::size_t> order_;
    std::vector<double> scores_;
    ScorePolarity polarity_;
};

/// First k identifiers of `r`. Throws ValidationError unless 1 <= k <= M.
std::vector<std::string> select_top_k(const RankedList& r, std::size_t k);
std::span<const std::size_t> select_top_k_rows(const RankedList& r, std::size_t k);

} // namespace sensel
