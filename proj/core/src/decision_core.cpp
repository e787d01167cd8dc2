#include "sensel/decision_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include <fmt/format.h>

#include "sensel/errors.hpp"

namespace sensel {

std::string_view to_string(Direction d) noexcept {
    return d == Direction::Maximize ? "max" : "min";
}

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) {
        throw ValidationError("weight vector is empty");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < weights_.size(); ++j) {
        const double w = weights_[j];
        if (!std::isfinite(w) || w < 0.0) {
            throw ValidationError(fmt::format("weight {} is negative or non-finite ({})", j, w));
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
        throw ValidationError(fmt::format("weights sum to {:.17g}, expected 1", sum));
    }
}

WeightVector WeightVector::normalized(std::vector<double> raw) {
    double sum = 0.0;
    for (double w : raw) {
        if (!std::isfinite(w) || w < 0.0) {
            throw ValidationError("raw weights must be finite and nonnegative");
        }
        sum += w;
    }
    if (!(sum > 0.0)) {
        throw ValidationError("raw weights sum to zero");
    }
    for (double& w : raw) {
        w /= sum;
    }
    return WeightVector(std::move(raw));
}

WeightVector WeightVector::uniform(std::size_t n) {
    if (n == 0) {
        throw ValidationError("weight vector is empty");
    }
    return WeightVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

WeightVector DecisionMatrix::default_weights() const {
    std::vector<double> raw;
    raw.reserve(cols());
    for (const auto& c : criteria_) {
        raw.push_back(c.weight);
    }
    if (std::all_of(raw.begin(), raw.end(), [](double w) { return w == 0.0; })) {
        return WeightVector::uniform(cols());
    }
    return WeightVector::normalized(std::move(raw));
}

namespace {

void validate_criteria(const std::vector<CriterionSpec>& criteria) {
    std::unordered_set<std::string_view> seen;
    for (const auto& c : criteria) {
        if (c.name.empty()) {
            throw ValidationError("criterion name is empty");
        }
        if (!seen.insert(c.name).second) {
            throw ValidationError(fmt::format("duplicate criterion '{}'", c.name));
        }
        if (!std::isfinite(c.weight) || c.weight < 0.0) {
            throw ValidationError(fmt::format("criterion '{}' has invalid weight", c.name));
        }
    }
}

} // namespace

DecisionMatrix build_matrix(IdList alternatives, std::vector<CriterionSpec> criteria,
                            std::vector<double> values) {
    const std::size_t m = alternatives.size();
    const std::size_t n = criteria.size();
    if (m == 0 || n == 0) {
        throw ValidationError(fmt::format("matrix must be non-empty (got {}x{})", m, n));
    }
    if (values.size() != m * n) {
        throw ValidationError(
            fmt::format("expected {}x{} = {} values, got {}", m, n, m * n, values.size()));
    }
    validate_criteria(criteria);

    std::unordered_set<std::string_view> seen;
    seen.reserve(m);
    for (const auto& id : alternatives) {
        if (!seen.insert(id).second) {
            throw ValidationError(fmt::format("duplicate alternative identifier '{}'", id));
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::isfinite(values[i * n + j])) {
                throw ValidationError(
                    fmt::format("non-finite value at row {}, column {}", i, j));
            }
        }
    }
    return DecisionMatrix(std::make_shared<const IdList>(std::move(alternatives)),
                          std::move(criteria), std::move(values));
}

DecisionMatrix build_matrix(IdList alternatives, std::vector<CriterionSpec> criteria,
                            const std::vector<std::vector<double>>& grid) {
    if (grid.size() != alternatives.size()) {
        throw ValidationError(fmt::format("grid has {} rows but {} alternatives", grid.size(),
                                          alternatives.size()));
    }
    std::vector<double> flat;
    flat.reserve(grid.size() * criteria.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i].size() != criteria.size()) {
            throw ValidationError(fmt::format("row {} has {} values but there are {} criteria", i,
                                              grid[i].size(), criteria.size()));
        }
        flat.insert(flat.end(), grid[i].begin(), grid[i].end());
    }
    return build_matrix(std::move(alternatives), std::move(criteria), std::move(flat));
}

ObjectiveGrid evaluate_objectives(const DecisionMatrix& m) {
    ObjectiveGrid out{m.rows(), m.cols(), {m.values().begin(), m.values().end()}};
    for (std::size_t j = 0; j < out.cols; ++j) {
        if (m.criteria()[j].direction != Direction::Maximize) {
            continue;
        }
        for (std::size_t i = 0; i < out.rows; ++i) {
            out.values[i * out.cols + j] = -out.values[i * out.cols + j];
        }
    }
    return out;
}

RankedList::RankedList(std::shared_ptr<const IdList> ids, std::vector<std::size_t> order,
                       std::vector<double> scores, ScorePolarity polarity)
    : ids_(std::move(ids)), order_(std::move(order)), scores_(std::move(scores)),
      polarity_(polarity) {
    if (!ids_ || order_.size() != ids_->size() || scores_.size() != ids_->size()) {
        throw ValidationError("ranked list does not cover every alternative");
    }
}

std::vector<std::string> RankedList::order() const {
    std::vector<std::string> out;
    out.reserve(order_.size());
    for (std::size_t row : order_) {
        out.push_back((*ids_)[row]);
    }
    return out;
}

double RankedList::score(std::string_view id) const {
    const auto it = std::find(ids_->begin(), ids_->end(), id);
    if (it == ids_->end()) {
        throw ValidationError(fmt::format("unknown alternative '{}'", id));
    }
    return scores_[static_cast<std::size_t>(it - ids_->begin())];
}

std::span<const std::size_t> select_top_k_rows(const RankedList& r, std::size_t k) {
    if (k == 0 || k > r.size()) {
        throw ValidationError(fmt::format("k must lie in [1, {}], got {}", r.size(), k));
    }
    return r.order_rows().first(k);
}

std::vector<std::string> select_top_k(const RankedList& r, std::size_t k) {
    const auto rows = select_top_k_rows(r, k);
    std::vector<std::string> out;
    out.reserve(rows.size());
    for (std::size_t rank = 0; rank < rows.size(); ++rank) {
        out.push_back(r.id_at(rank));
    }
    return out;
}

} // namespace sensel
