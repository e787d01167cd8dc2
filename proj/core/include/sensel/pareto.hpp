#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sensel/decision_core.hpp"

namespace sensel {

/// True iff `a` is no worse than `b` everywhere and strictly better somewhere,
/// both given in minimization space. Exact comparison, no epsilon.
/// Throws ValidationError on length mismatch.
bool dominates(std::span<const double> a, std::span<const double> b);

/// Successive non-dominated fronts over a matrix's alternatives. Front numbers
/// are 1-based; members of a front are kept in ascending row order.
class ParetoStratification {
public:
    /// Throws ValidationError unless `fronts` partition the rows of `ids`.
    ParetoStratification(std::shared_ptr<const IdList> ids,
                         std::vector<std::vector<std::size_t>> fronts);

    std::size_t num_fronts() const noexcept { return fronts_.size(); }
    std::size_t num_alternatives() const noexcept { return front_of_row_.size(); }

    /// Rows of front `number` (1-based).
    std::span<const std::size_t> front_rows(std::size_t number) const;
    std::vector<std::string> front_ids(std::size_t number) const;
    const std::vector<std::vector<std::size_t>>& fronts() const noexcept { return fronts_; }

    std::size_t front_of_row(std::size_t row) const { return front_of_row_.at(row); }
    /// Throws ValidationError for an unknown identifier.
    std::size_t front_index(std::string_view id) const;
    /// Row of `id`, or npos.
    std::size_t row_of(std::string_view id) const noexcept;

    const IdList& alternatives() const noexcept { return *ids_; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    friend bool operator==(const ParetoStratification& a, const ParetoStratification& b) {
        return *a.ids_ == *b.ids_ && a.fronts_ == b.fronts_;
    }

private:
    std::shared_ptr<const IdList> ids_;
    std::vector<std::vector<std::size_t>> fronts_;
    std::vector<std::size_t> front_of_row_;
    std::unordered_map<std::string_view, std::size_t> row_by_id_;
};

struct ParetoOptions {
    /// Above this many bytes the pairwise dominance relation is recomputed
    /// during peeling instead of being held as an M x M bit matrix.
    std::size_t bitset_budget_bytes = std::size_t{256} << 20;
};

/// Fast non-dominated sorting with domination counts. Rows are pre-sorted
/// lexicographically in objective space so each pair is tested once.
ParetoStratification pareto_fronts(const DecisionMatrix& m, ParetoOptions options = {});

inline constexpr std::size_t kDefaultOracleCap = 2000;

/// Reference stratification by repeated full pairwise sweeps over the
/// remaining set. Throws ValidationError when M exceeds `cap`.
ParetoStratification brute_force_fronts(const DecisionMatrix& m,
                                        std::size_t cap = kDefaultOracleCap);

/// Two-column tab-separated table: header "id\tfront_index", then one line
/// per alternative in matrix row order.
void write_fronts_table(const ParetoStratification& s, std::ostream& out);

} // namespace sensel
