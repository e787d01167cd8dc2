#include "sensel/pareto.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <ostream>

#include <fmt/format.h>

#include "sensel/errors.hpp"

namespace sensel {

namespace {

inline bool dominates_unchecked(const double* a, const double* b, std::size_t n) noexcept {
    bool strict = false;
    for (std::size_t j = 0; j < n; ++j) {
        if (a[j] > b[j]) {
            return false;
        }
        strict = strict || a[j] < b[j];
    }
    return strict;
}

std::vector<std::size_t> lexicographic_order(const ObjectiveGrid& obj) {
    std::vector<std::size_t> idx(obj.rows);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const auto ra = obj.row(a);
        const auto rb = obj.row(b);
        const auto cmp = std::lexicographical_compare_three_way(ra.begin(), ra.end(),
                                                                rb.begin(), rb.end());
        if (cmp != 0) {
            return cmp < 0;
        }
        return a < b;
    });
    return idx;
}

} // namespace

bool dominates(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ValidationError(
            fmt::format("objective vectors differ in length ({} vs {})", a.size(), b.size()));
    }
    return dominates_unchecked(a.data(), b.data(), a.size());
}

ParetoStratification::ParetoStratification(std::shared_ptr<const IdList> ids,
                                           std::vector<std::vector<std::size_t>> fronts)
    : ids_(std::move(ids)), fronts_(std::move(fronts)) {
    if (!ids_) {
        throw ValidationError("stratification without alternatives");
    }
    front_of_row_.assign(ids_->size(), 0);
    std::size_t covered = 0;
    for (std::size_t f = 0; f < fronts_.size(); ++f) {
        if (fronts_[f].empty()) {
            throw ValidationError(fmt::format("front {} is empty", f + 1));
        }
        for (std::size_t row : fronts_[f]) {
            if (row >= front_of_row_.size() || front_of_row_[row] != 0) {
                throw ValidationError(fmt::format("row {} is out of range or repeated", row));
            }
            front_of_row_[row] = f + 1;
            ++covered;
        }
    }
    if (covered != ids_->size()) {
        throw ValidationError("fronts do not cover every alternative");
    }
    row_by_id_.reserve(ids_->size());
    for (std::size_t i = 0; i < ids_->size(); ++i) {
        row_by_id_.emplace((*ids_)[i], i);
    }
}

std::span<const std::size_t> ParetoStratification::front_rows(std::size_t number) const {
    if (number == 0 || number > fronts_.size()) {
        throw ValidationError(fmt::format("front {} does not exist", number));
    }
    return fronts_[number - 1];
}

std::vector<std::string> ParetoStratification::front_ids(std::size_t number) const {
    std::vector<std::string> out;
    for (std::size_t row : front_rows(number)) {
        out.push_back((*ids_)[row]);
    }
    return out;
}

std::size_t ParetoStratification::row_of(std::string_view id) const noexcept {
    const auto it = row_by_id_.find(id);
    return it == row_by_id_.end() ? npos : it->second;
}

std::size_t ParetoStratification::front_index(std::string_view id) const {
    const std::size_t row = row_of(id);
    if (row == npos) {
        throw ValidationError(fmt::format("unknown alternative '{}'", id));
    }
    return front_of_row_[row];
}

ParetoStratification pareto_fronts(const DecisionMatrix& m, ParetoOptions options) {
    const auto obj = evaluate_objectives(m);
    const std::size_t rows = obj.rows;
    const std::size_t cols = obj.cols;
    const auto sorted = lexicographic_order(obj);

    // A row can only be dominated by rows that precede it lexicographically.
    std::vector<std::size_t> position(rows);
    for (std::size_t a = 0; a < rows; ++a) {
        position[sorted[a]] = a;
    }

    const std::size_t words = (rows + 63) / 64;
    const bool use_bits = rows * words * sizeof(std::uint64_t) <= options.bitset_budget_bytes;
    std::vector<std::uint64_t> dominated;
    if (use_bits) {
        dominated.assign(rows * words, 0);
    }

    std::vector<std::size_t> count(rows, 0);
    for (std::size_t a = 0; a < rows; ++a) {
        const std::size_t p = sorted[a];
        const double* pv = obj.values.data() + p * cols;
        for (std::size_t b = a + 1; b < rows; ++b) {
            const std::size_t q = sorted[b];
            if (dominates_unchecked(pv, obj.values.data() + q * cols, cols)) {
                ++count[q];
                if (use_bits) {
                    dominated[p * words + q / 64] |= std::uint64_t{1} << (q % 64);
                }
            }
        }
    }

    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < rows; ++i) {
        if (count[i] == 0) {
            current.push_back(i);
        }
    }
    while (!current.empty()) {
        std::vector<std::size_t> next;
        auto release = [&](std::size_t q) {
            if (--count[q] == 0) {
                next.push_back(q);
            }
        };
        for (std::size_t p : current) {
            if (use_bits) {
                const std::uint64_t* row_bits = dominated.data() + p * words;
                for (std::size_t w = 0; w < words; ++w) {
                    for (std::uint64_t bits = row_bits[w]; bits != 0; bits &= bits - 1) {
                        release(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                    }
                }
            } else {
                const double* pv = obj.values.data() + p * cols;
                for (std::size_t b = position[p] + 1; b < rows; ++b) {
                    const std::size_t q = sorted[b];
                    if (dominates_unchecked(pv, obj.values.data() + q * cols, cols)) {
                        release(q);
                    }
                }
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return ParetoStratification(m.shared_alternatives(), std::move(fronts));
}

ParetoStratification brute_force_fronts(const DecisionMatrix& m, std::size_t cap) {
    if (m.rows() > cap) {
        throw ValidationError(
            fmt::format("brute-force oracle is capped at {} alternatives, got {}", cap, m.rows()));
    }
    const auto obj = evaluate_objectives(m);
    std::vector<std::size_t> remaining(obj.rows);
    std::iota(remaining.begin(), remaining.end(), std::size_t{0});

    std::vector<std::vector<std::size_t>> fronts;
    while (!remaining.empty()) {
        std::vector<std::size_t> front;
        std::vector<std::size_t> rest;
        for (std::size_t candidate : remaining) {
            const bool beaten = std::any_of(remaining.begin(), remaining.end(), [&](std::size_t other) {
                return dominates(obj.row(other), obj.row(candidate));
            });
            (beaten ? rest : front).push_back(candidate);
        }
        fronts.push_back(std::move(front));
        remaining = std::move(rest);
    }
    return ParetoStratification(m.shared_alternatives(), std::move(fronts));
}

void write_fronts_table(const ParetoStratification& s, std::ostream& out) {
    out << "id\tfront_index\n";
    for (std::size_t row = 0; row < s.num_alternatives(); ++row) {
        out << s.alternatives()[row] << '\t' << s.front_of_row(row) << '\n';
    }
}

} // namespace sensel
