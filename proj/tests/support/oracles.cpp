#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>

namespace sensel::oracle {

std::vector<long double> saw_scores(const Grid& q, const std::vector<double>& w,
                                    const std::vector<bool>& benefit) {
    const std::size_t m = q.size();
    const std::size_t n = w.size();
    std::vector<long double> out(m, 0.0L);
    for (std::size_t j = 0; j < n; ++j) {
        long double lo = q[0][j];
        long double hi = q[0][j];
        for (const auto& row : q) {
            lo = std::min<long double>(lo, row[j]);
            hi = std::max<long double>(hi, row[j]);
        }
        if (hi == lo) {
            continue;
        }
        for (std::size_t i = 0; i < m; ++i) {
            const long double x = benefit[j] ? (q[i][j] - lo) / (hi - lo) : (hi - q[i][j]) / (hi - lo);
            out[i] += w[j] * x;
        }
    }
    return out;
}

std::vector<long double> topsis_closeness(const Grid& q, const std::vector<double>& w,
                                          const std::vector<bool>& benefit) {
    const std::size_t m = q.size();
    const std::size_t n = w.size();
    // Step 1: vector normalization, step 2: weighting.
    std::vector<std::vector<long double>> v(m, std::vector<long double>(n, 0.0L));
    for (std::size_t j = 0; j < n; ++j) {
        long double ss = 0.0L;
        for (std::size_t i = 0; i < m; ++i) {
            ss += static_cast<long double>(q[i][j]) * q[i][j];
        }
        const long double norm = std::sqrt(ss);
        for (std::size_t i = 0; i < m; ++i) {
            v[i][j] = norm == 0.0L ? 0.0L : w[j] * (q[i][j] / norm);
        }
    }
    // Step 3: ideal and anti-ideal points.
    std::vector<long double> best(n), worst(n);
    for (std::size_t j = 0; j < n; ++j) {
        long double lo = v[0][j], hi = v[0][j];
        for (std::size_t i = 0; i < m; ++i) {
            lo = std::min(lo, v[i][j]);
            hi = std::max(hi, v[i][j]);
        }
        best[j] = benefit[j] ? hi : lo;
        worst[j] = benefit[j] ? lo : hi;
    }
    // Step 4: separation measures and closeness.
    std::vector<long double> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        long double dp = 0.0L, dm = 0.0L;
        for (std::size_t j = 0; j < n; ++j) {
            dp += (v[i][j] - best[j]) * (v[i][j] - best[j]);
            dm += (v[i][j] - worst[j]) * (v[i][j] - worst[j]);
        }
        dp = std::sqrt(dp);
        dm = std::sqrt(dm);
        out[i] = (dp + dm) == 0.0L ? 0.5L : dm / (dp + dm);
    }
    return out;
}

Vikor vikor(const Grid& q, const std::vector<double>& w, const std::vector<bool>& benefit,
            double v) {
    const std::size_t m = q.size();
    const std::size_t n = w.size();
    Vikor out{std::vector<long double>(m, 0.0L), std::vector<long double>(m, 0.0L),
              std::vector<long double>(m, 0.0L)};
    for (std::size_t j = 0; j < n; ++j) {
        long double lo = q[0][j], hi = q[0][j];
        for (const auto& row : q) {
            lo = std::min<long double>(lo, row[j]);
            hi = std::max<long double>(hi, row[j]);
        }
        if (hi == lo) {
            continue;
        }
        for (std::size_t i = 0; i < m; ++i) {
            // Regret relative to the best value, as a share of the range.
            const long double gap = benefit[j] ? hi - q[i][j] : q[i][j] - lo;
            const long double d = w[j] * gap / (hi - lo);
            out.s[i] += d;
            out.r[i] = std::max(out.r[i], d);
        }
    }
    const auto [s_lo, s_hi] = std::minmax_element(out.s.begin(), out.s.end());
    const auto [r_lo, r_hi] = std::minmax_element(out.r.begin(), out.r.end());
    for (std::size_t i = 0; i < m; ++i) {
        const long double a = *s_hi == *s_lo ? 0.0L : (out.s[i] - *s_lo) / (*s_hi - *s_lo);
        const long double b = *r_hi == *r_lo ? 0.0L : (out.r[i] - *r_lo) / (*r_hi - *r_lo);
        out.q[i] = v * a + (1.0L - v) * b;
    }
    return out;
}

std::vector<std::size_t> stable_order(const std::vector<long double>& scores, bool higher_better) {
    std::vector<std::size_t> idx(scores.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return higher_better ? scores[a] > scores[b] : scores[a] < scores[b];
    });
    return idx;
}

std::vector<std::size_t> front_numbers_by_chain(const Grid& f) {
    const std::size_t m = f.size();
    auto dom = [&](std::size_t a, std::size_t b) {
        bool strict = false;
        for (std::size_t j = 0; j < f[a].size(); ++j) {
            if (f[a][j] > f[b][j]) return false;
            if (f[a][j] < f[b][j]) strict = true;
        }
        return strict;
    };
    // front(b) = 1 + max front(a) over the rows a dominating b, memoized.
    std::vector<std::size_t> front(m, 0);
    auto resolve = [&](auto&& self, std::size_t b) -> std::size_t {
        if (front[b] != 0) {
            return front[b];
        }
        std::size_t depth = 0;
        for (std::size_t a = 0; a < m; ++a) {
            if (dom(a, b)) {
                depth = std::max(depth, self(self, a));
            }
        }
        return front[b] = depth + 1;
    };
    for (std::size_t b = 0; b < m; ++b) {
        resolve(resolve, b);
    }
    return front;
}

} // namespace sensel::oracle

namespace sensel::testing {

std::vector<std::string> make_ids(std::size_t n) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) {
        ids.push_back(fmt::format("alt{}", i));
    }
    return ids;
}

DecisionMatrix random_matrix(std::mt19937_64& rng, const RandomMatrixOptions& opts) {
    std::uniform_int_distribution<std::size_t> rows(opts.min_rows, opts.max_rows);
    std::uniform_int_distribution<std::size_t> cols(opts.min_cols, opts.max_cols);
    std::uniform_real_distribution<double> value(-100.0, 100.0);
    std::uniform_int_distribution<int> cell(0, std::max(opts.grid, 1) - 1);
    std::bernoulli_distribution coin(0.5);
    const std::size_t m = rows(rng);
    const std::size_t n = cols(rng);
    std::vector<CriterionSpec> criteria;
    for (std::size_t j = 0; j < n; ++j) {
        criteria.push_back({fmt::format("c{}", j),
                            coin(rng) ? Direction::Maximize : Direction::Minimize, 0.0});
    }
    std::vector<double> values(m * n);
    for (double& v : values) {
        v = opts.grid > 0 ? static_cast<double>(cell(rng)) : value(rng);
    }
    return build_matrix(make_ids(m), std::move(criteria), std::move(values));
}

WeightVector random_weights(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> raw(n);
    for (double& w : raw) {
        w = u(rng);
    }
    return WeightVector::normalized(std::move(raw));
}

oracle::Grid to_grid(const DecisionMatrix& m) {
    oracle::Grid g(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        g[i].assign(m.row(i).begin(), m.row(i).end());
    }
    return g;
}

std::vector<bool> benefit_mask(const DecisionMatrix& m) {
    std::vector<bool> out;
    for (const auto& c : m.criteria()) {
        out.push_back(c.direction == Direction::Maximize);
    }
    return out;
}

oracle::Grid minimization_grid(const DecisionMatrix& m) {
    auto g = to_grid(m);
    const auto mask = benefit_mask(m);
    for (auto& row : g) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (mask[j]) {
                row[j] = -row[j];
            }
        }
    }
    return g;
}

} // namespace sensel::testing
