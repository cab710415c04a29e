#include "bcur/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace bcur {

const char* to_string(SamplingMode mode) {
    return mode == SamplingMode::with_replacement ? "with_replacement" : "without_replacement";
}

namespace {

void require_distribution(const Vector& probs) {
    if (probs.size() < 1) {
        throw DistributionInvalid("empty probability vector");
    }
    double sum = 0.0;
    for (Index i = 0; i < probs.size(); ++i) {
        const double p = probs(i);
        if (!std::isfinite(p) || p < 0.0) {
            throw DistributionInvalid("probability " + std::to_string(i) + " is negative or non-finite");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-10) {
        throw DistributionInvalid("probabilities sum to " + std::to_string(sum) + ", not 1");
    }
}

// Inverse-CDF draw over the active entries of probs. Entries with zero
// probability are never selected. `mass` is the total active probability.
Index categorical_draw(const Vector& probs, const std::vector<bool>& active, double mass, Rng& rng) {
    const double u = rng.uniform01() * mass;
    double cum = 0.0;
    Index last_positive = -1;
    for (Index i = 0; i < probs.size(); ++i) {
        if (!active[static_cast<std::size_t>(i)] || probs(i) <= 0.0) {
            continue;
        }
        last_positive = i;
        cum += probs(i);
        if (cum > u) {
            return i;
        }
    }
    return last_positive;  // fp guard: u landed on the top edge
}

}  // namespace

RowPlan draw_rows(Index m, Index r, Rng& rng) {
    if (r < 1) {
        throw std::invalid_argument("draw_rows: r must be >= 1");
    }
    if (m < 1) {
        throw std::invalid_argument("draw_rows: m must be >= 1");
    }
    RowPlan plan;
    plan.source_rows = m;
    plan.mode = SamplingMode::with_replacement;
    plan.seed = rng.seed();
    const double p = 1.0 / static_cast<double>(m);
    const double scale = 1.0 / std::sqrt(static_cast<double>(r) * p);
    plan.draws.reserve(static_cast<std::size_t>(r));
    for (Index t = 0; t < r; ++t) {
        plan.draws.push_back({static_cast<Index>(rng.below(static_cast<std::uint64_t>(m))), p, scale});
    }
    return plan;
}

RowPlan draw_rows_distinct(Index m, Index r, Rng& rng) {
    if (r < 1 || m < 1) {
        throw std::invalid_argument("draw_rows_distinct: m and r must be >= 1");
    }
    if (r > m) {
        throw std::invalid_argument("draw_rows_distinct: r must be <= m");
    }
    std::vector<Index> pool(static_cast<std::size_t>(m));
    std::iota(pool.begin(), pool.end(), Index{0});
    RowPlan plan;
    plan.source_rows = m;
    plan.mode = SamplingMode::without_replacement;
    plan.seed = rng.seed();
    const double p = 1.0 / static_cast<double>(m);
    const double scale = 1.0 / std::sqrt(static_cast<double>(r) * p);
    plan.draws.reserve(static_cast<std::size_t>(r));
    for (Index t = 0; t < r; ++t) {
        const std::uint64_t pick = rng.below(static_cast<std::uint64_t>(m - t));
        std::swap(pool[static_cast<std::size_t>(t + static_cast<Index>(pick))], pool[static_cast<std::size_t>(t)]);
        plan.draws.push_back({pool[static_cast<std::size_t>(t)], p, scale});
    }
    return plan;
}

RowPlan draw_rows_weighted(const Vector& probs, Index r, Rng& rng) {
    if (r < 1) {
        throw std::invalid_argument("draw_rows_weighted: r must be >= 1");
    }
    require_distribution(probs);
    RowPlan plan;
    plan.source_rows = probs.size();
    plan.mode = SamplingMode::with_replacement;
    plan.seed = rng.seed();
    std::vector<bool> active(static_cast<std::size_t>(probs.size()), true);
    plan.draws.reserve(static_cast<std::size_t>(r));
    for (Index t = 0; t < r; ++t) {
        const Index i = categorical_draw(probs, active, 1.0, rng);
        plan.draws.push_back({i, probs(i), 1.0 / std::sqrt(static_cast<double>(r) * probs(i))});
    }
    return plan;
}

SamplingPlan draw_blocks(const Vector& probs, Index g, SamplingMode mode, Rng& rng) {
    if (g < 1) {
        throw std::invalid_argument("draw_blocks: g must be >= 1");
    }
    require_distribution(probs);
    SamplingPlan plan;
    plan.mode = mode;
    plan.seed = rng.seed();
    plan.draws.reserve(static_cast<std::size_t>(g));
    std::vector<bool> active(static_cast<std::size_t>(probs.size()), true);

    if (mode == SamplingMode::without_replacement) {
        const Index positive = (probs.array() > 0.0).count();
        if (g > positive) {
            throw NotEnoughBlocks("draw_blocks: asked for " + std::to_string(g) + " distinct blocks but only " +
                                  std::to_string(positive) + " have positive probability");
        }
    }

    double mass = 1.0;
    for (Index t = 0; t < g; ++t) {
        const Index j = categorical_draw(probs, active, mass, rng);
        const double p = probs(j);
        plan.draws.push_back({j, p, 1.0 / std::sqrt(static_cast<double>(g) * p)});
        if (mode == SamplingMode::without_replacement) {
            active[static_cast<std::size_t>(j)] = false;
            mass -= p;
        }
    }
    return plan;
}

SamplingPlan identity_plan(const BlockPartition& part) {
    const Index big_g = part.num_blocks();
    SamplingPlan plan;
    plan.mode = SamplingMode::without_replacement;
    plan.seed = 0;
    plan.draws.reserve(static_cast<std::size_t>(big_g));
    const double p = 1.0 / static_cast<double>(big_g);
    for (Index j = 0; j < big_g; ++j) {
        plan.draws.push_back({j, p, 1.0});
    }
    return plan;
}

Matrix materialize_columns(const Matrix& a, const BlockPartition& part, const SamplingPlan& plan) {
    if (a.cols() != part.num_columns()) {
        throw DimensionMismatch("materialize_columns: A columns do not match partition");
    }
    if (plan.draws.empty()) {
        throw std::invalid_argument("materialize_columns: empty plan");
    }
    Index total = 0;
    for (const BlockDraw& d : plan.draws) {
        if (d.block < 0 || d.block >= part.num_blocks()) {
            throw DimensionMismatch("materialize_columns: plan references block " + std::to_string(d.block) +
                                    " outside the partition");
        }
        total += part.width(d.block);
    }
    Matrix c(a.rows(), total);
    Index at = 0;
    for (const BlockDraw& d : plan.draws) {
        const BlockRange& r = part.range(d.block);
        c.middleCols(at, r.width()) = a.middleCols(r.begin, r.width()) * d.scale;
        at += r.width();
    }
    return c;
}

Matrix materialize_rows(const Matrix& a, const RowPlan& plan, bool scaled) {
    if (plan.source_rows != a.rows()) {
        throw DimensionMismatch("materialize_rows: plan was drawn for a different row count");
    }
    if (plan.draws.empty()) {
        throw std::invalid_argument("materialize_rows: empty plan");
    }
    Matrix r(plan.num_draws(), a.cols());
    for (Index t = 0; t < plan.num_draws(); ++t) {
        const RowDraw& d = plan.draws[static_cast<std::size_t>(t)];
        if (d.row < 0 || d.row >= a.rows()) {
            throw DimensionMismatch("materialize_rows: row index out of range");
        }
        r.row(t) = scaled ? (a.row(d.row) * d.scale).eval() : a.row(d.row).eval();
    }
    return r;
}

}  // namespace bcur
