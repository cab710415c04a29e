#include "bcur/blockcur.hpp"

#include <cmath>
#include <string>

namespace bcur {

const char* to_string(RowSampling mode) {
    return mode == RowSampling::uniform ? "uniform" : "leverage";
}

const char* to_string(UVariant variant) {
    return variant == UVariant::full ? "U" : "U_k";
}

ErrorBaseline error_baseline(const Matrix& a, Index k) {
    if (k < 1) {
        throw std::invalid_argument("error_baseline: k must be >= 1");
    }
    ErrorBaseline base;
    base.k = k;
    base.a_norm = frobenius_norm(a);
    const SvdResult s = svd(a);
    // ||A - A_k||_F^2 = sum of discarded squared singular values
    double tail = 0.0;
    for (Index i = k; i < s.rank; ++i) {
        tail += s.singular_values(i) * s.singular_values(i);
    }
    base.best_k_residual = std::sqrt(tail);
    return base;
}

ErrorReport error_report(const Matrix& a, const Matrix& c, const Matrix& u, const Matrix& r, Index k,
                         UVariant variant, const ErrorBaseline* baseline) {
    if (c.rows() != a.rows() || r.cols() != a.cols() || u.rows() != c.cols() || u.cols() != r.rows()) {
        throw DimensionMismatch("error_report: C U R shapes do not compose to the shape of A");
    }
    ErrorBaseline local;
    if (baseline == nullptr || baseline->k != k) {
        local = error_baseline(a, k);
        baseline = &local;
    }
    ErrorReport rep;
    rep.k = k;
    rep.variant = variant;
    rep.abs_err = frobenius_norm(a - c * (u * r));
    rep.rel_to_a = baseline->a_norm > 0.0 ? rep.abs_err / baseline->a_norm : 0.0;
    if (baseline->best_k_residual >= 1e-12) {
        rep.rel_to_best_k = rep.abs_err / baseline->best_k_residual;
    }
    return rep;
}

CurResult block_cur(const Matrix& a, const BlockPartition& part, Index k, Index r, Index g,
                    const CurOptions& opts, Rng& rng, const ErrorBaseline* baseline) {
    if (k < 1 || k > std::min(a.rows(), a.cols())) {
        throw std::invalid_argument("block_cur: need 1 <= k <= min(m, n)");
    }
    if (r < 1 || g < 1) {
        throw std::invalid_argument("block_cur: r and g must be >= 1");
    }
    if (a.cols() != part.num_columns()) {
        throw DimensionMismatch("block_cur: partition does not match A columns");
    }

    ErrorBaseline local;
    if (baseline == nullptr || baseline->k != k) {
        local = error_baseline(a, k);
        baseline = &local;
    }

    CurResult res;

    // Step 1: row subset selection.
    bool scaled_rows = true;
    switch (opts.row_sampling) {
        case RowSampling::uniform:
            if (opts.distinct_rows) {
                res.row_plan = draw_rows_distinct(a.rows(), r, rng);
                scaled_rows = false;  // raw traces
            } else {
                res.row_plan = draw_rows(a.rows(), r, rng);
            }
            break;
        case RowSampling::leverage: {
            const ScoreVector row_scores = column_leverage(truncate(svd(a), k).left);
            res.row_plan = draw_rows_weighted(row_scores.distribution(), r, rng);
            break;
        }
    }
    res.r = materialize_rows(a, res.row_plan, scaled_rows);
    if (res.r.isZero(0.0)) {
        throw DegenerateR("block_cur: sampled row matrix R is identically zero");
    }

    // Step 2: column block subset selection from approximate block leverage.
    const ScoreVector block_scores = approx_block_leverage(res.r, part);
    res.block_plan = draw_blocks(block_scores.distribution(), g, opts.block_mode, rng);
    res.c = materialize_columns(a, part, res.block_plan);
    res.w = materialize_columns(res.r, part, res.block_plan);

    // Step 3: CUR approximation.
    res.u = pseudoinverse(res.w);
    res.metrics_u = error_report(a, res.c, res.u, res.r, k, UVariant::full, baseline);
    const Matrix u_k = best_rank_k(res.u, k);
    res.metrics_uk = error_report(a, res.c, u_k, res.r, k, UVariant::rank_k, baseline);
    res.trial_errors = {res.metrics_u.abs_err};
    return res;
}

CurResult block_cur_boosted(const Matrix& a, const BlockPartition& part, Index k, Index r, Index g, Index t,
                            const CurOptions& opts, Rng& rng, const ErrorBaseline* baseline) {
    if (t < 1) {
        throw std::invalid_argument("block_cur_boosted: t must be >= 1");
    }
    ErrorBaseline local;
    if (baseline == nullptr || baseline->k != k) {
        local = error_baseline(a, k);
        baseline = &local;
    }
    CurResult best;
    std::vector<double> errors;
    errors.reserve(static_cast<std::size_t>(t));
    for (Index trial = 0; trial < t; ++trial) {
        CurResult cur = block_cur(a, part, k, r, g, opts, rng, baseline);
        errors.push_back(cur.metrics_u.abs_err);
        if (trial == 0 || cur.metrics_u.abs_err < best.metrics_u.abs_err) {
            best = std::move(cur);
        }
    }
    best.trial_errors = std::move(errors);
    return best;
}

CurResult rank_k_cur(const Matrix& a, const CurResult& result, Index k, const ErrorBaseline* baseline) {
    if (k < 1) {
        throw std::invalid_argument("rank_k_cur: k must be >= 1");
    }
    CurResult out = result;
    out.u = best_rank_k(result.u, k);
    out.metrics_u = error_report(a, out.c, out.u, out.r, k, UVariant::rank_k, baseline);
    out.metrics_uk = out.metrics_u;
    return out;
}

Index boost_trials(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("boost_trials: delta must be in (0, 1)");
    }
    return static_cast<Index>(std::ceil(std::log(1.0 / delta)));
}

}  // namespace bcur
