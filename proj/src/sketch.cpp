#include "bcur/sketch.hpp"

#include <algorithm>
#include <cmath>

namespace bcur {

ScoreVector frobenius_block_probs(const Matrix& a, const BlockPartition& part, double beta) {
    if (a.cols() != part.num_columns()) {
        throw DimensionMismatch("frobenius_block_probs: partition does not match A columns");
    }
    if (!(beta > 0.0 && beta <= 1.0)) {
        throw std::invalid_argument("frobenius_block_probs: beta must be in (0, 1]");
    }
    const double total = a.squaredNorm();
    if (!(total > 0.0)) {
        throw ZeroMatrix("frobenius_block_probs: A is identically zero");
    }
    const Index big_g = part.num_blocks();
    ScoreVector out;
    out.scores = Vector(big_g);
    for (Index g = 0; g < big_g; ++g) {
        const BlockRange& r = part.range(g);
        const double share = a.middleCols(r.begin, r.width()).squaredNorm() / total;
        out.scores(g) = beta * share + (1.0 - beta) / static_cast<double>(big_g);
    }
    out.normalizer = 1.0;
    return out;
}

double matrix_block_stable_rank(const Matrix& a, const BlockPartition& part) {
    return column_block_stable_ranks(a, part).minCoeff();
}

Matrix product_with_plan(const Matrix& a, const Matrix& b, const BlockPartition& part, const SamplingPlan& plan) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("product_with_plan: inner dimensions of A and B differ");
    }
    const Matrix c = materialize_columns(a, part, plan);
    const Matrix r = materialize_columns(b.transpose(), part, plan).transpose();
    return c * r;
}

Matrix approx_product(const Matrix& a, const Matrix& b, const BlockPartition& part, const Vector& probs, Index g,
                      Rng& rng) {
    const SamplingPlan plan = draw_blocks(probs, g, SamplingMode::with_replacement, rng);
    return product_with_plan(a, b, part, plan);
}

Matrix regression_with_plan(const Matrix& a, const Matrix& b, const BlockPartition& part, const SamplingPlan& plan) {
    if (a.cols() != b.cols()) {
        throw DimensionMismatch("regression_with_plan: A and B must have the same column count");
    }
    const Matrix as = materialize_columns(a, part, plan);
    const Matrix bs = materialize_columns(b, part, plan);
    return as * pseudoinverse(bs);
}

Matrix blocked_regression(const Matrix& a, const Matrix& b, const BlockPartition& part, Index g, Rng& rng) {
    if (b.isZero(0.0)) {
        throw ZeroMatrix("blocked_regression: B is identically zero");
    }
    const ScoreVector probs = approx_block_leverage(b, part);
    const SamplingPlan plan = draw_blocks(probs.distribution(), g, SamplingMode::with_replacement, rng);
    return regression_with_plan(a, b, part, plan);
}

CssResult block_css(const Matrix& a, const BlockPartition& part, Index k, Index g, Rng& rng) {
    if (k < 1) {
        throw std::invalid_argument("block_css: k must be >= 1");
    }
    const SvdResult s = truncate(svd(a), k);
    if (s.rank == 0) {
        throw ZeroMatrix("block_css: A is identically zero");
    }
    const ScoreVector scores = block_leverage(s.right, part);
    CssResult out;
    out.plan = draw_blocks(scores.distribution(), g, SamplingMode::with_replacement, rng);
    out.c = materialize_columns(a, part, out.plan);
    out.projection_error = frobenius_norm(a - out.c * (pseudoinverse(out.c) * a));
    return out;
}

Index mult_sample_count(double delta, double eps, double alpha) {
    if (!(delta > 0.0 && delta < 1.0) || !(eps > 0.0 && eps < 1.0) || !(alpha >= 1.0)) {
        throw std::invalid_argument("mult_sample_count: need delta, eps in (0,1) and alpha >= 1");
    }
    return static_cast<Index>(std::ceil(1.0 / (delta * delta * eps * eps * alpha)));
}

Index regression_sample_count(Index k, double eps, double delta, double alpha, double constant) {
    if (k < 1 || !(delta > 0.0 && delta < 1.0) || !(eps > 0.0 && eps < 1.0) || !(alpha >= 1.0) || !(constant > 0.0)) {
        throw std::invalid_argument("regression_sample_count: parameter out of domain");
    }
    const double kk = static_cast<double>(k);
    return static_cast<Index>(
        std::ceil(constant * kk * kk / (alpha * delta * delta * delta * delta * eps * eps)));
}

namespace {

HarnessResult summarize(std::vector<TrialRecord> trials, double delta, Index g) {
    HarnessResult out;
    out.trials = std::move(trials);
    out.delta = delta;
    out.g = g;
    const auto n = static_cast<double>(out.trials.size());
    Index violations = 0;
    for (const TrialRecord& t : out.trials) {
        violations += t.violated ? 1 : 0;
    }
    out.violation_rate = n > 0 ? static_cast<double>(violations) / n : 0.0;
    out.binomial_sigma = n > 0 ? std::sqrt(delta * (1.0 - delta) / n) : 0.0;
    return out;
}

}  // namespace

HarnessResult validate_mult(const Matrix& a, const Matrix& b, const BlockPartition& part, double beta, double delta,
                            Index g, Index trials, Rng& rng) {
    if (trials < 1) {
        throw std::invalid_argument("validate_mult: trials must be >= 1");
    }
    const ScoreVector probs = frobenius_block_probs(a, part, beta);
    const Vector dist = probs.distribution();
    const double alpha = matrix_block_stable_rank(a, part);
    if (g < 1) {
        g = mult_sample_count(delta, 0.5, alpha);
    }
    const Matrix exact = a * b;
    const double bound =
        frobenius_norm(a) * frobenius_norm(b) / (delta * std::sqrt(beta * static_cast<double>(g) * alpha));
    std::vector<TrialRecord> records;
    records.reserve(static_cast<std::size_t>(trials));
    for (Index t = 0; t < trials; ++t) {
        const Matrix cr = approx_product(a, b, part, dist, g, rng);
        const double err = frobenius_norm(exact - cr);
        records.push_back({t, err, bound, err > bound});
    }
    return summarize(std::move(records), delta, g);
}

HarnessResult validate_regression(const Matrix& a, const Matrix& b, const BlockPartition& part, double eps,
                                  double delta, Index g, Index trials, Rng& rng) {
    if (trials < 1) {
        throw std::invalid_argument("validate_regression: trials must be >= 1");
    }
    if (b.isZero(0.0)) {
        throw ZeroMatrix("validate_regression: B is identically zero");
    }
    const SvdResult sb = svd(b);
    const ScoreVector probs = block_leverage(sb.right, part);
    const Vector dist = probs.distribution();
    if (g < 1) {
        const double alpha = block_stable_rank(sb.right, part);
        g = regression_sample_count(sb.rank, eps, delta, alpha, 0.004);
    }
    const double optimal = frobenius_norm(a - project_onto_rowspace(a, b));
    const double bound = (1.0 + eps) * optimal;
    std::vector<TrialRecord> records;
    records.reserve(static_cast<std::size_t>(trials));
    for (Index t = 0; t < trials; ++t) {
        const SamplingPlan plan = draw_blocks(dist, g, SamplingMode::with_replacement, rng);
        const Matrix x = regression_with_plan(a, b, part, plan);
        const double residual = frobenius_norm(a - x * b);
        records.push_back({t, residual, bound, residual > bound});
    }
    return summarize(std::move(records), delta, g);
}

HarnessResult validate_cur(const Matrix& a, const BlockPartition& part, Index k, Index r, Index g, double eps,
                           double delta, Index trials, Index pilot_trials, Rng& rng) {
    if (trials < 1) {
        throw std::invalid_argument("validate_cur: trials must be >= 1");
    }
    const ErrorBaseline base = error_baseline(a, k);
    if (base.best_k_residual < 1e-12) {
        throw std::invalid_argument("validate_cur: A is exactly rank k; rel_to_best_k is undefined");
    }
    const CurOptions opts;

    if (eps < 0.0) {
        // Pilot: 70th percentile of the single-run ratio, matching the
        // non-boosted success probability 0.7.
        if (pilot_trials < 1) {
            throw std::invalid_argument("validate_cur: pilot_trials must be >= 1 when eps is calibrated");
        }
        std::vector<double> ratios;
        ratios.reserve(static_cast<std::size_t>(pilot_trials));
        for (Index t = 0; t < pilot_trials; ++t) {
            const CurResult res = block_cur(a, part, k, r, g, opts, rng, &base);
            ratios.push_back(res.metrics_u.abs_err / base.best_k_residual);
        }
        std::sort(ratios.begin(), ratios.end());
        const auto at = static_cast<std::size_t>(0.7 * static_cast<double>(pilot_trials - 1));
        eps = std::max(ratios[at] - 1.0, 1e-6);
    }

    const Index t_boost = boost_trials(delta);
    const double bound = 1.0 + eps;
    std::vector<TrialRecord> records;
    records.reserve(static_cast<std::size_t>(trials));
    for (Index t = 0; t < trials; ++t) {
        const CurResult res = block_cur_boosted(a, part, k, r, g, t_boost, opts, rng, &base);
        const double ratio = res.metrics_u.abs_err / base.best_k_residual;
        records.push_back({t, ratio, bound, ratio > bound});
    }
    return summarize(std::move(records), delta, g);
}

}  // namespace bcur
