#pragma once

#include <optional>
#include <vector>

#include "bcur/sampler.hpp"

namespace bcur {

/// How rows are chosen in step 1: uniform (incoherence-based guarantee) or by
/// exact row leverage scores of A (full-SVD path, no incoherence assumption).
enum class RowSampling { uniform, leverage };

enum class UVariant { full, rank_k };

const char* to_string(RowSampling mode);
const char* to_string(UVariant variant);

struct ErrorReport {
    double abs_err = 0.0;                   // ||A - A_hat||_F
    double rel_to_a = 0.0;                  // abs_err / ||A||_F
    std::optional<double> rel_to_best_k;    // abs_err / ||A - A_k||_F, absent for exactly rank-k A
    Index k = 0;
    UVariant variant = UVariant::full;
};

/// ||A||_F and ||A - A_k||_F, computed once and shared across reports.
struct ErrorBaseline {
    double a_norm = 0.0;
    double best_k_residual = 0.0;
    Index k = 0;
};

ErrorBaseline error_baseline(const Matrix& a, Index k);

struct CurOptions {
    SamplingMode block_mode = SamplingMode::with_replacement;
    RowSampling row_sampling = RowSampling::uniform;
    /// Draw distinct rows (pipeline path; duplicated traces are meaningless).
    bool distinct_rows = false;
};

struct CurResult {
    Matrix c;  // m x c, scaled column blocks of A
    Matrix r;  // r x n, sampled rows
    Matrix w;  // r x c, scaled intersection W = R S
    Matrix u;  // c x r, U = W^+ (or its rank-k truncation after rank_k_cur)
    RowPlan row_plan;
    SamplingPlan block_plan;
    ErrorReport metrics_u;
    ErrorReport metrics_uk;
    std::vector<double> trial_errors;  // abs_err of every boosting trial
};

/// Algorithm: uniform rows -> R; approximate block leverage of R -> block
/// distribution; g blocks -> C (from A) and W (from R, same plan and scales);
/// U = W^+. Metrics are computed for both the U and U_k variants.
/// `baseline` may carry a precomputed ||A - A_k||_F to avoid re-running the
/// SVD of A in sweeps.
CurResult block_cur(const Matrix& a, const BlockPartition& part, Index k, Index r, Index g,
                    const CurOptions& opts, Rng& rng, const ErrorBaseline* baseline = nullptr);

/// Runs t independent trials on the same generator stream and keeps the
/// result with minimum abs_err; all t errors are recorded.
CurResult block_cur_boosted(const Matrix& a, const BlockPartition& part, Index k, Index r, Index g, Index t,
                            const CurOptions& opts, Rng& rng, const ErrorBaseline* baseline = nullptr);

/// Replaces U by its best rank-k approximation, making C U_k R exactly
/// rank <= k, and refreshes the metrics.
CurResult rank_k_cur(const Matrix& a, const CurResult& result, Index k, const ErrorBaseline* baseline = nullptr);

ErrorReport error_report(const Matrix& a, const Matrix& c, const Matrix& u, const Matrix& r, Index k,
                         UVariant variant = UVariant::full, const ErrorBaseline* baseline = nullptr);

/// Boosting repetition count t = ceil(ln(1/delta)).
Index boost_trials(double delta);

}  // namespace bcur
