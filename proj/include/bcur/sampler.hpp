#pragma once

#include <cstdint>
#include <vector>

#include "bcur/leverage.hpp"
#include "bcur/rng.hpp"

namespace bcur {

enum class SamplingMode { with_replacement, without_replacement };

const char* to_string(SamplingMode mode);

struct BlockDraw {
    Index block = 0;
    double probability = 0.0;  // original p_{j_t}, before any renormalization
    double scale = 0.0;        // 1 / sqrt(g * p_{j_t})
};

/// The realized random choice of column blocks: the sparse stand-in for the
/// sampling-and-scaling matrix S.
struct SamplingPlan {
    std::vector<BlockDraw> draws;
    SamplingMode mode = SamplingMode::with_replacement;
    std::uint64_t seed = 0;

    Index num_draws() const { return static_cast<Index>(draws.size()); }
};

struct RowDraw {
    Index row = 0;
    double probability = 0.0;
    double scale = 0.0;  // 1 / sqrt(r * p_i)
};

/// The realized row sample: stand-in for S_R.
struct RowPlan {
    std::vector<RowDraw> draws;
    Index source_rows = 0;
    SamplingMode mode = SamplingMode::with_replacement;
    std::uint64_t seed = 0;

    Index num_draws() const { return static_cast<Index>(draws.size()); }
};

/// r rows i.i.d. uniform over [0, m) with p_i = 1/m.
RowPlan draw_rows(Index m, Index r, Rng& rng);

/// r distinct rows, uniform; for pipelines where duplicated rows are
/// meaningless. Requires r <= m. Scales are kept at the uniform formula and
/// carry no probabilistic guarantee.
RowPlan draw_rows_distinct(Index m, Index r, Rng& rng);

/// r rows i.i.d. from an explicit distribution (full-SVD row leverage path).
RowPlan draw_rows_weighted(const Vector& probs, Index r, Rng& rng);

/// g block draws from a distribution over blocks (must sum to one within
/// 1e-10). Without replacement renormalizes after each removal but keeps the
/// scale at 1/sqrt(g * p) with the original probability.
SamplingPlan draw_blocks(const Vector& probs, Index g, SamplingMode mode, Rng& rng);

/// Deterministic all-blocks plan: every block exactly once, in order, with
/// scale exactly one. Outside the probabilistic model; used as an oracle.
SamplingPlan identity_plan(const BlockPartition& part);

/// C = A S: drawn blocks of A scaled and concatenated in draw order.
Matrix materialize_columns(const Matrix& a, const BlockPartition& part, const SamplingPlan& plan);

/// R = S_R^T A: the planned rows, scaled by 1/sqrt(r p_i) when scaled is true
/// and raw otherwise.
Matrix materialize_rows(const Matrix& a, const RowPlan& plan, bool scaled);

}  // namespace bcur
