#pragma once

#include <vector>

#include "bcur/matcore.hpp"

namespace bcur {

struct BlockRange {
    Index begin = 0;  // inclusive
    Index end = 0;    // exclusive
    Index width() const { return end - begin; }
};

/// Predefined grouping of the n columns into G contiguous, disjoint blocks
/// covering [0, n). Blocks may have unequal widths; the nominal block size s
/// is kept as metadata only.
class BlockPartition {
public:
    /// Equal blocks of width `block_size`; the last block is ragged when
    /// block_size does not divide n.
    static BlockPartition equal_blocks(Index n, Index block_size);

    /// Blocks delimited by strictly increasing interior cut points in (0, n).
    static BlockPartition from_boundaries(Index n, std::span<const Index> cuts);

    BlockPartition(Index n, std::vector<BlockRange> ranges);

    Index num_columns() const { return n_; }
    Index num_blocks() const { return static_cast<Index>(ranges_.size()); }
    const BlockRange& range(Index g) const { return ranges_.at(static_cast<std::size_t>(g)); }
    Index width(Index g) const { return range(g).width(); }
    Index max_width() const;

    /// Nominal block size; meaningful when the partition was built from
    /// equal_blocks, otherwise the maximum width.
    Index nominal_block_size() const { return nominal_s_; }

    const std::vector<BlockRange>& ranges() const { return ranges_; }

    /// Index of the block owning column j.
    Index block_of_column(Index j) const;

private:
    Index n_ = 0;
    Index nominal_s_ = 0;
    std::vector<BlockRange> ranges_;
};

/// Leverage-style scores, one per block (or per column), together with the
/// theoretical normalizer (k or the rank used). probabilities() divides by the
/// normalizer; distribution() renormalizes to sum exactly one for sampling.
struct ScoreVector {
    Vector scores;
    double normalizer = 1.0;

    Vector probabilities() const { return scores / normalizer; }
    Vector distribution() const;
};

/// Definition-1 column leverage: score_j = || row j of V_k ||^2. V_k must have
/// orthonormal columns. Sum of scores equals k.
ScoreVector column_leverage(const Matrix& v_k);

/// Definition-2 block leverage: l_g = || V_k^T E_g ||_F^2.
ScoreVector block_leverage(const Matrix& v_k, const BlockPartition& part);

/// Stable rank ||.||_F^2 / ||.||_2^2 of each column block of M (columns of M
/// are grouped by `part`; for Definition 3 pass M = V_k^T). Throws ZeroBlock
/// when a block has zero Frobenius mass.
Vector column_block_stable_ranks(const Matrix& m, const BlockPartition& part);

/// Definition-3 block stable rank: min over blocks of the stable rank of
/// V_k^T E_g. Between 1 and the widest block.
double block_stable_rank(const Matrix& v_k, const BlockPartition& part);

/// Definition-4 column space incoherence mu = (m/k) max_i || U_k^T e_i ||^2.
double incoherence(const Matrix& u_k);

/// Approximate block leverage scores from a row sample R: block scores of the
/// right singular vectors of R, with normalizer rank(R).
ScoreVector approx_block_leverage(const Matrix& r, const BlockPartition& part);

}  // namespace bcur
