#include "bcur/leverage.hpp"

#include <algorithm>
#include <string>

namespace bcur {

namespace {

// Gram deviation check for orthonormal columns.
void require_orthonormal(const Matrix& v, const char* what) {
    if (v.rows() < 1 || v.cols() < 1) {
        throw InvalidBasis(std::string(what) + ": basis must be non-empty");
    }
    if (v.rows() < v.cols()) {
        throw InvalidBasis(std::string(what) + ": more columns than rows cannot be orthonormal");
    }
    const Matrix gram = v.transpose() * v;
    const double dev = (gram - Matrix::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
    if (dev > 1e-8) {
        throw InvalidBasis(std::string(what) + ": column Gram deviates from identity by " + std::to_string(dev));
    }
}

}  // namespace

BlockPartition BlockPartition::equal_blocks(Index n, Index block_size) {
    if (n < 1 || block_size < 1) {
        throw std::invalid_argument("equal_blocks: n and block_size must be >= 1");
    }
    std::vector<BlockRange> ranges;
    for (Index begin = 0; begin < n; begin += block_size) {
        ranges.push_back({begin, std::min(begin + block_size, n)});
    }
    BlockPartition part(n, std::move(ranges));
    part.nominal_s_ = block_size;
    return part;
}

BlockPartition BlockPartition::from_boundaries(Index n, std::span<const Index> cuts) {
    std::vector<BlockRange> ranges;
    Index begin = 0;
    for (Index cut : cuts) {
        if (cut <= begin || cut >= n) {
            throw std::invalid_argument("from_boundaries: cuts must be strictly increasing and inside (0, n)");
        }
        ranges.push_back({begin, cut});
        begin = cut;
    }
    ranges.push_back({begin, n});
    return BlockPartition(n, std::move(ranges));
}

BlockPartition::BlockPartition(Index n, std::vector<BlockRange> ranges) : n_(n), ranges_(std::move(ranges)) {
    if (n_ < 1) {
        throw std::invalid_argument("BlockPartition: n must be >= 1");
    }
    if (ranges_.empty()) {
        throw std::invalid_argument("BlockPartition: at least one block required");
    }
    Index expect = 0;
    for (const BlockRange& r : ranges_) {
        if (r.begin != expect || r.end <= r.begin) {
            throw std::invalid_argument("BlockPartition: ranges must be contiguous, non-empty, and ordered");
        }
        expect = r.end;
    }
    if (expect != n_) {
        throw std::invalid_argument("BlockPartition: ranges must cover [0, n) exactly");
    }
    nominal_s_ = max_width();
}

Index BlockPartition::max_width() const {
    Index w = 0;
    for (const BlockRange& r : ranges_) {
        w = std::max(w, r.width());
    }
    return w;
}

Index BlockPartition::block_of_column(Index j) const {
    if (j < 0 || j >= n_) {
        throw std::out_of_range("block_of_column: column index out of range");
    }
    // ranges are sorted by begin
    auto it = std::upper_bound(ranges_.begin(), ranges_.end(), j,
                               [](Index col, const BlockRange& r) { return col < r.begin; });
    return static_cast<Index>(std::distance(ranges_.begin(), it)) - 1;
}

Vector ScoreVector::distribution() const {
    const double total = scores.sum();
    if (!(total > 0.0)) {
        throw ZeroMatrix("ScoreVector::distribution: scores sum to zero");
    }
    return scores / total;
}

ScoreVector column_leverage(const Matrix& v_k) {
    require_orthonormal(v_k, "column_leverage");
    ScoreVector out;
    out.scores = v_k.rowwise().squaredNorm();
    out.normalizer = static_cast<double>(v_k.cols());
    return out;
}

ScoreVector block_leverage(const Matrix& v_k, const BlockPartition& part) {
    require_orthonormal(v_k, "block_leverage");
    if (v_k.rows() != part.num_columns()) {
        throw DimensionMismatch("block_leverage: partition size does not match V_k rows");
    }
    ScoreVector out;
    out.scores = Vector(part.num_blocks());
    for (Index g = 0; g < part.num_blocks(); ++g) {
        const BlockRange& r = part.range(g);
        out.scores(g) = v_k.middleRows(r.begin, r.width()).squaredNorm();
    }
    out.normalizer = static_cast<double>(v_k.cols());
    return out;
}

Vector column_block_stable_ranks(const Matrix& m, const BlockPartition& part) {
    if (m.cols() != part.num_columns()) {
        throw DimensionMismatch("column_block_stable_ranks: partition size does not match column count");
    }
    Vector out(part.num_blocks());
    for (Index g = 0; g < part.num_blocks(); ++g) {
        const BlockRange& r = part.range(g);
        const Matrix slab = m.middleCols(r.begin, r.width());
        const double fro2 = slab.squaredNorm();
        if (!(fro2 > 0.0)) {
            throw ZeroBlock("column_block_stable_ranks: block " + std::to_string(g) + " has zero Frobenius mass");
        }
        const double spec = spectral_norm(slab);
        out(g) = fro2 / (spec * spec);
    }
    return out;
}

double block_stable_rank(const Matrix& v_k, const BlockPartition& part) {
    require_orthonormal(v_k, "block_stable_rank");
    if (v_k.rows() != part.num_columns()) {
        throw DimensionMismatch("block_stable_rank: partition size does not match V_k rows");
    }
    return column_block_stable_ranks(v_k.transpose(), part).minCoeff();
}

double incoherence(const Matrix& u_k) {
    require_orthonormal(u_k, "incoherence");
    const double max_row = u_k.rowwise().squaredNorm().maxCoeff();
    return static_cast<double>(u_k.rows()) / static_cast<double>(u_k.cols()) * max_row;
}

ScoreVector approx_block_leverage(const Matrix& r, const BlockPartition& part) {
    if (r.cols() != part.num_columns()) {
        throw DimensionMismatch("approx_block_leverage: partition size does not match R columns");
    }
    if (r.isZero(0.0)) {
        throw ZeroMatrix("approx_block_leverage: R is identically zero");
    }
    const SvdResult s = svd(r);
    return block_leverage(s.right, part);
}

}  // namespace bcur
