#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bcur/blockcur.hpp"

namespace bcur {

// ---------------------------------------------------------------------------
// Synthetic data

/// A = U V with i.i.d. Gaussian factors (rank exactly k for zero noise), plus
/// optional entrywise Gaussian noise.
Matrix synthetic_low_rank(Index m, Index n, Index k, double noise_sigma, Rng& rng);

/// Time-series surrogate with a planted high-importance block: a smooth
/// low-rank base plus a rank-one burst confined to one block, standing in for
/// the private biometric traces.
struct SurrogateSpec {
    Index m = 24;
    Index n = 1000;
    Index base_rank = 4;
    Index block_size = 100;
    Index planted_block = 3;
    double spike_amplitude = 0.8;  // burst singular value relative to the base sigma_1
    double noise_sigma = 0.01;
};

Matrix planted_spike_surrogate(const SurrogateSpec& spec, Rng& rng);

// ---------------------------------------------------------------------------
// Partitioned-storage cost simulator

struct StorageLayout {
    Index executors = 1;
    std::vector<Index> placement;  // block index -> executor
    double per_contact_latency = 1.0;
    double per_element_cost = 0.0;
};

StorageLayout round_robin_layout(Index num_blocks, Index executors, double per_contact_latency = 1.0,
                                 double per_element_cost = 0.0);
StorageLayout random_layout(Index num_blocks, Index executors, Rng& rng, double per_contact_latency = 1.0,
                            double per_element_cost = 0.0);

enum class AccessMode { block, column };

const char* to_string(AccessMode mode);

struct AccessReport {
    AccessMode mode = AccessMode::block;
    Index items_fetched = 0;        // columns fetched, counting repeats
    Index executors_contacted = 0;  // distinct executors touched
    double synthetic_cost = 0.0;
};

/// Fetch whole blocks: one contact per distinct executor owning a drawn block.
AccessReport simulate_block_access(const StorageLayout& layout, const BlockPartition& part,
                                   const SamplingPlan& plan);

/// Fetch individual columns: contacts are the distinct executors owning the
/// partitions of each requested column.
AccessReport simulate_column_access(const StorageLayout& layout, const BlockPartition& part,
                                    std::span<const Index> columns);

/// The fetched column set induced by a block plan (repeats preserved).
std::vector<Index> plan_columns(const BlockPartition& part, const SamplingPlan& plan);

/// Sampling-operation counts with unit constants:
///   traditional: k^2/eps^2 ln(1/delta) + k^4/eps^6 ln^3(1/delta)
///   block:       k^2/eps^2 ln(1/delta) + k^4/(alpha eps^6) ln^3(1/delta)
struct OpsCount {
    double traditional = 0.0;
    double block = 0.0;
};

OpsCount ops_count_formulas(Index k, double eps, double delta, double alpha);

// ---------------------------------------------------------------------------
// Figure-style pipelines

struct CoveragePoint {
    Index k = 0;
    double coverage = 0.0;  // ||A_k||_F / ||A||_F
};

std::vector<CoveragePoint> coverage_curve(const Matrix& a, Index k_max);

struct TimelineEntry {
    Index block = 0;
    Index begin_col = 0;
    Index end_col = 0;
    double score = 0.0;
    double probability = 0.0;
    std::optional<double> start_seconds;  // present when a sample rate was given
    std::optional<double> end_seconds;
};

std::vector<TimelineEntry> leverage_timeline(const Matrix& a, const BlockPartition& part, Index k,
                                             double sample_rate_hz = 0.0);

struct SweepCell {
    Index g = 0;
    std::uint64_t seed = 0;
    UVariant variant = UVariant::full;
    double value = 0.0;  // rel_to_best_k, or rel_to_A when A is exactly rank k
};

struct SweepRow {
    Index g = 0;
    UVariant variant = UVariant::full;
    double mean = 0.0;
    double stddev = 0.0;
    double median = 0.0;
};

struct SweepResult {
    std::vector<SweepCell> cells;  // sorted by (g, seed, variant)
    std::vector<SweepRow> rows;    // sorted by (g, variant)
};

/// Error-vs-g sweep. Each (g, seed) cell reruns the decomposition with its
/// own generator seeded from the list, so the whole table is reproducible.
/// Blocks are drawn without replacement (resampling a block is wasted work in
/// practice); rows follow `opts`.
SweepResult error_vs_g_sweep(const Matrix& a, const BlockPartition& part, Index k, Index r,
                             std::span<const Index> g_list, std::span<const std::uint64_t> seeds,
                             const CurOptions& opts = {.block_mode = SamplingMode::without_replacement});

/// Held-out-row imputation: m - holdout rows are observed in full, the rest
/// only on the drawn blocks; the held-out traces are reconstructed as
/// (A_held S) W^+ R_obs and scored by relative Frobenius error.
SweepResult heldout_imputation_sweep(const Matrix& a, const BlockPartition& part, Index k, Index holdout,
                                     std::span<const Index> g_list, std::span<const std::uint64_t> seeds);

}  // namespace bcur
