#pragma once

#include <filesystem>
#include <iosfwd>

#include "bcur/bench.hpp"
#include "bcur/sketch.hpp"

namespace bcur {

// Matrix interchange formats:
//  - CSV, row-major, optional single header line; full round-trip precision.
//  - binary: magic "BCUR", little-endian u64 rows, u64 cols, then rows*cols
//    f64 entries row-major.

/// Loads either format, sniffing the BCUR magic first.
Matrix load_matrix(const std::filesystem::path& path);

Matrix load_matrix_csv(const std::filesystem::path& path);
Matrix load_matrix_binary(const std::filesystem::path& path);

/// Writes by extension: ".bcur" selects the binary format, anything else CSV.
void save_matrix(const std::filesystem::path& path, const Matrix& a);
void save_matrix_csv(const std::filesystem::path& path, const Matrix& a);
void save_matrix_binary(const std::filesystem::path& path, const Matrix& a);

// CSV emitters for the experiment drivers. Headers are part of the format.

void write_scores_csv(std::ostream& out, const BlockPartition& part, const ScoreVector& scores,
                      double stable_rank, double mu);
void write_sweep_csv(std::ostream& out, const SweepResult& sweep);
void write_sweep_cells_csv(std::ostream& out, const SweepResult& sweep);
void write_coverage_csv(std::ostream& out, const std::vector<CoveragePoint>& curve);
void write_timeline_csv(std::ostream& out, const std::vector<TimelineEntry>& timeline);
void write_harness_csv(std::ostream& out, const HarnessResult& result);

}  // namespace bcur
