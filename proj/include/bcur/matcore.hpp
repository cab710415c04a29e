#pragma once

#include <Eigen/Dense>
#include <span>

#include "bcur/errors.hpp"

namespace bcur {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Builds an m x n matrix from row-major entries, rejecting empty shapes and
/// non-finite values. This is the checked construction path for data coming
/// from files or user input; internal kernels pass Matrix values around freely.
Matrix make_dense(Index rows, Index cols, std::span<const double> entries);

/// Throws std::invalid_argument if A is empty or contains NaN/Inf.
void require_finite(const Matrix& a, const char* what = "matrix");

/// Thin (economy) SVD truncated to the numerical rank.
struct SvdResult {
    Matrix left;             // m x rank, orthonormal columns
    Vector singular_values;  // length rank, non-increasing, all > 0
    Matrix right;            // n x rank, orthonormal columns
    Index rank = 0;
};

/// Cutoff below which singular values are treated as zero.
double rank_tolerance(Index rows, Index cols, double sigma_max);

SvdResult svd(const Matrix& a);

/// Keeps the min(k, rank) leading singular triples. k >= 1.
SvdResult truncate(const SvdResult& s, Index k);

/// left * diag(sigma) * right^T with the original shape.
Matrix reconstruct(const SvdResult& s, Index rows, Index cols);

/// Best rank-k approximation A_k in Frobenius norm.
Matrix best_rank_k(const Matrix& a, Index k);

Matrix pseudoinverse(const Matrix& a);

double frobenius_norm(const Matrix& a);
double spectral_norm(const Matrix& a);

/// A * R^+ * R, the projection of A onto the row space of R.
Matrix project_onto_rowspace(const Matrix& a, const Matrix& r);

}  // namespace bcur
