#include "bcur/matcore.hpp"

#include <cmath>
#include <string>

namespace bcur {

Matrix make_dense(Index rows, Index cols, std::span<const double> entries) {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("make_dense: matrix must have at least one row and one column");
    }
    if (static_cast<Index>(entries.size()) != rows * cols) {
        throw std::invalid_argument("make_dense: entry count " + std::to_string(entries.size()) +
                                    " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
    }
    Matrix a(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            a(i, j) = entries[static_cast<std::size_t>(i * cols + j)];
        }
    }
    require_finite(a, "make_dense");
    return a;
}

void require_finite(const Matrix& a, const char* what) {
    if (a.rows() < 1 || a.cols() < 1) {
        throw std::invalid_argument(std::string(what) + ": matrix must be non-empty");
    }
    if (!a.allFinite()) {
        throw std::invalid_argument(std::string(what) + ": matrix contains NaN or Inf");
    }
}

double rank_tolerance(Index rows, Index cols, double sigma_max) {
    return 1e-12 * static_cast<double>(std::max(rows, cols)) * sigma_max;
}

SvdResult svd(const Matrix& a) {
    Eigen::BDCSVD<Matrix> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (solver.info() != Eigen::Success) {
        throw IterationFailure("svd: solver did not converge");
    }
    const Vector& sv = solver.singularValues();
    const double tol = sv.size() > 0 ? rank_tolerance(a.rows(), a.cols(), sv(0)) : 0.0;
    Index rank = 0;
    while (rank < sv.size() && sv(rank) > tol && sv(rank) > 0.0) {
        ++rank;
    }
    SvdResult out;
    out.rank = rank;
    out.left = solver.matrixU().leftCols(rank);
    out.singular_values = sv.head(rank);
    out.right = solver.matrixV().leftCols(rank);
    return out;
}

SvdResult truncate(const SvdResult& s, Index k) {
    if (k < 1) {
        throw std::invalid_argument("truncate: k must be >= 1");
    }
    const Index keep = std::min(k, s.rank);
    SvdResult out;
    out.rank = keep;
    out.left = s.left.leftCols(keep);
    out.singular_values = s.singular_values.head(keep);
    out.right = s.right.leftCols(keep);
    return out;
}

Matrix reconstruct(const SvdResult& s, Index rows, Index cols) {
    if (s.rank == 0) {
        return Matrix::Zero(rows, cols);
    }
    if (s.left.rows() != rows || s.right.rows() != cols) {
        throw DimensionMismatch("reconstruct: factor shapes do not match requested size");
    }
    return s.left * s.singular_values.asDiagonal() * s.right.transpose();
}

Matrix best_rank_k(const Matrix& a, Index k) {
    return reconstruct(truncate(svd(a), k), a.rows(), a.cols());
}

Matrix pseudoinverse(const Matrix& a) {
    const SvdResult s = svd(a);
    if (s.rank == 0) {
        return Matrix::Zero(a.cols(), a.rows());
    }
    return s.right * s.singular_values.cwiseInverse().asDiagonal() * s.left.transpose();
}

double frobenius_norm(const Matrix& a) {
    return a.norm();
}

double spectral_norm(const Matrix& a) {
    Eigen::BDCSVD<Matrix> solver(a);
    if (solver.info() != Eigen::Success) {
        throw IterationFailure("spectral_norm: solver did not converge");
    }
    return solver.singularValues().size() > 0 ? solver.singularValues()(0) : 0.0;
}

Matrix project_onto_rowspace(const Matrix& a, const Matrix& r) {
    if (a.cols() != r.cols()) {
        throw DimensionMismatch("project_onto_rowspace: A and R must have the same column count");
    }
    return a * (pseudoinverse(r) * r);
}

}  // namespace bcur
