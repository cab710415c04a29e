#pragma once

#include "bcur/blockcur.hpp"
#include "bcur/sampler.hpp"

namespace bcur {

/// Frobenius-mass block sampling probabilities, optionally blended with the
/// uniform distribution: p_i = beta * f_i + (1 - beta) / G, where f_i is the
/// block's share of ||A||_F^2. Satisfies p_i >= beta * f_i.
ScoreVector frobenius_block_probs(const Matrix& a, const BlockPartition& part, double beta = 1.0);

/// Stable rank of the least-informative column block of A itself:
/// min_i ||A^(i)||_F^2 / ||A^(i)||_2^2.
double matrix_block_stable_rank(const Matrix& a, const BlockPartition& part);

/// One block-sampled product estimate: C R where C takes g scaled column
/// blocks of A and R the matching row blocks of B under the same plan.
/// E[C R] = A B.
Matrix approx_product(const Matrix& a, const Matrix& b, const BlockPartition& part, const Vector& probs, Index g,
                      Rng& rng);

/// Same estimate under an explicit plan (e.g. the identity plan).
Matrix product_with_plan(const Matrix& a, const Matrix& b, const BlockPartition& part, const SamplingPlan& plan);

/// Approximate generalized l2 regression: X = (A S)(B S)^+ with S drawn from
/// the block leverage distribution of B.
Matrix blocked_regression(const Matrix& a, const Matrix& b, const BlockPartition& part, Index g, Rng& rng);

Matrix regression_with_plan(const Matrix& a, const Matrix& b, const BlockPartition& part, const SamplingPlan& plan);

struct CssResult {
    Matrix c;
    double projection_error = 0.0;  // ||A - C C^+ A||_F
    SamplingPlan plan;
};

/// Block column subset selection: g blocks by exact block leverage at rank k.
CssResult block_css(const Matrix& a, const BlockPartition& part, Index k, Index g, Rng& rng);

// ---------------------------------------------------------------------------
// Monte Carlo bound-validation harnesses. They report the full per-trial
// record so the slack of the Markov-based bounds stays visible.

struct TrialRecord {
    Index trial = 0;
    double error = 0.0;
    double bound = 0.0;
    bool violated = false;
};

struct HarnessResult {
    std::vector<TrialRecord> trials;
    double delta = 0.0;
    double violation_rate = 0.0;
    double binomial_sigma = 0.0;  // sqrt(delta (1 - delta) / trials)
    Index g = 0;

    bool passed() const { return violation_rate <= delta + 2.0 * binomial_sigma; }
};

/// Number of block draws for the multiplication bound at the given knobs,
/// with unit constant: ceil(1 / (delta^2 eps^2 alpha)).
Index mult_sample_count(double delta, double eps, double alpha);

/// Number of block draws for the regression bound,
/// ceil(constant * k^2 / (alpha delta^4 eps^2)). The proof constant (288) is
/// far too pessimistic to run, so it is exposed as a parameter.
Index regression_sample_count(Index k, double eps, double delta, double alpha, double constant);

/// Validates || A B - C R ||_F <= ||A||_F ||B||_F / (delta sqrt(beta g alpha))
/// over `trials` independent plans.
HarnessResult validate_mult(const Matrix& a, const Matrix& b, const BlockPartition& part, double beta, double delta,
                            Index g, Index trials, Rng& rng);

/// Validates || A - X B ||_F <= (1 + eps) || A - A B^+ B ||_F for the
/// block-sampled regression solution.
HarnessResult validate_regression(const Matrix& a, const Matrix& b, const BlockPartition& part, double eps,
                                  double delta, Index g, Index trials, Rng& rng);

/// Validates the boosted CUR guarantee: fraction of boosted runs with
/// rel_to_best_k > 1 + eps stays below delta. When eps < 0 it is calibrated
/// from a pilot of single runs (70th percentile, matching the single-run
/// success probability of the non-boosted bound).
HarnessResult validate_cur(const Matrix& a, const BlockPartition& part, Index k, Index r, Index g, double eps,
                           double delta, Index trials, Index pilot_trials, Rng& rng);

}  // namespace bcur
