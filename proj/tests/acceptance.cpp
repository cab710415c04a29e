// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exits nonzero if any fail.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bcur/bench.hpp"
#include "bcur/io.hpp"
#include "bcur/sketch.hpp"

using namespace bcur;

namespace {

struct Outcome {
    int id;
    std::string name;
    bool passed;
    std::string detail;
};

std::vector<Outcome> g_outcomes;

void record(int id, const std::string& name, bool passed, const std::string& detail) {
    g_outcomes.push_back({id, name, passed, detail});
}

Matrix random_matrix(Rng& rng, Index rows, Index cols) {
    Matrix a(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            a(i, j) = rng.normal();
        }
    }
    return a;
}

BlockPartition random_partition(Rng& rng, Index n, Index max_w) {
    std::vector<BlockRange> ranges;
    Index begin = 0;
    while (begin < n) {
        const Index w =
            std::min<Index>(1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(max_w))), n - begin);
        ranges.push_back({begin, begin + w});
        begin += w;
    }
    return BlockPartition(n, std::move(ranges));
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// --------------------------------------------------------------------------
// 1. Score identities

void criterion1() {
    Rng gen(1001);
    double worst_sum_dev = 0.0;
    double worst_col_dev = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Index m = 2 + static_cast<Index>(gen.below(63));
        const Index n = 2 + static_cast<Index>(gen.below(63));
        const Index k = 1 + static_cast<Index>(gen.below(static_cast<std::uint64_t>(std::min(m, n))));
        const Matrix a = random_matrix(gen, m, n);
        const Matrix v_k = truncate(svd(a), k).right;

        const BlockPartition part = random_partition(gen, n, 8);
        const ScoreVector blocks = block_leverage(v_k, part);
        worst_sum_dev = std::max(worst_sum_dev, std::abs(blocks.scores.sum() - static_cast<double>(k)));

        const ScoreVector singles = block_leverage(v_k, BlockPartition::equal_blocks(n, 1));
        const ScoreVector cols = column_leverage(v_k);
        worst_col_dev = std::max(worst_col_dev, (singles.scores - cols.scores).cwiseAbs().maxCoeff());
    }
    std::ostringstream detail;
    detail << "max |sum - k| = " << worst_sum_dev << " (tol 1e-10), max s=1 deviation = " << worst_col_dev
           << " (tol 1e-12)";
    record(1, "score identities", worst_sum_dev <= 1e-10 && worst_col_dev <= 1e-12, detail.str());
}

// --------------------------------------------------------------------------
// 2. Stable-rank bounds

void criterion2() {
    // the same 100-instance sweep as criterion 1 (same seed, same draws)
    Rng gen(1001);
    bool bounds_ok = true;
    for (int trial = 0; trial < 100; ++trial) {
        const Index m = 2 + static_cast<Index>(gen.below(63));
        const Index n = 2 + static_cast<Index>(gen.below(63));
        const Index k = 1 + static_cast<Index>(gen.below(static_cast<std::uint64_t>(std::min(m, n))));
        const Matrix v_k = truncate(svd(random_matrix(gen, m, n)), k).right;
        const BlockPartition part = random_partition(gen, n, 8);
        const double alpha = block_stable_rank(v_k, part);
        bounds_ok = bounds_ok && alpha >= 1.0 - 1e-10 &&
                    alpha <= static_cast<double>(part.max_width()) + 1e-10;
    }

    // every block slab rank one -> alpha = 1
    Matrix v1 = Matrix::Zero(6, 3);
    for (Index g = 0; g < 3; ++g) {
        v1(2 * g, g) = 1.0 / std::sqrt(2.0);
        v1(2 * g + 1, g) = 1.0 / std::sqrt(2.0);
    }
    const double alpha_one = block_stable_rank(v1, BlockPartition::equal_blocks(6, 2));

    // stacked identities: every slab has s equal singular values -> alpha = s
    const Index k = 4, copies = 2, s = 2;
    Matrix v2 = Matrix::Zero(k * copies, k);
    for (Index c = 0; c < copies; ++c) {
        v2.middleRows(c * k, k) = Matrix::Identity(k, k) / std::sqrt(static_cast<double>(copies));
    }
    const double alpha_s = block_stable_rank(v2, BlockPartition::equal_blocks(k * copies, s));

    std::ostringstream detail;
    detail << "random sweep in [1, max width]: " << (bounds_ok ? "yes" : "NO") << ", rank-1-block alpha = "
           << alpha_one << ", equal-sigma alpha = " << alpha_s << " (s = " << s << ")";
    record(2, "stable-rank bounds",
           bounds_ok && std::abs(alpha_one - 1.0) <= 1e-10 && std::abs(alpha_s - static_cast<double>(s)) <= 1e-10,
           detail.str());
}

// --------------------------------------------------------------------------
// 3. Exact recovery

void criterion3() {
    const auto start = std::chrono::steady_clock::now();
    Rng gen(1003);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const Index m = 8 + static_cast<Index>(gen.below(57));
        const Index n = 8 + static_cast<Index>(gen.below(57));
        const Index k = 1 + static_cast<Index>(gen.below(5));
        const Matrix a = random_matrix(gen, m, k) * random_matrix(gen, k, n);
        const BlockPartition part = random_partition(gen, n, 7);

        CurOptions opts;
        opts.distinct_rows = true;  // spanning rows for a generic rank-k matrix
        opts.block_mode = SamplingMode::without_replacement;  // g = G covers every block
        Rng rng(9000 + static_cast<std::uint64_t>(trial));
        const CurResult res =
            block_cur(a, part, k, std::min<Index>(m, k + 3), part.num_blocks(), opts, rng);
        worst = std::max(worst, res.metrics_u.rel_to_a);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream detail;
    detail << "max ||A - CUR||_F/||A||_F = " << worst << " (tol 1e-8) over 50 instances in " << secs
           << " s (limit 10 s)";
    record(3, "exact recovery", worst <= 1e-8 && secs < 10.0, detail.str());
}

// --------------------------------------------------------------------------
// 4. Lemma 2 (block matrix multiplication) Monte Carlo

void criterion4() {
    Rng gen(1004);
    const Matrix a = random_matrix(gen, 4, 6);
    const Matrix b = random_matrix(gen, 6, 5);
    const BlockPartition part = BlockPartition::equal_blocks(6, 2);
    const double beta = 1.0;
    const double delta = 0.2;
    const double eps = 0.5;
    const Index trials = 2000;
    const double alpha = matrix_block_stable_rank(a, part);
    const Index g = mult_sample_count(delta, eps, alpha);

    Rng harness_rng(1104);
    const HarnessResult res = validate_mult(a, b, part, beta, delta, g, trials, harness_rng);

    // unbiasedness at 3 sigma, with the appendix closed-form variance
    const Vector probs = frobenius_block_probs(a, part, beta).distribution();
    const Matrix ab = a * b;
    Matrix var = Matrix::Zero(4, 5);
    for (Index blk = 0; blk < part.num_blocks(); ++blk) {
        const BlockRange& r = part.range(blk);
        const Matrix term = a.middleCols(r.begin, r.width()) * b.middleRows(r.begin, r.width());
        var += term.cwiseProduct(term) / probs(blk);
    }
    var = (var - ab.cwiseProduct(ab)) / static_cast<double>(g);

    Rng mean_rng(1204);
    Matrix sum = Matrix::Zero(4, 5);
    for (Index t = 0; t < trials; ++t) {
        sum += approx_product(a, b, part, probs, g, mean_rng);
    }
    const Matrix mean = sum / static_cast<double>(trials);
    double worst_z = 0.0;
    for (Index i = 0; i < 4; ++i) {
        for (Index j = 0; j < 5; ++j) {
            const double sigma_mean = std::sqrt(var(i, j) / static_cast<double>(trials));
            worst_z = std::max(worst_z, std::abs(mean(i, j) - ab(i, j)) / sigma_mean);
        }
    }

    std::ostringstream detail;
    detail << "g = " << g << " (alpha = " << alpha << "), violation rate " << res.violation_rate << " <= "
           << res.delta + 2.0 * res.binomial_sigma << ", max |mean - AB| z-score " << worst_z << " (tol 3)";
    record(4, "Lemma 2 Monte Carlo", res.passed() && worst_z <= 3.0, detail.str());
}

// --------------------------------------------------------------------------
// 5. Lemma 1.1 (blocked generalized l2 regression) Monte Carlo

void criterion5() {
    Rng gen(1005);
    const Matrix a = random_matrix(gen, 6, 12);
    const Matrix b = random_matrix(gen, 4, 3) * random_matrix(gen, 3, 12);  // rank 3
    const BlockPartition part = BlockPartition::equal_blocks(12, 3);
    const double eps = 0.5;
    const double delta = 0.2;
    const Index trials = 1000;

    Rng harness_rng(1105);
    const HarnessResult res = validate_regression(a, b, part, eps, delta, /*g=*/0, trials, harness_rng);

    const double optimal = frobenius_norm(a - project_onto_rowspace(a, b));
    bool dominated = true;
    for (const TrialRecord& t : res.trials) {
        dominated = dominated && t.error >= optimal * (1.0 - 1e-12);
    }

    std::ostringstream detail;
    detail << "g = " << res.g << ", violation rate " << res.violation_rate << " <= "
           << res.delta + 2.0 * res.binomial_sigma << ", residual >= optimum in "
           << (dominated ? "100%" : "< 100%") << " of trials";
    record(5, "Lemma 1.1 Monte Carlo", res.passed() && dominated, detail.str());
}

// --------------------------------------------------------------------------
// 6 + 7. Theorem 2 trend on the synthetic family; U_k dominance

SweepResult g_c6_sweep;  // shared with criterion 7
Matrix g_c6_matrix;

void criterion6() {
    const auto start = std::chrono::steady_clock::now();
    Rng gen(1006);
    // exactly rank-20 generator; ||A - A_k||_F = 0, so the sweep reports
    // rel_to_A in place of the undefined best-rank-k ratio
    g_c6_matrix = synthetic_low_rank(200, 200, 20, 0.0, gen);
    const BlockPartition part = BlockPartition::equal_blocks(200, 10);  // G = 20
    const std::vector<Index> gs = {1, 2, 3, 4, 5, 6};
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 1; s <= 10; ++s) {
        seeds.push_back(s);
    }
    g_c6_sweep = error_vs_g_sweep(g_c6_matrix, part, 20, 40, gs, seeds);

    std::vector<double> medians;
    for (const SweepRow& row : g_c6_sweep.rows) {
        if (row.variant == UVariant::full) {
            medians.push_back(row.median);
        }
    }
    bool monotone = true;
    for (std::size_t i = 1; i < medians.size(); ++i) {
        monotone = monotone && medians[i] <= medians[i - 1] + 1e-12;
    }
    const double at_g6 = medians.back();

    // boosted t=3 on the same seeds; its first trial replays the single run,
    // so each boosted value is <= its paired single value
    const ErrorBaseline base = error_baseline(g_c6_matrix, 20);
    bool boosted_ok = true;
    for (const Index g : gs) {
        std::vector<double> single, boosted;
        for (const std::uint64_t seed : seeds) {
            for (const SweepCell& cell : g_c6_sweep.cells) {
                if (cell.g == g && cell.seed == seed && cell.variant == UVariant::full) {
                    single.push_back(cell.value);
                }
            }
            Rng rng(seed);
            const CurResult res = block_cur_boosted(
                g_c6_matrix, part, 20, 40, g, 3,
                CurOptions{.block_mode = SamplingMode::without_replacement}, rng, &base);
            boosted.push_back(res.metrics_u.rel_to_best_k.value_or(res.metrics_u.rel_to_a));
        }
        boosted_ok = boosted_ok && median_of(boosted) <= median_of(single) + 1e-12;
    }

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream detail;
    detail << "U-variant medians g=1..6: ";
    for (double m : medians) {
        detail << m << " ";
    }
    detail << "(non-increasing: " << (monotone ? "yes" : "NO") << ", at g=6: " << at_g6
           << " <= 1.5), boosted medians dominate: " << (boosted_ok ? "yes" : "NO") << ", " << secs
           << " s (limit 60 s)";
    record(6, "Theorem 2 trend", monotone && at_g6 <= 1.5 && boosted_ok && secs < 60.0, detail.str());
}

void criterion7() {
    // the criterion-6 instance is exactly rank k, so rel_to_best_k is absent
    // there; check the ratio on noisy instances where it is defined, across
    // varied shapes, partitions, and sampling modes
    Rng gen(1007);
    bool ratio_ok = true;
    bool rank_ok = true;
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const Index m = 20 + static_cast<Index>(gen.below(30));
        const Index n = 24 + static_cast<Index>(gen.below(40));
        const Index k = 2 + static_cast<Index>(gen.below(5));
        const Matrix a = random_matrix(gen, m, k) * random_matrix(gen, k, n) + 0.05 * random_matrix(gen, m, n);
        const BlockPartition part = random_partition(gen, n, 6);
        CurOptions opts;
        opts.block_mode = trial % 2 == 0 ? SamplingMode::with_replacement : SamplingMode::without_replacement;
        const Index g = 1 + static_cast<Index>(gen.below(static_cast<std::uint64_t>(part.num_blocks())));
        Rng rng(600 + static_cast<std::uint64_t>(trial));
        const CurResult res = block_cur(a, part, k, 2 * k + 2, g, opts, rng);
        ratio_ok = ratio_ok && res.metrics_uk.rel_to_best_k.value() >= 1.0 - 1e-9;
        const CurResult rk = rank_k_cur(a, res, k);
        rank_ok = rank_ok && svd(rk.c * rk.u * rk.r).rank <= k;
        ++checked;
    }

    std::ostringstream detail;
    detail << checked << " U_k reports checked: rel_to_best_k >= 1 - 1e-9 " << (ratio_ok ? "always" : "VIOLATED")
           << ", rank(C U_k R) <= k " << (rank_ok ? "always" : "VIOLATED");
    record(7, "U_k dominance", ratio_ok && rank_ok, detail.str());
}

// --------------------------------------------------------------------------
// 8. Simulator dominance and sampling-op formulas

void criterion8() {
    Rng gen(1008);
    bool dominance = true;
    for (int trial = 0; trial < 1000; ++trial) {
        const Index n = 10 + static_cast<Index>(gen.below(70));
        const Index s = 1 + static_cast<Index>(gen.below(10));
        const BlockPartition part = BlockPartition::equal_blocks(n, s);
        const Index executors = 1 + static_cast<Index>(gen.below(12));
        const StorageLayout layout = trial % 2 == 0
                                         ? round_robin_layout(part.num_blocks(), executors)
                                         : random_layout(part.num_blocks(), executors, gen);
        const Index g = 1 + static_cast<Index>(gen.below(static_cast<std::uint64_t>(part.num_blocks())));
        const SamplingMode mode =
            trial % 3 == 0 ? SamplingMode::without_replacement : SamplingMode::with_replacement;
        const SamplingPlan plan = draw_blocks(
            Vector::Constant(part.num_blocks(), 1.0 / static_cast<double>(part.num_blocks())), g, mode, gen);
        const AccessReport block_rep = simulate_block_access(layout, part, plan);
        const std::vector<Index> cols = plan_columns(part, plan);
        const AccessReport col_rep = simulate_column_access(layout, part, cols);
        dominance = dominance && block_rep.executors_contacted <= col_rep.executors_contacted;
    }

    bool formulas = true;
    bool equality_at_one = true;
    const double s_max = 16.0;
    for (const Index k : {2, 5, 9}) {
        for (const double eps : {0.3, 0.7}) {
            for (const double delta : {0.05, 0.2}) {
                const OpsCount at_one = ops_count_formulas(k, eps, delta, 1.0);
                equality_at_one = equality_at_one &&
                                  std::abs(at_one.block - at_one.traditional) <= 1e-12 * at_one.traditional;
                for (double alpha = 1.0; alpha <= s_max; alpha += 0.25) {
                    const OpsCount c = ops_count_formulas(k, eps, delta, alpha);
                    formulas = formulas && c.block <= c.traditional * (1.0 + 1e-15);
                }
            }
        }
    }

    std::ostringstream detail;
    detail << "1000 layouts/plans: block contacts <= column contacts "
           << (dominance ? "always" : "VIOLATED") << "; block ops <= traditional on alpha in [1,16] "
           << (formulas ? "always" : "VIOLATED") << ", equality at alpha=1 "
           << (equality_at_one ? "yes" : "NO");
    record(8, "simulator dominance and formulas", dominance && formulas && equality_at_one, detail.str());
}

// --------------------------------------------------------------------------
// 9. CLI reproducibility (byte-identical reruns)

struct CliRun {
    int exit_code;
    std::string out;
};

CliRun run_cli(const std::string& args, const std::filesystem::path& dir, const std::string& tag) {
    const std::filesystem::path out = dir / (tag + ".out");
    const std::string cmd = std::string(BCUR_CLI_PATH) + " " + args + " > " + out.string() + " 2> /dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out);
    std::ostringstream ss;
    ss << in.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

void criterion9() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "bcur_acceptance";
    fs::create_directories(dir);

    // fixture matrix
    Rng gen(1009);
    save_matrix_csv(dir / "fixture.csv", random_matrix(gen, 12, 20));

    const std::string fixture = (dir / "fixture.csv").string();
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"gen", "gen --m 10 --n 30 --k 3 --noise 0.05 --seed 21 --output " + (dir / "gen.csv").string()},
        {"decompose", "decompose --input " + fixture + " --k 3 --r 6 --g 2 --seed 17 --block-size 4 --out-dir " +
                          (dir / "dec").string()},
        {"scores", "scores --input " + fixture + " --k 3 --block-size 5"},
        {"validate", "validate --lemma mult --seed 13 --trials 100 --block-size 2"},
        {"simulate", "simulate --n 20 --block-size 4 --executors 3 --blocks 0,2,4"},
        {"sweep", "sweep --input " + fixture + " --k 3 --r 6 --g-list 1,3 --seeds 3 --seed 19 --block-size 4"},
    };

    bool all_ok = true;
    std::ostringstream detail;
    for (const auto& [name, args] : commands) {
        const CliRun first = run_cli(args, dir, name + "_1");
        const CliRun second = run_cli(args, dir, name + "_2");
        const bool same = first.exit_code == 0 && second.exit_code == 0 && first.out == second.out;
        all_ok = all_ok && same;
        if (!same) {
            detail << name << " differs or failed (exit " << first.exit_code << "/" << second.exit_code << "); ";
        }
    }

    // written artifacts too
    const CliRun d1 = run_cli("decompose --input " + fixture +
                                  " --k 3 --r 6 --g 2 --seed 17 --block-size 4 --out-dir " + (dir / "d1").string(),
                              dir, "dec_a");
    const CliRun d2 = run_cli("decompose --input " + fixture +
                                  " --k 3 --r 6 --g 2 --seed 17 --block-size 4 --out-dir " + (dir / "d2").string(),
                              dir, "dec_b");
    const auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const bool reports_same = d1.exit_code == 0 && d2.exit_code == 0 &&
                              slurp(dir / "d1" / "report.json") == slurp(dir / "d2" / "report.json") &&
                              slurp(dir / "d1" / "C.csv") == slurp(dir / "d2" / "C.csv");
    all_ok = all_ok && reports_same;
    if (detail.str().empty()) {
        detail << "6 commands rerun byte-identically (stdout and written artifacts; no timestamp fields)";
    }
    record(9, "CLI reproducibility", all_ok, detail.str());
}

// --------------------------------------------------------------------------
// 10. Biometric-protocol analogue on the planted surrogate

void criterion10() {
    // leverage timeline finds the planted block on freshly seeded surrogates
    int found = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Rng rng(2000 + seed);
        SurrogateSpec spec;
        spec.planted_block = 6;
        const Matrix a = planted_spike_surrogate(spec, rng);
        const BlockPartition part = BlockPartition::equal_blocks(spec.n, spec.block_size);
        const auto timeline = leverage_timeline(a, part, 5);
        Index argmax = 0;
        for (Index g = 1; g < static_cast<Index>(timeline.size()); ++g) {
            if (timeline[static_cast<std::size_t>(g)].score > timeline[static_cast<std::size_t>(argmax)].score) {
                argmax = g;
            }
        }
        found += argmax == spec.planted_block ? 1 : 0;
    }

    // held-out imputation: 20 observed rows, 4 held out, medians over 10
    // sampling seeds must not increase with g
    Rng gen(1010);
    SurrogateSpec spec;
    spec.planted_block = 6;
    const Matrix a = planted_spike_surrogate(spec, gen);
    const BlockPartition part = BlockPartition::equal_blocks(spec.n, spec.block_size);
    const std::vector<Index> gs = {2, 4, 6, 8, 10};
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 501; s <= 510; ++s) {
        seeds.push_back(s);
    }
    const SweepResult sweep = heldout_imputation_sweep(a, part, 5, 4, gs, seeds);
    std::vector<double> medians;
    for (const SweepRow& row : sweep.rows) {
        if (row.variant == UVariant::full) {
            medians.push_back(row.median);
        }
    }
    bool monotone = true;
    for (std::size_t i = 1; i < medians.size(); ++i) {
        monotone = monotone && medians[i] <= medians[i - 1] + 1e-12;
    }

    std::ostringstream detail;
    detail << "timeline argmax hit planted block " << found << "/10 (need >= 9); imputation medians g=2..10: ";
    for (double m : medians) {
        detail << m << " ";
    }
    detail << "(non-increasing: " << (monotone ? "yes" : "NO") << ")";
    record(10, "biometric-protocol analogue", found >= 9 && monotone, detail.str());
}

}  // namespace

int main() {
    using CriterionFn = void (*)();
    const std::pair<int, CriterionFn> criteria[] = {
        {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},  {5, criterion5},
        {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9},  {10, criterion10},
    };
    for (const auto& [id, fn] : criteria) {
        try {
            fn();
        } catch (const std::exception& e) {
            record(id, "criterion threw", false, e.what());
        }
    }

    bool all = true;
    for (const Outcome& o : g_outcomes) {
        std::cout << (o.passed ? "PASS" : "FAIL") << "  criterion " << o.id << " (" << o.name << "): " << o.detail
                  << "\n";
        all = all && o.passed;
    }
    std::cout << (all ? "ALL ACCEPTANCE CRITERIA PASSED" : "ACCEPTANCE FAILURES PRESENT") << "\n";
    return all ? 0 : 1;
}
