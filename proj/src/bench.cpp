#include "bcur/bench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace bcur {

Matrix synthetic_low_rank(Index m, Index n, Index k, double noise_sigma, Rng& rng) {
    if (m < 1 || n < 1 || k < 1 || k > std::min(m, n)) {
        throw std::invalid_argument("synthetic_low_rank: need 1 <= k <= min(m, n)");
    }
    if (!(noise_sigma >= 0.0)) {
        throw std::invalid_argument("synthetic_low_rank: noise_sigma must be >= 0");
    }
    Matrix u(m, k);
    Matrix v(k, n);
    for (Index i = 0; i < m; ++i) {
        for (Index j = 0; j < k; ++j) {
            u(i, j) = rng.normal();
        }
    }
    for (Index i = 0; i < k; ++i) {
        for (Index j = 0; j < n; ++j) {
            v(i, j) = rng.normal();
        }
    }
    Matrix a = u * v;
    if (noise_sigma > 0.0) {
        for (Index i = 0; i < m; ++i) {
            for (Index j = 0; j < n; ++j) {
                a(i, j) += noise_sigma * rng.normal();
            }
        }
    }
    return a;
}

Matrix planted_spike_surrogate(const SurrogateSpec& spec, Rng& rng) {
    const BlockPartition part = BlockPartition::equal_blocks(spec.n, spec.block_size);
    if (spec.planted_block < 0 || spec.planted_block >= part.num_blocks()) {
        throw std::invalid_argument("planted_spike_surrogate: planted_block outside the partition");
    }
    if (spec.base_rank < 1 || spec.base_rank > std::min(spec.m, spec.n)) {
        throw std::invalid_argument("planted_spike_surrogate: base_rank out of range");
    }
    Matrix base = synthetic_low_rank(spec.m, spec.n, spec.base_rank, 0.0, rng);

    // Rank-one burst confined to the planted block: a raised-cosine bump in
    // time, a random per-user amplitude pattern across rows.
    Vector user(spec.m);
    for (Index i = 0; i < spec.m; ++i) {
        user(i) = rng.normal();
    }
    user.normalize();
    Vector profile = Vector::Zero(spec.n);
    const BlockRange range = part.range(spec.planted_block);
    const double width = static_cast<double>(range.width());
    for (Index j = range.begin; j < range.end; ++j) {
        const double x = (static_cast<double>(j - range.begin) + 0.5) / width;
        profile(j) = 0.5 * (1.0 - std::cos(2.0 * 3.14159265358979323846 * x));
    }
    profile.normalize();

    const double sigma1 = spectral_norm(base);
    Matrix a = base + (spec.spike_amplitude * sigma1) * user * profile.transpose();
    if (spec.noise_sigma > 0.0) {
        for (Index i = 0; i < spec.m; ++i) {
            for (Index j = 0; j < spec.n; ++j) {
                a(i, j) += spec.noise_sigma * rng.normal();
            }
        }
    }
    return a;
}

StorageLayout round_robin_layout(Index num_blocks, Index executors, double per_contact_latency,
                                 double per_element_cost) {
    if (num_blocks < 1 || executors < 1) {
        throw std::invalid_argument("round_robin_layout: counts must be >= 1");
    }
    StorageLayout layout;
    layout.executors = executors;
    layout.per_contact_latency = per_contact_latency;
    layout.per_element_cost = per_element_cost;
    layout.placement.resize(static_cast<std::size_t>(num_blocks));
    for (Index b = 0; b < num_blocks; ++b) {
        layout.placement[static_cast<std::size_t>(b)] = b % executors;
    }
    return layout;
}

StorageLayout random_layout(Index num_blocks, Index executors, Rng& rng, double per_contact_latency,
                            double per_element_cost) {
    if (num_blocks < 1 || executors < 1) {
        throw std::invalid_argument("random_layout: counts must be >= 1");
    }
    StorageLayout layout;
    layout.executors = executors;
    layout.per_contact_latency = per_contact_latency;
    layout.per_element_cost = per_element_cost;
    layout.placement.resize(static_cast<std::size_t>(num_blocks));
    for (Index b = 0; b < num_blocks; ++b) {
        layout.placement[static_cast<std::size_t>(b)] = static_cast<Index>(rng.below(static_cast<std::uint64_t>(executors)));
    }
    return layout;
}

const char* to_string(AccessMode mode) {
    return mode == AccessMode::block ? "block" : "column";
}

namespace {

void require_layout(const StorageLayout& layout, const BlockPartition& part) {
    if (static_cast<Index>(layout.placement.size()) != part.num_blocks()) {
        throw DimensionMismatch("storage layout places " + std::to_string(layout.placement.size()) +
                                " blocks but the partition has " + std::to_string(part.num_blocks()));
    }
    for (Index e : layout.placement) {
        if (e < 0 || e >= layout.executors) {
            throw std::invalid_argument("storage layout references executor out of range");
        }
    }
}

}  // namespace

AccessReport simulate_block_access(const StorageLayout& layout, const BlockPartition& part,
                                   const SamplingPlan& plan) {
    require_layout(layout, part);
    std::set<Index> contacted;
    Index items = 0;
    for (const BlockDraw& d : plan.draws) {
        if (d.block < 0 || d.block >= part.num_blocks()) {
            throw std::invalid_argument("simulate_block_access: unknown block index " + std::to_string(d.block));
        }
        contacted.insert(layout.placement[static_cast<std::size_t>(d.block)]);
        items += part.width(d.block);
    }
    AccessReport rep;
    rep.mode = AccessMode::block;
    rep.items_fetched = items;
    rep.executors_contacted = static_cast<Index>(contacted.size());
    rep.synthetic_cost = static_cast<double>(rep.executors_contacted) * layout.per_contact_latency +
                         static_cast<double>(items) * layout.per_element_cost;
    return rep;
}

AccessReport simulate_column_access(const StorageLayout& layout, const BlockPartition& part,
                                    std::span<const Index> columns) {
    require_layout(layout, part);
    std::set<Index> contacted;
    for (Index col : columns) {
        const Index block = part.block_of_column(col);  // throws on unknown column
        contacted.insert(layout.placement[static_cast<std::size_t>(block)]);
    }
    AccessReport rep;
    rep.mode = AccessMode::column;
    rep.items_fetched = static_cast<Index>(columns.size());
    rep.executors_contacted = static_cast<Index>(contacted.size());
    rep.synthetic_cost = static_cast<double>(rep.executors_contacted) * layout.per_contact_latency +
                         static_cast<double>(rep.items_fetched) * layout.per_element_cost;
    return rep;
}

std::vector<Index> plan_columns(const BlockPartition& part, const SamplingPlan& plan) {
    std::vector<Index> cols;
    for (const BlockDraw& d : plan.draws) {
        const BlockRange& r = part.range(d.block);
        for (Index j = r.begin; j < r.end; ++j) {
            cols.push_back(j);
        }
    }
    return cols;
}

OpsCount ops_count_formulas(Index k, double eps, double delta, double alpha) {
    if (k < 1 || !(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0) || !(alpha >= 1.0)) {
        throw std::invalid_argument("ops_count_formulas: parameter out of domain");
    }
    const double kk = static_cast<double>(k);
    const double lg = std::log(1.0 / delta);
    const double row_term = kk * kk / (eps * eps) * lg;
    const double col_term = kk * kk * kk * kk / (eps * eps * eps * eps * eps * eps) * lg * lg * lg;
    OpsCount out;
    out.traditional = row_term + col_term;
    out.block = row_term + col_term / alpha;
    return out;
}

std::vector<CoveragePoint> coverage_curve(const Matrix& a, Index k_max) {
    if (k_max < 1 || k_max > std::min(a.rows(), a.cols())) {
        throw std::invalid_argument("coverage_curve: k_max out of range");
    }
    const double total = frobenius_norm(a);
    if (!(total > 0.0)) {
        throw ZeroMatrix("coverage_curve: A is identically zero");
    }
    const SvdResult s = svd(a);
    std::vector<CoveragePoint> curve;
    curve.reserve(static_cast<std::size_t>(k_max));
    double cum = 0.0;
    for (Index k = 1; k <= k_max; ++k) {
        if (k <= s.rank) {
            cum += s.singular_values(k - 1) * s.singular_values(k - 1);
        }
        curve.push_back({k, std::sqrt(cum) / total});
    }
    return curve;
}

std::vector<TimelineEntry> leverage_timeline(const Matrix& a, const BlockPartition& part, Index k,
                                             double sample_rate_hz) {
    const SvdResult s = truncate(svd(a), k);
    if (s.rank == 0) {
        throw ZeroMatrix("leverage_timeline: A is identically zero");
    }
    const ScoreVector scores = block_leverage(s.right, part);
    const Vector probs = scores.probabilities();
    std::vector<TimelineEntry> timeline;
    timeline.reserve(static_cast<std::size_t>(part.num_blocks()));
    for (Index g = 0; g < part.num_blocks(); ++g) {
        TimelineEntry e;
        e.block = g;
        e.begin_col = part.range(g).begin;
        e.end_col = part.range(g).end;
        e.score = scores.scores(g);
        e.probability = probs(g);
        if (sample_rate_hz > 0.0) {
            e.start_seconds = static_cast<double>(e.begin_col) / sample_rate_hz;
            e.end_seconds = static_cast<double>(e.end_col) / sample_rate_hz;
        }
        timeline.push_back(e);
    }
    return timeline;
}

namespace {

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

SweepResult aggregate(std::vector<SweepCell> cells) {
    std::sort(cells.begin(), cells.end(), [](const SweepCell& a, const SweepCell& b) {
        return std::tie(a.g, a.seed, a.variant) < std::tie(b.g, b.seed, b.variant);
    });
    SweepResult out;
    out.cells = std::move(cells);
    for (const UVariant variant : {UVariant::full, UVariant::rank_k}) {
        for (std::size_t i = 0; i < out.cells.size();) {
            // group by g for this variant
            const Index g = out.cells[i].g;
            std::vector<double> values;
            std::size_t j = i;
            for (; j < out.cells.size() && out.cells[j].g == g; ++j) {
                if (out.cells[j].variant == variant) {
                    values.push_back(out.cells[j].value);
                }
            }
            if (!values.empty()) {
                SweepRow row;
                row.g = g;
                row.variant = variant;
                const double n = static_cast<double>(values.size());
                row.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
                double var = 0.0;
                for (double v : values) {
                    var += (v - row.mean) * (v - row.mean);
                }
                row.stddev = n > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
                row.median = median_of(values);
                out.rows.push_back(row);
            }
            i = j;
        }
    }
    std::sort(out.rows.begin(), out.rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return std::tie(a.g, a.variant) < std::tie(b.g, b.variant);
    });
    return out;
}

}  // namespace

SweepResult error_vs_g_sweep(const Matrix& a, const BlockPartition& part, Index k, Index r,
                             std::span<const Index> g_list, std::span<const std::uint64_t> seeds,
                             const CurOptions& opts) {
    if (g_list.empty() || seeds.empty()) {
        throw std::invalid_argument("error_vs_g_sweep: need at least one g and one seed");
    }
    const ErrorBaseline base = error_baseline(a, k);
    std::vector<SweepCell> cells;
    cells.reserve(2 * g_list.size() * seeds.size());
    for (const Index g : g_list) {
        for (const std::uint64_t seed : seeds) {
            Rng rng(seed);
            const CurResult res = block_cur(a, part, k, r, g, opts, rng, &base);
            cells.push_back({g, seed, UVariant::full, res.metrics_u.rel_to_best_k.value_or(res.metrics_u.rel_to_a)});
            cells.push_back(
                {g, seed, UVariant::rank_k, res.metrics_uk.rel_to_best_k.value_or(res.metrics_uk.rel_to_a)});
        }
    }
    return aggregate(std::move(cells));
}

SweepResult heldout_imputation_sweep(const Matrix& a, const BlockPartition& part, Index k, Index holdout,
                                     std::span<const Index> g_list, std::span<const std::uint64_t> seeds) {
    if (holdout < 1 || holdout >= a.rows()) {
        throw std::invalid_argument("heldout_imputation_sweep: holdout must be in [1, m)");
    }
    if (g_list.empty() || seeds.empty()) {
        throw std::invalid_argument("heldout_imputation_sweep: need at least one g and one seed");
    }
    const Index observed = a.rows() - holdout;
    std::vector<SweepCell> cells;
    cells.reserve(2 * g_list.size() * seeds.size());
    for (const Index g : g_list) {
        for (const std::uint64_t seed : seeds) {
            Rng rng(seed);
            const RowPlan row_plan = draw_rows_distinct(a.rows(), observed, rng);
            const Matrix r_obs = materialize_rows(a, row_plan, /*scaled=*/false);
            if (r_obs.isZero(0.0)) {
                throw DegenerateR("heldout_imputation_sweep: observed rows are identically zero");
            }
            std::vector<bool> is_observed(static_cast<std::size_t>(a.rows()), false);
            for (const RowDraw& d : row_plan.draws) {
                is_observed[static_cast<std::size_t>(d.row)] = true;
            }
            Matrix held(holdout, a.cols());
            Index at = 0;
            for (Index i = 0; i < a.rows(); ++i) {
                if (!is_observed[static_cast<std::size_t>(i)]) {
                    held.row(at++) = a.row(i);
                }
            }

            const ScoreVector scores = approx_block_leverage(r_obs, part);
            const SamplingPlan plan =
                draw_blocks(scores.distribution(), g, SamplingMode::without_replacement, rng);
            const Matrix w = materialize_columns(r_obs, part, plan);
            const Matrix u = pseudoinverse(w);
            const Matrix c_held = materialize_columns(held, part, plan);

            const double held_norm = frobenius_norm(held);
            const auto rel_err = [&](const Matrix& mid) {
                const double abs_err = frobenius_norm(held - c_held * (mid * r_obs));
                return held_norm > 0.0 ? abs_err / held_norm : 0.0;
            };
            cells.push_back({g, seed, UVariant::full, rel_err(u)});
            cells.push_back({g, seed, UVariant::rank_k, rel_err(best_rank_k(u, k))});
        }
    }
    return aggregate(std::move(cells));
}

}  // namespace bcur
