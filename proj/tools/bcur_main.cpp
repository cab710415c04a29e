// bcur: Block CUR decomposition toolkit.
//
// Commands: decompose, scores, validate, simulate, sweep, gen.
// Exit codes: 0 success, 2 input/validation failure (JSON error on stderr),
// 3 numerical failure, 4 probabilistic bound violated in `validate`.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "bcur/io.hpp"
#include "bcur/serialize.hpp"

namespace {

using namespace bcur;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitBoundViolated = 4;

void print_error(const char* type, const std::string& message) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["error"] = {{"type", type}, {"message", message}};
    std::cerr << j.dump() << "\n";
}

struct PartitionSpec {
    Index block_size = 0;
    std::vector<Index> boundaries;

    BlockPartition build(Index n) const {
        if (!boundaries.empty()) {
            return BlockPartition::from_boundaries(n, boundaries);
        }
        if (block_size > 0) {
            return BlockPartition::equal_blocks(n, block_size);
        }
        throw std::invalid_argument("a partition is required: pass --block-size or --boundaries");
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--block-size", block_size, "Equal block width (last block ragged)");
        cmd->add_option("--boundaries", boundaries,
                        "Comma-separated interior cut points, e.g. --boundaries 3,7,10")
            ->delimiter(',');
    }
};

SamplingMode parse_mode(const std::string& mode) {
    if (mode == "with_replacement" || mode == "with") {
        return SamplingMode::with_replacement;
    }
    if (mode == "without_replacement" || mode == "without") {
        return SamplingMode::without_replacement;
    }
    throw std::invalid_argument("unknown sampling mode '" + mode + "'");
}

Json config_json(std::initializer_list<std::pair<const char*, Json>> fields) {
    Json j;
    for (const auto& [key, value] : fields) {
        j[key] = value;
    }
    return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot write " + path.string());
    }
    out << text;
}

// ---------------------------------------------------------------------------

struct DecomposeArgs {
    std::string input;
    std::string out_dir;
    std::string format = "csv";
    PartitionSpec partition;
    Index k = 0;
    Index r = 0;
    Index g = 0;
    Index t = 1;
    double delta = 0.0;
    std::uint64_t seed = 0;
    std::string mode = "with_replacement";
    std::string row_mode = "uniform";
    bool distinct_rows = false;
};

int run_decompose(const DecomposeArgs& args) {
    const Matrix a = load_matrix(args.input);
    const BlockPartition part = args.partition.build(a.cols());
    CurOptions opts;
    opts.block_mode = parse_mode(args.mode);
    opts.distinct_rows = args.distinct_rows;
    if (args.row_mode == "leverage") {
        opts.row_sampling = RowSampling::leverage;
    } else if (args.row_mode != "uniform") {
        throw std::invalid_argument("unknown row sampling mode '" + args.row_mode + "'");
    }
    Index t = args.t;
    if (args.delta > 0.0) {
        t = boost_trials(args.delta);
    }

    Rng rng(args.seed);
    const CurResult res = block_cur_boosted(a, part, args.k, args.r, args.g, t, opts, rng);

    Json report = cur_result_to_json(res);
    report["config"] = config_json({{"command", "decompose"},
                                    {"input", args.input},
                                    {"k", args.k},
                                    {"r", args.r},
                                    {"g", args.g},
                                    {"t", t},
                                    {"delta", args.delta},
                                    {"seed", args.seed},
                                    {"mode", to_string(opts.block_mode)},
                                    {"row_mode", to_string(opts.row_sampling)},
                                    {"distinct_rows", opts.distinct_rows},
                                    {"blocks", part.num_blocks()}});

    if (!args.out_dir.empty()) {
        const std::filesystem::path dir(args.out_dir);
        std::filesystem::create_directories(dir);
        const std::string ext = args.format == "bcur" ? ".bcur" : ".csv";
        save_matrix(dir / ("C" + ext), res.c);
        save_matrix(dir / ("U" + ext), res.u);
        save_matrix(dir / ("R" + ext), res.r);
        save_matrix(dir / ("W" + ext), res.w);
        write_text(dir / "report.json", report.dump(2) + "\n");
    }
    std::cout << report.dump(2) << "\n";
    return 0;
}

struct ScoresArgs {
    std::string input;
    std::string output;
    PartitionSpec partition;
    Index k = 0;
};

int run_scores(const ScoresArgs& args) {
    const Matrix a = load_matrix(args.input);
    const BlockPartition part = args.partition.build(a.cols());
    if (args.k < 1 || args.k > std::min(a.rows(), a.cols())) {
        throw std::invalid_argument("scores: need 1 <= k <= min(m, n)");
    }
    const SvdResult s = truncate(svd(a), args.k);
    if (s.rank == 0) {
        throw ZeroMatrix("scores: input matrix is identically zero");
    }
    const ScoreVector scores = block_leverage(s.right, part);
    double alpha = std::numeric_limits<double>::quiet_NaN();
    try {
        alpha = block_stable_rank(s.right, part);
    } catch (const ZeroBlock&) {
        // a block with no mass in the top-k subspace has no stable rank;
        // scores are still well-defined
    }
    const double mu = incoherence(s.left);
    const Json config = config_json({{"command", "scores"},
                                     {"input", args.input},
                                     {"k", args.k},
                                     {"blocks", part.num_blocks()}});

    const auto emit = [&](std::ostream& out) {
        out << "# config=" << config.dump() << "\n";
        write_scores_csv(out, part, scores, alpha, mu);
    };
    if (args.output.empty()) {
        emit(std::cout);
    } else {
        std::ofstream out(args.output);
        if (!out) {
            throw ParseError("cannot write " + args.output);
        }
        emit(out);
    }
    return 0;
}

struct ValidateArgs {
    std::string lemma;
    std::string output;
    Index m = 4;
    Index n = 6;
    Index p = 5;
    Index b_rows = 4;
    Index rank = 3;
    Index k = 5;
    Index r = 10;
    Index g = 0;
    double beta = 1.0;
    double eps = 0.5;
    double delta = 0.2;
    double g_const = 0.004;
    Index trials = 2000;
    Index pilot = 50;
    double noise = 0.1;
    PartitionSpec partition;
    std::uint64_t seed = 0;
};

int run_validate(const ValidateArgs& args) {
    Rng rng(args.seed);
    HarnessResult result;
    Json config;

    if (args.lemma == "mult") {
        const Matrix a = synthetic_low_rank(args.m, args.n, std::min(args.m, args.n), 0.0, rng);
        const Matrix b = synthetic_low_rank(args.n, args.p, std::min(args.n, args.p), 0.0, rng);
        const BlockPartition part = args.partition.build(args.n);
        Index g = args.g;
        if (g < 1) {
            g = mult_sample_count(args.delta, args.eps, matrix_block_stable_rank(a, part));
        }
        result = validate_mult(a, b, part, args.beta, args.delta, g, args.trials, rng);
        config = config_json({{"command", "validate"},
                              {"lemma", "mult"},
                              {"m", args.m},
                              {"n", args.n},
                              {"p", args.p},
                              {"beta", args.beta},
                              {"delta", args.delta},
                              {"eps", args.eps},
                              {"g", g},
                              {"trials", args.trials},
                              {"seed", args.seed}});
    } else if (args.lemma == "regression") {
        const Matrix a = synthetic_low_rank(args.m, args.n, std::min(args.m, args.n), 0.0, rng);
        const Matrix b = synthetic_low_rank(args.b_rows, args.n, args.rank, 0.0, rng);
        const BlockPartition part = args.partition.build(args.n);
        Index g = args.g;
        if (g < 1) {
            const SvdResult sb = svd(b);
            g = regression_sample_count(sb.rank, args.eps, args.delta, block_stable_rank(sb.right, part),
                                        args.g_const);
        }
        result = validate_regression(a, b, part, args.eps, args.delta, g, args.trials, rng);
        config = config_json({{"command", "validate"},
                              {"lemma", "regression"},
                              {"m", args.m},
                              {"n", args.n},
                              {"b_rows", args.b_rows},
                              {"rank", args.rank},
                              {"eps", args.eps},
                              {"delta", args.delta},
                              {"g", g},
                              {"g_const", args.g_const},
                              {"trials", args.trials},
                              {"seed", args.seed}});
    } else if (args.lemma == "cur") {
        const Matrix base = synthetic_low_rank(args.m, args.n, args.k, 0.0, rng);
        Matrix a = base;
        for (Index i = 0; i < a.rows(); ++i) {
            for (Index j = 0; j < a.cols(); ++j) {
                a(i, j) += args.noise * rng.normal();
            }
        }
        const BlockPartition part = args.partition.build(args.n);
        result = validate_cur(a, part, args.k, args.r, args.g, args.eps, args.delta, args.trials, args.pilot, rng);
        config = config_json({{"command", "validate"},
                              {"lemma", "cur"},
                              {"m", args.m},
                              {"n", args.n},
                              {"k", args.k},
                              {"r", args.r},
                              {"g", args.g},
                              {"eps", args.eps},
                              {"delta", args.delta},
                              {"noise", args.noise},
                              {"trials", args.trials},
                              {"pilot", args.pilot},
                              {"seed", args.seed}});
    } else {
        throw std::invalid_argument("unknown lemma '" + args.lemma + "' (expected mult, regression, or cur)");
    }

    if (!args.output.empty()) {
        std::ofstream out(args.output);
        if (!out) {
            throw ParseError("cannot write " + args.output);
        }
        out << "# config=" << config.dump() << "\n";
        write_harness_csv(out, result);
    }
    Json summary = harness_summary_to_json(result);
    summary["config"] = config;
    std::cout << summary.dump(2) << "\n";
    return result.passed() ? 0 : kExitBoundViolated;
}

struct SimulateArgs {
    Index n = 0;
    Index executors = 0;
    std::string placement = "round_robin";
    std::uint64_t placement_seed = 0;
    bool placement_seed_set = false;
    double contact_cost = 1.0;
    double element_cost = 0.0;
    std::string plan_file;
    std::vector<Index> blocks;
    std::vector<Index> columns;
    PartitionSpec partition;
};

int run_simulate(const SimulateArgs& args) {
    const BlockPartition part = args.partition.build(args.n);
    StorageLayout layout;
    if (args.placement == "round_robin") {
        layout = round_robin_layout(part.num_blocks(), args.executors, args.contact_cost, args.element_cost);
    } else if (args.placement == "random") {
        if (!args.placement_seed_set) {
            throw std::invalid_argument("random placement requires --placement-seed");
        }
        Rng rng(args.placement_seed);
        layout = random_layout(part.num_blocks(), args.executors, rng, args.contact_cost, args.element_cost);
    } else {
        throw std::invalid_argument("unknown placement '" + args.placement + "'");
    }

    Json out;
    out["schema_version"] = kSchemaVersion;
    out["config"] = config_json({{"command", "simulate"},
                                 {"n", args.n},
                                 {"blocks", part.num_blocks()},
                                 {"executors", args.executors},
                                 {"placement", args.placement},
                                 {"contact_cost", args.contact_cost},
                                 {"element_cost", args.element_cost}});

    if (!args.columns.empty()) {
        out["column_access"] = access_report_to_json(simulate_column_access(layout, part, args.columns));
    } else {
        SamplingPlan plan;
        if (!args.plan_file.empty()) {
            std::ifstream in(args.plan_file);
            if (!in) {
                throw ParseError("cannot open " + args.plan_file);
            }
            plan = plan_from_json(Json::parse(in));
        } else if (!args.blocks.empty()) {
            const double p = 1.0 / static_cast<double>(part.num_blocks());
            for (Index b : args.blocks) {
                plan.draws.push_back({b, p, 1.0});
            }
        } else {
            throw std::invalid_argument("pass one of --plan, --blocks, or --columns");
        }
        const AccessReport block_rep = simulate_block_access(layout, part, plan);
        const std::vector<Index> cols = plan_columns(part, plan);
        const AccessReport col_rep = simulate_column_access(layout, part, cols);
        out["block_access"] = access_report_to_json(block_rep);
        out["column_access_same_set"] = access_report_to_json(col_rep);
        out["block_dominates"] = block_rep.executors_contacted <= col_rep.executors_contacted;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

struct SweepArgs {
    std::string input;
    std::vector<double> synthetic;  // m,n,k,noise
    std::string output;
    PartitionSpec partition;
    Index k = 0;
    Index r = 0;
    std::vector<Index> g_list;
    Index seeds = 10;
    std::uint64_t seed = 0;
    std::string mode = "without_replacement";
    Index holdout = 0;
    bool per_seed = false;
    bool distinct_rows = false;
};

int run_sweep(const SweepArgs& args) {
    Matrix a;
    Json source;
    Rng gen(args.seed);
    if (!args.input.empty()) {
        a = load_matrix(args.input);
        source = args.input;
    } else if (args.synthetic.size() == 4) {
        a = synthetic_low_rank(static_cast<Index>(args.synthetic[0]), static_cast<Index>(args.synthetic[1]),
                               static_cast<Index>(args.synthetic[2]), args.synthetic[3], gen);
        source = config_json({{"m", args.synthetic[0]},
                              {"n", args.synthetic[1]},
                              {"k", args.synthetic[2]},
                              {"noise", args.synthetic[3]}});
    } else {
        throw std::invalid_argument("pass --input FILE or --synthetic m,n,k,noise");
    }
    const BlockPartition part = args.partition.build(a.cols());
    if (args.g_list.empty()) {
        throw std::invalid_argument("pass --g-list with at least one value");
    }
    if (args.seeds < 1) {
        throw std::invalid_argument("--seeds must be >= 1");
    }
    std::vector<std::uint64_t> seed_list;
    for (Index i = 0; i < args.seeds; ++i) {
        seed_list.push_back(args.seed + static_cast<std::uint64_t>(i));
    }

    SweepResult sweep;
    if (args.holdout > 0) {
        sweep = heldout_imputation_sweep(a, part, args.k, args.holdout, args.g_list, seed_list);
    } else {
        CurOptions opts;
        opts.block_mode = parse_mode(args.mode);
        opts.distinct_rows = args.distinct_rows;
        sweep = error_vs_g_sweep(a, part, args.k, args.r, args.g_list, seed_list, opts);
    }

    const Json config = config_json({{"command", "sweep"},
                                     {"source", source},
                                     {"k", args.k},
                                     {"r", args.r},
                                     {"g_list", args.g_list},
                                     {"seeds", args.seeds},
                                     {"seed", args.seed},
                                     {"mode", args.mode},
                                     {"holdout", args.holdout},
                                     {"blocks", part.num_blocks()}});

    std::ostringstream body;
    body << "# config=" << config.dump() << "\n";
    if (args.per_seed) {
        write_sweep_cells_csv(body, sweep);
    } else {
        write_sweep_csv(body, sweep);
    }
    if (args.output.empty()) {
        std::cout << body.str();
    } else {
        write_text(args.output, body.str());
    }
    return 0;
}

struct GenArgs {
    Index m = 0;
    Index n = 0;
    Index k = 0;
    double noise = 0.0;
    std::uint64_t seed = 0;
    std::string output;
    bool surrogate = false;
    Index block_size = 100;
    Index planted_block = 3;
    Index base_rank = 4;
    double spike_amp = 0.8;
};

int run_gen(const GenArgs& args) {
    Rng rng(args.seed);
    Matrix a;
    if (args.surrogate) {
        SurrogateSpec spec;
        spec.m = args.m > 0 ? args.m : spec.m;
        spec.n = args.n > 0 ? args.n : spec.n;
        spec.block_size = args.block_size;
        spec.planted_block = args.planted_block;
        spec.base_rank = args.base_rank;
        spec.spike_amplitude = args.spike_amp;
        spec.noise_sigma = args.noise;
        a = planted_spike_surrogate(spec, rng);
    } else {
        a = synthetic_low_rank(args.m, args.n, args.k, args.noise, rng);
    }
    save_matrix(args.output, a);
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["written"] = args.output;
    j["rows"] = a.rows();
    j["cols"] = a.cols();
    j["seed"] = args.seed;
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Block CUR decomposition toolkit"};
    app.require_subcommand(1);

    DecomposeArgs dec;
    CLI::App* decompose = app.add_subcommand("decompose", "Run the Block CUR decomposition on a matrix file");
    decompose->add_option("--input", dec.input, "Matrix file (CSV or BCUR binary)")->required();
    decompose->add_option("--k", dec.k, "Target rank")->required();
    decompose->add_option("--r", dec.r, "Rows to sample")->required();
    decompose->add_option("--g", dec.g, "Column blocks to sample")->required();
    decompose->add_option("--seed", dec.seed, "RNG seed (required for reproducibility)")->required();
    decompose->add_option("--mode", dec.mode, "Block sampling: with_replacement|without_replacement");
    decompose->add_option("--row-mode", dec.row_mode, "Row sampling: uniform|leverage");
    decompose->add_flag("--distinct-rows", dec.distinct_rows, "Draw distinct rows (pipeline path)");
    decompose->add_option("--t", dec.t, "Boosting trials (keep the best of t runs)");
    decompose->add_option("--delta", dec.delta, "Failure probability; sets t = ceil(ln(1/delta))");
    decompose->add_option("--out-dir", dec.out_dir, "Directory for C/U/R/W matrices and report.json");
    decompose->add_option("--format", dec.format, "Matrix output format: csv|bcur");
    dec.partition.attach(decompose);

    ScoresArgs sco;
    CLI::App* scores = app.add_subcommand("scores", "Emit block leverage scores, stable rank, incoherence");
    scores->add_option("--input", sco.input)->required();
    scores->add_option("--k", sco.k, "Target rank")->required();
    scores->add_option("--output", sco.output, "Scores CSV (default stdout)");
    sco.partition.attach(scores);

    ValidateArgs val;
    CLI::App* validate = app.add_subcommand("validate", "Monte Carlo validation of the probabilistic bounds");
    validate->add_option("--lemma", val.lemma, "mult|regression|cur")->required();
    validate->add_option("--seed", val.seed)->required();
    validate->add_option("--m", val.m);
    validate->add_option("--n", val.n);
    validate->add_option("--p", val.p, "Columns of B (mult)");
    validate->add_option("--b-rows", val.b_rows, "Rows of B (regression)");
    validate->add_option("--rank", val.rank, "Rank of B (regression)");
    validate->add_option("--k", val.k, "Target rank (cur)");
    validate->add_option("--r", val.r, "Rows sampled (cur)");
    validate->add_option("--g", val.g, "Block draws per trial (0 = derive from the bound)");
    validate->add_option("--beta", val.beta);
    validate->add_option("--eps", val.eps, "Error parameter; pass -1 with cur to calibrate from a pilot");
    validate->add_option("--delta", val.delta);
    validate->add_option("--g-const", val.g_const, "Constant in the regression sample-count formula");
    validate->add_option("--trials", val.trials);
    validate->add_option("--pilot", val.pilot, "Pilot runs for cur eps calibration");
    validate->add_option("--noise", val.noise, "Noise level of the cur test instance");
    validate->add_option("--output", val.output, "Per-trial CDF CSV");
    val.partition.attach(validate);

    SimulateArgs sim;
    CLI::App* simulate = app.add_subcommand("simulate", "Partitioned-storage access cost simulation");
    simulate->add_option("--n", sim.n, "Total columns")->required();
    simulate->add_option("--executors", sim.executors)->required();
    simulate->add_option("--placement", sim.placement, "round_robin|random");
    simulate->add_option("--placement-seed", sim.placement_seed)->each([&sim](const std::string&) {
        sim.placement_seed_set = true;
    });
    simulate->add_option("--contact-cost", sim.contact_cost);
    simulate->add_option("--element-cost", sim.element_cost);
    simulate->add_option("--plan", sim.plan_file, "Block plan JSON from decompose");
    simulate->add_option("--blocks", sim.blocks, "Explicit block indices")->delimiter(',');
    simulate->add_option("--columns", sim.columns, "Explicit column indices")->delimiter(',');
    sim.partition.attach(simulate);

    SweepArgs swe;
    CLI::App* sweep = app.add_subcommand("sweep", "Error-vs-g sweeps and held-out imputation");
    sweep->add_option("--input", swe.input, "Matrix file");
    sweep->add_option("--synthetic", swe.synthetic, "m,n,k,noise synthetic instance")->delimiter(',');
    sweep->add_option("--k", swe.k, "Target rank")->required();
    sweep->add_option("--r", swe.r, "Rows to sample (ignored with --holdout)");
    sweep->add_option("--g-list", swe.g_list, "Block counts to sweep")->delimiter(',')->required();
    sweep->add_option("--seeds", swe.seeds, "Number of seeds");
    sweep->add_option("--seed", swe.seed, "Base seed; cell i uses seed+i")->required();
    sweep->add_option("--mode", swe.mode, "Block sampling mode");
    sweep->add_option("--holdout", swe.holdout, "Hold out this many rows and impute them");
    sweep->add_flag("--per-seed", swe.per_seed, "Emit raw per-seed cells instead of aggregates");
    sweep->add_flag("--distinct-rows", swe.distinct_rows);
    sweep->add_option("--output", swe.output, "Sweep CSV (default stdout)");
    swe.partition.attach(sweep);

    GenArgs gen;
    CLI::App* generate = app.add_subcommand("gen", "Generate synthetic matrices");
    generate->add_option("--m", gen.m);
    generate->add_option("--n", gen.n);
    generate->add_option("--k", gen.k);
    generate->add_option("--noise", gen.noise);
    generate->add_option("--seed", gen.seed)->required();
    generate->add_option("--output", gen.output)->required();
    generate->add_flag("--surrogate", gen.surrogate, "Planted-spike time-series surrogate");
    generate->add_option("--planted-block", gen.planted_block);
    generate->add_option("--base-rank", gen.base_rank);
    generate->add_option("--spike-amp", gen.spike_amp);
    generate->add_option("--block-size", gen.block_size, "Surrogate block width");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("cli", e.what());
        return kExitValidation;
    }

    try {
        if (decompose->parsed()) {
            return run_decompose(dec);
        }
        if (scores->parsed()) {
            return run_scores(sco);
        }
        if (validate->parsed()) {
            return run_validate(val);
        }
        if (simulate->parsed()) {
            return run_simulate(sim);
        }
        if (sweep->parsed()) {
            return run_sweep(swe);
        }
        if (generate->parsed()) {
            return run_gen(gen);
        }
    } catch (const IterationFailure& e) {
        print_error("numerical", e.what());
        return kExitNumerical;
    } catch (const DegenerateR& e) {
        print_error("numerical", e.what());
        return kExitNumerical;
    } catch (const ParseError& e) {
        print_error("parse", e.what());
        return kExitValidation;
    } catch (const Error& e) {
        print_error("validation", e.what());
        return kExitValidation;
    } catch (const Json::exception& e) {
        print_error("parse", e.what());
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        print_error("validation", e.what());
        return kExitValidation;
    } catch (const std::out_of_range& e) {
        print_error("validation", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        print_error("internal", e.what());
        return kExitNumerical;
    }
    return 0;
}
