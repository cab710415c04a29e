#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bcur/io.hpp"
#include "bcur/serialize.hpp"
#include "test_support.hpp"

using namespace bcur;
using test::random_matrix;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

}  // namespace

TEST_CASE("CSV round trip preserves values exactly") {
    Rng rng(1);
    const Matrix a = random_matrix(rng, 7, 5);
    const auto path = temp_file("bcur_io_roundtrip.csv");
    save_matrix_csv(path, a);
    const Matrix b = load_matrix(path);
    CHECK((a.array() == b.array()).all());
}

TEST_CASE("binary round trip preserves values bit-for-bit") {
    Rng rng(2);
    const Matrix a = random_matrix(rng, 9, 4);
    const auto path = temp_file("bcur_io_roundtrip.bcur");
    save_matrix(path, a);  // extension selects binary
    const Matrix b = load_matrix(path);
    CHECK((a.array() == b.array()).all());

    // sniffing: load_matrix_binary rejects a CSV file
    const auto csv = temp_file("bcur_io_notbinary.csv");
    save_matrix_csv(csv, a);
    CHECK_THROWS_AS(load_matrix_binary(csv), ParseError);
}

TEST_CASE("CSV header handling") {
    const auto path = temp_file("bcur_io_header.csv");
    write_file(path, "t0,t1,t2\n1,2,3\n4,5,6\n");
    const Matrix a = load_matrix_csv(path);
    CHECK(a.rows() == 2);
    CHECK(a.cols() == 3);
    CHECK(a(1, 2) == 6.0);

    write_file(path, "1,2,3\n4,5,6\n");
    CHECK(load_matrix_csv(path).rows() == 2);
}

TEST_CASE("malformed CSV errors name the line") {
    const auto path = temp_file("bcur_io_bad.csv");
    write_file(path, "1,2,3\n4,oops,6\n");
    try {
        load_matrix_csv(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find(":2") != std::string::npos);
    }

    write_file(path, "1,2,3\n4,5\n");
    try {
        load_matrix_csv(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find(":2") != std::string::npos);
        CHECK(std::string(e.what()).find("expected 3") != std::string::npos);
    }

    write_file(path, "");
    CHECK_THROWS_AS(load_matrix_csv(path), ParseError);

    write_file(path, "1,2\n3,nan\n");
    CHECK_THROWS_AS(load_matrix_csv(path), ParseError);
}

TEST_CASE("truncated binary is rejected") {
    const auto path = temp_file("bcur_io_trunc.bcur");
    {
        std::ofstream out(path, std::ios::binary);
        out << "BCUR";
        const std::uint64_t rows = 4, cols = 4;
        out.write(reinterpret_cast<const char*>(&rows), 8);
        out.write(reinterpret_cast<const char*>(&cols), 8);
        const double v = 1.5;
        out.write(reinterpret_cast<const char*>(&v), 8);  // only 1 of 16 entries
    }
    CHECK_THROWS_AS(load_matrix_binary(path), ParseError);
}

TEST_CASE("sampling plan JSON round trip") {
    Rng rng(3);
    Vector probs(4);
    probs << 0.1, 0.2, 0.3, 0.4;
    const SamplingPlan plan = draw_blocks(probs, 6, SamplingMode::with_replacement, rng);
    const SamplingPlan back = plan_from_json(plan_to_json(plan));
    REQUIRE(back.draws.size() == plan.draws.size());
    CHECK(back.seed == plan.seed);
    CHECK(back.mode == plan.mode);
    for (std::size_t i = 0; i < plan.draws.size(); ++i) {
        CHECK(back.draws[i].block == plan.draws[i].block);
        CHECK(back.draws[i].probability == plan.draws[i].probability);
        CHECK(back.draws[i].scale == plan.draws[i].scale);
    }

    const RowPlan rows = draw_rows(9, 5, rng);
    const RowPlan rows_back = row_plan_from_json(row_plan_to_json(rows));
    REQUIRE(rows_back.draws.size() == rows.draws.size());
    CHECK(rows_back.source_rows == 9);
    for (std::size_t i = 0; i < rows.draws.size(); ++i) {
        CHECK(rows_back.draws[i].row == rows.draws[i].row);
        CHECK(rows_back.draws[i].scale == rows.draws[i].scale);
    }
}

TEST_CASE("replaying a serialized plan reproduces the materialization") {
    Rng rng(4);
    const Matrix a = random_matrix(rng, 6, 12);
    const BlockPartition part = BlockPartition::equal_blocks(12, 3);
    const Vector probs = Vector::Constant(4, 0.25);
    const SamplingPlan plan = draw_blocks(probs, 5, SamplingMode::with_replacement, rng);
    const SamplingPlan replay = plan_from_json(plan_to_json(plan));
    CHECK((materialize_columns(a, part, plan).array() == materialize_columns(a, part, replay).array()).all());
}

TEST_CASE("CSV writers emit documented headers") {
    Rng rng(5);
    const Matrix a = random_matrix(rng, 6, 8);
    const BlockPartition part = BlockPartition::equal_blocks(8, 2);
    const SvdResult s = truncate(svd(a), 2);

    std::ostringstream scores;
    write_scores_csv(scores, part, block_leverage(s.right, part), 1.5, 2.0);
    CHECK(scores.str().find("block,start,end,width,score,probability") != std::string::npos);

    std::ostringstream coverage;
    write_coverage_csv(coverage, coverage_curve(a, 3));
    CHECK(coverage.str().rfind("k,coverage", 0) == 0);

    std::ostringstream timeline;
    write_timeline_csv(timeline, leverage_timeline(a, part, 2, 4.0));
    CHECK(timeline.str().rfind("block,start_col,end_col,score,probability,start_seconds,end_seconds", 0) == 0);

    HarnessResult dummy;
    dummy.trials = {{0, 0.5, 1.0, false}, {1, 1.5, 1.0, true}};
    dummy.delta = 0.2;
    std::ostringstream harness;
    write_harness_csv(harness, dummy);
    CHECK(harness.str().rfind("trial,error,bound,violated", 0) == 0);
    CHECK(harness.str().find("1,1.5,1,1") != std::string::npos);
}
