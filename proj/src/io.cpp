#include "bcur/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace bcur {

namespace {

constexpr std::array<char, 4> kMagic = {'B', 'C', 'U', 'R'};

std::string location(const std::filesystem::path& path, std::size_t line) {
    return path.string() + ":" + std::to_string(line);
}

bool parse_double(std::string_view token, double& value) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    return ec == std::errc{} && ptr == end;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

// Parses one CSV line into doubles; returns false (leaving values untouched)
// if any token fails, which is how an optional header line is recognized.
bool parse_row(std::string_view line, std::vector<double>& values) {
    values.clear();
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        const std::string_view token =
            trim(comma == std::string_view::npos ? line.substr(start) : line.substr(start, comma - start));
        double v = 0.0;
        if (!parse_double(token, v)) {
            return false;
        }
        values.push_back(v);
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return true;
}

}  // namespace

Matrix load_matrix_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    std::vector<double> entries;
    std::vector<double> row;
    std::size_t cols = 0;
    std::size_t rows = 0;
    std::size_t line_no = 0;
    bool first_content_line = true;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        if (!parse_row(line, row)) {
            if (first_content_line) {
                first_content_line = false;  // optional header
                continue;
            }
            throw ParseError(location(path, line_no) + ": malformed CSV row (non-numeric value)");
        }
        first_content_line = false;
        if (rows == 0) {
            cols = row.size();
        } else if (row.size() != cols) {
            throw ParseError(location(path, line_no) + ": expected " + std::to_string(cols) + " values, got " +
                             std::to_string(row.size()));
        }
        entries.insert(entries.end(), row.begin(), row.end());
        ++rows;
    }
    if (rows == 0) {
        throw ParseError(path.string() + ": no data rows");
    }
    try {
        return make_dense(static_cast<Index>(rows), static_cast<Index>(cols), entries);
    } catch (const std::invalid_argument& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

Matrix load_matrix_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    std::array<char, 4> magic{};
    in.read(magic.data(), 4);
    if (!in || magic != kMagic) {
        throw ParseError(path.string() + ": missing BCUR magic");
    }
    std::uint64_t rows = 0;
    std::uint64_t cols = 0;
    in.read(reinterpret_cast<char*>(&rows), sizeof rows);
    in.read(reinterpret_cast<char*>(&cols), sizeof cols);
    if (!in) {
        throw ParseError(path.string() + ": truncated header");
    }
    constexpr std::uint64_t kMaxDim = 1ull << 31;
    if (rows == 0 || cols == 0 || rows >= kMaxDim || cols >= kMaxDim) {
        throw ParseError(path.string() + ": unreasonable dimensions " + std::to_string(rows) + "x" +
                         std::to_string(cols));
    }
    std::vector<double> entries(rows * cols);
    in.read(reinterpret_cast<char*>(entries.data()), static_cast<std::streamsize>(entries.size() * sizeof(double)));
    if (!in) {
        throw ParseError(path.string() + ": truncated entry data");
    }
    try {
        return make_dense(static_cast<Index>(rows), static_cast<Index>(cols), entries);
    } catch (const std::invalid_argument& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

Matrix load_matrix(const std::filesystem::path& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) {
        throw ParseError("cannot open " + path.string());
    }
    std::array<char, 4> magic{};
    probe.read(magic.data(), 4);
    probe.close();
    if (magic == kMagic) {
        return load_matrix_binary(path);
    }
    return load_matrix_csv(path);
}

void save_matrix_csv(const std::filesystem::path& path, const Matrix& a) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot write " + path.string());
    }
    out.precision(17);
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            if (j > 0) {
                out << ',';
            }
            out << a(i, j);
        }
        out << '\n';
    }
}

void save_matrix_binary(const std::filesystem::path& path, const Matrix& a) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot write " + path.string());
    }
    out.write(kMagic.data(), 4);
    const std::uint64_t rows = static_cast<std::uint64_t>(a.rows());
    const std::uint64_t cols = static_cast<std::uint64_t>(a.cols());
    out.write(reinterpret_cast<const char*>(&rows), sizeof rows);
    out.write(reinterpret_cast<const char*>(&cols), sizeof cols);
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            const double v = a(i, j);
            out.write(reinterpret_cast<const char*>(&v), sizeof v);
        }
    }
}

void save_matrix(const std::filesystem::path& path, const Matrix& a) {
    if (path.extension() == ".bcur") {
        save_matrix_binary(path, a);
    } else {
        save_matrix_csv(path, a);
    }
}

void write_scores_csv(std::ostream& out, const BlockPartition& part, const ScoreVector& scores,
                      double stable_rank, double mu) {
    out.precision(17);
    out << "# normalizer=" << scores.normalizer << "\n";
    out << "# sum_scores=" << scores.scores.sum() << "\n";
    out << "# block_stable_rank=" << stable_rank << "\n";
    out << "# incoherence=" << mu << "\n";
    out << "block,start,end,width,score,probability\n";
    const Vector dist = scores.distribution();
    for (Index g = 0; g < part.num_blocks(); ++g) {
        const BlockRange& r = part.range(g);
        out << g << ',' << r.begin << ',' << r.end << ',' << r.width() << ',' << scores.scores(g) << ',' << dist(g)
            << "\n";
    }
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
    out.precision(17);
    out << "g,variant,mean,stddev,median\n";
    for (const SweepRow& row : sweep.rows) {
        out << row.g << ',' << to_string(row.variant) << ',' << row.mean << ',' << row.stddev << ',' << row.median
            << "\n";
    }
}

void write_sweep_cells_csv(std::ostream& out, const SweepResult& sweep) {
    out.precision(17);
    out << "g,seed,variant,value\n";
    for (const SweepCell& cell : sweep.cells) {
        out << cell.g << ',' << cell.seed << ',' << to_string(cell.variant) << ',' << cell.value << "\n";
    }
}

void write_coverage_csv(std::ostream& out, const std::vector<CoveragePoint>& curve) {
    out.precision(17);
    out << "k,coverage\n";
    for (const CoveragePoint& p : curve) {
        out << p.k << ',' << p.coverage << "\n";
    }
}

void write_timeline_csv(std::ostream& out, const std::vector<TimelineEntry>& timeline) {
    out.precision(17);
    out << "block,start_col,end_col,score,probability,start_seconds,end_seconds\n";
    for (const TimelineEntry& e : timeline) {
        out << e.block << ',' << e.begin_col << ',' << e.end_col << ',' << e.score << ',' << e.probability << ',';
        if (e.start_seconds) {
            out << *e.start_seconds;
        }
        out << ',';
        if (e.end_seconds) {
            out << *e.end_seconds;
        }
        out << "\n";
    }
}

void write_harness_csv(std::ostream& out, const HarnessResult& result) {
    out.precision(17);
    out << "trial,error,bound,violated\n";
    for (const TrialRecord& t : result.trials) {
        out << t.trial << ',' << t.error << ',' << t.bound << ',' << (t.violated ? 1 : 0) << "\n";
    }
}

}  // namespace bcur
