#include <qdelta/cli.hpp>

#include <gtest/gtest.h>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace cli = qdelta::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "qdelta");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) {
        out.push_back(line);
    }
    return out;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

class TempDir {
public:
    TempDir() : path_(std::filesystem::temp_directory_path() / ("qdelta_cli_" + std::to_string(::getpid()))) {
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    [[nodiscard]] const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace

TEST(Grid, InclusiveWithinHalfStep) {
    const auto g = cli::parse_grid("1.1:1.9:0.1");
    ASSERT_EQ(g.size(), 9u);
    EXPECT_EQ(g[2], 1.3);
    EXPECT_EQ(g.back(), 1.9);
    EXPECT_EQ(cli::parse_grid("0:1:0.3").size(), 4u);
    EXPECT_EQ(cli::parse_grid("0:1:0.4").size(), 3u);
    EXPECT_EQ(cli::parse_grid("1.5:1.5:0.1").size(), 1u);
    EXPECT_THROW(cli::parse_grid("1:2"), cli::usage_error);
    EXPECT_THROW(cli::parse_grid("2:1:0.1"), cli::usage_error);
    EXPECT_THROW(cli::parse_grid("1:2:0"), cli::usage_error);
}

TEST(ComplexArgument, AcceptedForms) {
    using C = qdelta::ComplexVal;
    EXPECT_EQ(cli::parse_complex("0"), C(0.0, 0.0));
    EXPECT_EQ(cli::parse_complex("-2.5"), C(-2.5, 0.0));
    EXPECT_EQ(cli::parse_complex("1+2i"), C(1.0, 2.0));
    EXPECT_EQ(cli::parse_complex("1-2j"), C(1.0, -2.0));
    EXPECT_EQ(cli::parse_complex("-i"), C(0.0, -1.0));
    EXPECT_EQ(cli::parse_complex("3i"), C(0.0, 3.0));
    EXPECT_EQ(cli::parse_complex("1e-3-1e+2i"), C(1e-3, -1e2));
    EXPECT_EQ(cli::parse_complex("(0.5,-4)"), C(0.5, -4.0));
    EXPECT_THROW(cli::parse_complex("abc"), cli::usage_error);
    EXPECT_THROW(cli::parse_complex("1+2"), cli::usage_error);
}

TEST(Cli, EvalAtOrigin) {
    const auto r = run({"eval", "--q", "1.5", "--z", "0"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "1+0i\n");
}

TEST(Cli, EvalOffAxis) {
    const auto r = run({"eval", "--q", "1.5", "--z", "-i"});
    ASSERT_EQ(r.code, 0);
    // 0.48 - 0.64i up to rounding in the last place
    EXPECT_EQ(r.out.front(), '0');
    const auto v = cli::parse_complex(r.out.substr(0, r.out.size() - 1));
    EXPECT_NEAR(v.real(), 0.48, 1e-15);
    EXPECT_NEAR(v.imag(), -0.64, 1e-15);
}

TEST(Cli, IqSweep) {
    const auto r = run({"iq", "--q-grid", "1.1:1.9:0.1"});
    EXPECT_EQ(r.code, 0);
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 10u);
    EXPECT_EQ(rows[0], "q,value,abs_err");
    EXPECT_EQ(rows[3].substr(0, 4), "1.3,");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double err = std::stod(rows[i].substr(rows[i].rfind(',') + 1));
        EXPECT_LE(err, 1e-8);
    }
}

TEST(Cli, DeltaSweep) {
    const auto r = run({"delta", "--q", "1.5", "--testfn", "gaussian", "--L-schedule", "10,100,1000,10000"});
    EXPECT_EQ(r.code, 0);
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[0], qdelta::kConvergenceCsvHeader);
    std::vector<double> fields;
    std::istringstream is(rows.back());
    for (std::string f; std::getline(is, f, ',');) {
        fields.push_back(std::stod(f));
    }
    ASSERT_EQ(fields.size(), 6u);
    EXPECT_EQ(fields[1], 10000.0);
    EXPECT_NEAR(fields[3], 12.566371, 1e-6);
    EXPECT_LE(fields[5], 1e-3);
}

TEST(Cli, DeltaTable) {
    const auto r = run({"delta", "--q", "1.9", "--testfn", "gaussian", "--format", "table"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("rate-limited"), std::string::npos);
}

TEST(Cli, GateFailureExitCode) {
    // Order 256 cannot resolve phases |ut(q-1)| up to 10 to 1e-8.
    const auto r = run({"superstat-check", "--q", "1.5"});
    EXPECT_EQ(r.code, 1);
    const auto ok = run({"superstat-check", "--q", "1.1,1.2", "--order", "512"});
    EXPECT_EQ(ok.code, 0);
    EXPECT_EQ(lines(ok.out).size(), 3u);
}

TEST(Cli, Baseline) {
    const auto r = run({"baseline", "--testfn", "gaussian", "--format", "table"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(Cli, Entropy) {
    const auto r = run({"entropy", "--density", "uniform", "--q", "1,1.5"});
    ASSERT_EQ(r.code, 0);
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_NEAR(std::stod(rows[1].substr(rows[1].rfind(',') + 1)), std::log(2.0), 1e-12);
    EXPECT_NEAR(std::stod(rows[2].substr(rows[2].rfind(',') + 1)), 2.0 * (1.0 - std::sqrt(0.5)), 1e-12);
    EXPECT_EQ(rows[2].rfind("uniform,1.5,", 0), 0u);
}

TEST(Report, NumbersRoundTripInShortestForm) {
    EXPECT_EQ(qdelta::format_number(1.9), "1.9");
    EXPECT_EQ(qdelta::format_number(0.1 + 0.2), "0.30000000000000004");
    EXPECT_EQ(qdelta::format_number(1e-300), "1e-300");
    EXPECT_EQ(qdelta::format_number(2.0 / 3.0, 4), "0.6667");
    EXPECT_EQ(qdelta::format_complex({0.0, -1.0}), "0-1i");
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"eval", "--q", "2.5", "--z", "0"}).code, 2);
    EXPECT_EQ(run({"eval", "--q", "1.5"}).code, 2);
    EXPECT_EQ(run({"eval", "--q", "1.5", "--z", "zz"}).code, 2);
    EXPECT_EQ(run({"delta", "--q", "1.5", "--testfn", "nope"}).code, 2);
    EXPECT_EQ(run({"delta", "--q", "1.5", "--L-schedule", "10,5,100"}).code, 2);
    EXPECT_EQ(run({"delta", "--testfn", "gaussian"}).code, 2);
    EXPECT_EQ(run({"iq", "--q-grid", "0.5:1.5:0.1"}).code, 2);
    EXPECT_EQ(run({"iq", "--abs-tol", "-1"}).code, 2);
    EXPECT_EQ(run({"entropy", "--density", "cauchy"}).code, 2);
    const auto r = run({"delta", "--q", "1.5", "--testfn", "nope"});
    EXPECT_NE(r.err.find("available"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, HelpListsColumns) {
    const auto r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("q,L,pairing,target,abs_err,rel_err"), std::string::npos);
}

TEST(Cli, OutputFileIsDeterministic) {
    TempDir dir;
    const auto a = dir.path() / "a.csv";
    const auto b = dir.path() / "b.csv";
    const std::vector<std::string> args{"delta", "--q", "1.25,1.5", "--testfn", "bump", "--threads", "3"};
    auto with_output = [&](const std::filesystem::path& p) {
        auto v = args;
        v.push_back("--output");
        v.push_back(p.string());
        return v;
    };
    EXPECT_EQ(run(with_output(a)).code, 0);
    EXPECT_EQ(run(with_output(b)).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(lines(slurp(a)).size(), 9u);
    EXPECT_FALSE(std::filesystem::exists(dir.path() / "a.csv.partial"));
}

TEST(Cli, NumericalErrorWritesTrailer) {
    TempDir dir;
    const auto p = dir.path() / "cut.csv";
    const auto r = run({"eval", "--q", "1.5", "--z", "3", "--output", p.string()});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("q_exponential(q=1.5, z=3+0i)"), std::string::npos);
    const auto text = slurp(p);
    EXPECT_EQ(text.rfind("error,\"", 0), 0u);
    EXPECT_EQ(text.back(), '\n');
}
