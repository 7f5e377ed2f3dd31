#pragma once

/**
 * @file cli.hpp
 * @brief Batch verification front-end: argument parsing and command execution.
 *
 * Exit status: 0 all gates pass, 1 gate failure, 2 usage error,
 * 3 numerical error (diagnostic on stderr, error trailer in the output).
 */

#include <qdelta/qdelta.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdelta::cli {

enum class Command { eval, iq, delta, superstat_check, baseline, entropy };
enum class Format { csv, table };

enum ExitCode : int { kOk = 0, kGateFailure = 1, kUsage = 2, kNumerical = 3 };

class usage_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Failure of a computation, tagged with the operation and its inputs.
class numerical_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AccuracyOverrides {
    std::optional<double> abs_tol;
    std::optional<double> rel_tol;
    std::optional<int> max_subdivisions;

    [[nodiscard]] quad::QuadAccuracy apply(quad::QuadAccuracy base) const {
        if (abs_tol) {
            base.abs_tol = *abs_tol;
        }
        if (rel_tol) {
            base.rel_tol = *rel_tol;
        }
        if (max_subdivisions) {
            base.max_subdivisions = *max_subdivisions;
        }
        return base;
    }
};

struct RunConfig {
    Command command = Command::eval;
    std::vector<double> q_values;
    ComplexVal z{0.0, 0.0};
    std::vector<double> schedule{10.0, 100.0, 1000.0, 10000.0};
    /// Corpus member name; "all" selects every in-class member (baseline only).
    std::string testfn;
    std::string density = "uniform";
    AccuracyOverrides accuracy;
    /// Identity-check tolerance for iq, superstat-check and baseline.
    double tolerance = 1e-8;
    ConvergenceGate gate;
    int order = 256;
    unsigned threads = 1;
    /// "-" is standard output.
    std::string output = "-";
    Format format = Format::csv;
};

// ---------------------------------------------------------------------------
// Argument helpers
// ---------------------------------------------------------------------------

namespace detail {

inline double parse_real(const std::string& text, const std::string& what) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (text.empty() || end != begin + text.size() || !std::isfinite(v)) {
        throw usage_error("invalid " + what + " '" + text + "'");
    }
    return v;
}

inline int decimals(const std::string& text) {
    const auto dot = text.find('.');
    if (dot == std::string::npos) {
        return 0;
    }
    auto end = text.find_first_of("eE", dot);
    if (end != std::string::npos) {
        return -1;
    }
    return static_cast<int>(text.size() - dot - 1);
}

inline std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

} // namespace detail

/// "start:stop:step", inclusive of stop within half a step.
inline std::vector<double> parse_grid(const std::string& text) {
    const auto parts = detail::split(text, ':');
    if (parts.size() != 3) {
        throw usage_error("grid must be start:stop:step, got '" + text + "'");
    }
    const double start = detail::parse_real(parts[0], "grid start");
    const double stop = detail::parse_real(parts[1], "grid stop");
    const double step = detail::parse_real(parts[2], "grid step");
    if (!(step > 0.0) || stop < start) {
        throw usage_error("grid needs step > 0 and start <= stop, got '" + text + "'");
    }
    const auto count = static_cast<long>(std::floor((stop - start) / step + 0.5 - 1e-9)) + 1;
    if (count > 1000000) {
        throw usage_error("grid '" + text + "' has too many points");
    }
    // Snap to the decimal precision of the input so 1.1:1.9:0.1 yields 1.3, not 1.3000000000000003.
    int digits = -1;
    for (const auto& p : parts) {
        const int d = detail::decimals(p);
        digits = (d < 0 || digits == -2) ? -2 : std::max(digits, d);
    }
    std::vector<double> out;
    for (long k = 0; k < count; ++k) {
        double v = start + static_cast<double>(k) * step;
        if (digits >= 0 && digits <= 15) {
            const double scale = std::pow(10.0, digits);
            v = std::round(v * scale) / scale;
        }
        out.push_back(v);
    }
    return out;
}

inline std::vector<double> parse_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    for (const auto& p : detail::split(text, ',')) {
        out.push_back(detail::parse_real(p, what));
    }
    return out;
}

/// Accepts "x", "x+yi", "x-yi", "yi", "i", "-i" and "(x,y)"; 'j' may replace 'i'.
inline ComplexVal parse_complex(const std::string& raw) {
    std::string text;
    for (char c : raw) {
        if (c != ' ') {
            text.push_back(c == 'j' ? 'i' : c);
        }
    }
    auto fail = [&raw]() -> ComplexVal { throw usage_error("invalid complex number '" + raw + "'"); };
    if (text.empty()) {
        return fail();
    }
    if (text.front() == '(' && text.back() == ')') {
        const auto parts = detail::split(text.substr(1, text.size() - 2), ',');
        if (parts.size() != 2) {
            return fail();
        }
        return {detail::parse_real(parts[0], "real part"), detail::parse_real(parts[1], "imaginary part")};
    }
    if (text.back() != 'i') {
        return {detail::parse_real(text, "complex number"), 0.0};
    }
    const std::string body = text.substr(0, text.size() - 1);
    // Split at the last sign that is not an exponent sign or the leading character.
    std::string::size_type split = std::string::npos;
    for (std::string::size_type k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_of = [&](const std::string& s) {
        if (s.empty() || s == "+") {
            return 1.0;
        }
        if (s == "-") {
            return -1.0;
        }
        return detail::parse_real(s, "imaginary part");
    };
    if (split == std::string::npos) {
        return {0.0, imag_of(body)};
    }
    return {detail::parse_real(body.substr(0, split), "real part"), imag_of(body.substr(split))};
}

inline constexpr const char* kColumnsHelp = R"(CSV columns:
  eval             (no header) a single value formatted re+imi
  iq               q,value,abs_err
  delta            q,L,pairing,target,abs_err,rel_err
  superstat-check  q,order,points,max_abs_err
  baseline         testfn,value,target,abs_err
  entropy          density,q,entropy
)";

struct ParseOutcome {
    std::optional<RunConfig> config;
    int exit_code = kOk;
};

/**
 * Parses the command line. Help requests return exit code 0 and no config;
 * invalid arguments print a message to `err` and return kUsage.
 */
inline ParseOutcome parse(int argc, const char* const* argv, std::ostream& out = std::cout,
                          std::ostream& err = std::cerr) {
    CLI::App app{"Numerical checks for the complex q-exponential and the q-generalized delta kernel", "qdelta"};
    app.footer(kColumnsHelp);
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every command");

    RunConfig cfg;
    std::string q_text, q_grid, z_text, schedule_text, format_text = "csv";
    std::optional<double> abs_tol, rel_tol, gate_rel, gate_abs, gate_zero;
    std::optional<int> max_subdivisions;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--output,-o", cfg.output, "Output path, '-' for standard output")->default_val("-");
        sub->add_option("--format", format_text, "csv or table")->check(CLI::IsMember({"csv", "table"}));
        sub->add_option("--abs-tol", abs_tol, "Absolute quadrature tolerance");
        sub->add_option("--rel-tol", rel_tol, "Relative quadrature tolerance");
        sub->add_option("--max-subdivisions", max_subdivisions, "Adaptive subdivision limit");
        sub->add_option("--threads", cfg.threads, "Upper bound on concurrent sweep entries")->check(CLI::Range(1u, 256u));
    };
    auto add_q = [&](CLI::App* sub, bool grid) {
        auto* opt = sub->add_option("--q", q_text, "Index q in (1,2); comma-separated list allowed");
        if (grid) {
            sub->add_option("--q-grid", q_grid, "Sweep start:stop:step, both ends inclusive")->excludes(opt);
        }
    };

    auto* eval = app.add_subcommand("eval", "Print e_q(z)");
    add_q(eval, false);
    eval->add_option("--z", z_text, "Complex argument: x, x+yi, yi or (x,y)")->required();
    add_common(eval);

    auto* iq = app.add_subcommand("iq", "Sweep the trigonometric integral I_q against pi/2");
    add_q(iq, true);
    iq->add_option("--tolerance", cfg.tolerance, "Gate on |value - pi/2|");
    add_common(iq);

    auto* delta = app.add_subcommand("delta", "Convergence sweep of <K_{q,L}, phi> to (2 pi/(2-q)) phi(0)");
    add_q(delta, true);
    delta->add_option("--testfn", cfg.testfn, "Corpus member")->default_val("gaussian");
    delta->add_option("--L-schedule", schedule_text, "Increasing comma-separated L values");
    delta->add_option("--gate-rel", gate_rel, "Relative final-error gate for nonzero targets");
    delta->add_option("--gate-abs", gate_abs, "Absolute part of the final-error gate");
    delta->add_option("--gate-zero", gate_zero, "Final-error gate for zero targets");
    add_common(delta);

    auto* superstat = app.add_subcommand("superstat-check", "Max |E[e^{-iut(q-1)W}] - e_q(-iut)| over u,t in -5..5");
    add_q(superstat, true);
    superstat->add_option("--order", cfg.order, "Gauss-Laguerre order")->check(CLI::Range(8, 100000));
    superstat->add_option("--tolerance", cfg.tolerance, "Gate on the maximum error");
    add_common(superstat);

    auto* baseline = app.add_subcommand("baseline", "int phi_hat(u) du against 2 pi phi(0)");
    baseline->add_option("--testfn", cfg.testfn, "Corpus member, or 'all' for every in-class member")
        ->default_val("all");
    baseline->add_option("--tolerance", cfg.tolerance, "Gate on the absolute error");
    add_common(baseline);

    auto* entropy = app.add_subcommand("entropy", "Entropy H_q of a named sampled density");
    add_q(entropy, false);
    entropy->add_option("--density", cfg.density, "uniform (on [0,2]), triangular (on [0,2]) or gaussian")
        ->default_val("uniform");
    add_common(entropy);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return {std::nullopt, kOk};
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return {std::nullopt, kOk};
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return {std::nullopt, kUsage};
    }

    try {
        const auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "eval") {
            cfg.command = Command::eval;
        } else if (name == "iq") {
            cfg.command = Command::iq;
        } else if (name == "delta") {
            cfg.command = Command::delta;
        } else if (name == "superstat-check") {
            cfg.command = Command::superstat_check;
        } else if (name == "baseline") {
            cfg.command = Command::baseline;
        } else {
            cfg.command = Command::entropy;
        }
        cfg.format = format_text == "table" ? Format::table : Format::csv;

        if (!q_grid.empty()) {
            cfg.q_values = parse_grid(q_grid);
        } else if (!q_text.empty()) {
            cfg.q_values = parse_list(q_text, "q");
        } else if (cfg.command == Command::iq || cfg.command == Command::superstat_check) {
            cfg.q_values = parse_grid("1.1:1.9:0.1");
        } else if (cfg.command == Command::entropy) {
            cfg.q_values = {1.0};
        } else if (cfg.command != Command::baseline) {
            throw usage_error(name + ": --q is required");
        }
        for (double q : cfg.q_values) {
            if (cfg.command == Command::entropy && q == 1.0) {
                continue;
            }
            try {
                QIndex{q};
            } catch (const std::domain_error& e) {
                throw usage_error(e.what());
            }
        }
        if (cfg.command == Command::eval && cfg.q_values.size() != 1) {
            throw usage_error("eval: exactly one q value is required");
        }
        if (!z_text.empty()) {
            cfg.z = parse_complex(z_text);
        }
        if (!schedule_text.empty()) {
            cfg.schedule = parse_list(schedule_text, "L");
        }
        if (cfg.command == Command::delta) {
            if (cfg.schedule.size() < 3) {
                throw usage_error("delta: --L-schedule needs at least 3 values");
            }
            for (std::size_t i = 0; i < cfg.schedule.size(); ++i) {
                if (!(cfg.schedule[i] > 0.0) || (i > 0 && !(cfg.schedule[i] > cfg.schedule[i - 1]))) {
                    throw usage_error("delta: --L-schedule must be positive and strictly increasing");
                }
            }
        }
        if (cfg.command == Command::delta || (cfg.command == Command::baseline && cfg.testfn != "all")) {
            try {
                (void)find_test_function(cfg.testfn);
            } catch (const unknown_test_function& e) {
                throw usage_error(e.what());
            }
        }
        if (cfg.command == Command::entropy && cfg.density != "uniform" && cfg.density != "triangular" &&
            cfg.density != "gaussian") {
            throw usage_error("entropy: unknown density '" + cfg.density + "'; available: uniform triangular gaussian");
        }
        cfg.accuracy = {abs_tol, rel_tol, max_subdivisions};
        try {
            cfg.accuracy.apply({}).validate();
        } catch (const std::invalid_argument& e) {
            throw usage_error(e.what());
        }
        if (gate_rel) {
            cfg.gate.rel = *gate_rel;
        }
        if (gate_abs) {
            cfg.gate.abs = *gate_abs;
        }
        cfg.gate.zero_target = gate_zero;
        if (!(cfg.tolerance > 0.0)) {
            throw usage_error("--tolerance must be positive");
        }
    } catch (const usage_error& e) {
        err << "qdelta: " << e.what() << "\nRun with --help for more information.\n";
        return {std::nullopt, kUsage};
    }
    return {std::move(cfg), kOk};
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

namespace detail {

template <typename Fn>
auto guarded(const std::string& operation, Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        throw numerical_failure(operation + ": " + e.what());
    }
}

inline std::string describe_q(double q) { return "q=" + format_number(q); }

inline SampledDensity named_density(const std::string& name) {
    constexpr std::size_t n = 20001;
    if (name == "uniform") {
        return SampledDensity::from_function([](double) { return 0.5; }, 0.0, 2.0, n);
    }
    if (name == "triangular") {
        return SampledDensity::from_function([](double x) { return 1.0 - std::abs(x - 1.0); }, 0.0, 2.0, n);
    }
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    return SampledDensity::from_function([norm](double x) { return norm * std::exp(-0.5 * x * x); }, -12.0, 12.0, n);
}

struct CommandOutput {
    std::string text;
    bool gates_passed = true;
};

inline CommandOutput run_eval(const RunConfig& cfg) {
    const double q = cfg.q_values.front();
    const ComplexVal v = guarded("q_exponential(" + describe_q(q) + ", z=" + format_complex(cfg.z) + ")",
                                 [&] { return q_exponential(QIndex{q}, cfg.z); });
    return {format_complex(v) + "\n", true};
}

inline CommandOutput run_iq(const RunConfig& cfg) {
    const auto acc = cfg.accuracy.apply({1e-13, 1e-12, 2000});
    const auto values = ordered_map(cfg.q_values.size(), cfg.threads, [&](std::size_t i) {
        const double q = cfg.q_values[i];
        return guarded("iq_value(" + describe_q(q) + ")", [&] { return iq_value(QIndex{q}, acc); });
    });
    CommandOutput out;
    std::ostringstream os;
    char line[160];
    if (cfg.format == Format::csv) {
        os << "q,value,abs_err\n";
    } else {
        std::snprintf(line, sizeof line, "%10s  %22s  %12s\n", "q", "I_q", "|I_q - pi/2|");
        os << line;
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double err = std::abs(values[i] - 0.5 * std::numbers::pi);
        out.gates_passed = out.gates_passed && err <= cfg.tolerance;
        if (cfg.format == Format::csv) {
            os << format_number(cfg.q_values[i]) << ',' << format_number(values[i]) << ',' << format_number(err) << '\n';
        } else {
            std::snprintf(line, sizeof line, "%10.6g  %22.17g  %12.4e\n", cfg.q_values[i], values[i], err);
            os << line;
        }
    }
    if (cfg.format == Format::table) {
        os << "result: " << (out.gates_passed ? "PASS" : "FAIL") << " (tolerance " << format_number(cfg.tolerance, 6)
           << ")\n";
    }
    out.text = os.str();
    return out;
}

inline CommandOutput run_delta(const RunConfig& cfg) {
    const auto phi = find_test_function(cfg.testfn);
    const auto acc = cfg.accuracy.apply({1e-12, 1e-12, 8000});
    CommandOutput out;
    std::ostringstream os;
    bool first = true;
    for (double q : cfg.q_values) {
        const auto report = guarded("delta_convergence(" + describe_q(q) + ", testfn=" + phi.name + ")",
                                    [&] { return delta_convergence(QIndex{q}, phi, cfg.schedule, acc, cfg.gate, cfg.threads); });
        // Small envelope exponents are reported, not failed.
        out.gates_passed = out.gates_passed && (report.passed || report.rate_limited);
        if (cfg.format == Format::csv) {
            std::string csv = to_csv(report);
            os << (first ? csv : csv.substr(csv.find('\n') + 1));
        } else {
            os << (first ? "" : "\n") << to_table(report);
        }
        first = false;
    }
    out.text = os.str();
    return out;
}

inline CommandOutput run_superstat(const RunConfig& cfg) {
    const auto rows = ordered_map(cfg.q_values.size(), cfg.threads, [&](std::size_t i) {
        const double qv = cfg.q_values[i];
        return guarded("superstat_qexp(" + describe_q(qv) + ", order=" + std::to_string(cfg.order) + ")", [&] {
            const QIndex q{qv};
            double worst = 0.0;
            int points = 0;
            for (int u = -5; u <= 5; ++u) {
                for (int t = -5; t <= 5; ++t) {
                    if (std::abs(u * t * q.deformation()) > 10.0) {
                        continue;
                    }
                    const ComplexVal lhs = superstat_qexp(q, u, t, cfg.order);
                    const ComplexVal rhs = q_exponential(q, ComplexVal{0.0, -static_cast<double>(u * t)});
                    worst = std::max(worst, std::abs(lhs - rhs));
                    ++points;
                }
            }
            return std::pair{worst, points};
        });
    });
    CommandOutput out;
    std::ostringstream os;
    char line[160];
    if (cfg.format == Format::csv) {
        os << "q,order,points,max_abs_err\n";
    } else {
        std::snprintf(line, sizeof line, "%10s  %6s  %6s  %12s\n", "q", "order", "points", "max_abs_err");
        os << line;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto [worst, points] = rows[i];
        out.gates_passed = out.gates_passed && worst <= cfg.tolerance;
        if (cfg.format == Format::csv) {
            os << format_number(cfg.q_values[i]) << ',' << cfg.order << ',' << points << ',' << format_number(worst)
               << '\n';
        } else {
            std::snprintf(line, sizeof line, "%10.6g  %6d  %6d  %12.4e\n", cfg.q_values[i], cfg.order, points, worst);
            os << line;
        }
    }
    if (cfg.format == Format::table) {
        os << "result: " << (out.gates_passed ? "PASS" : "FAIL") << " (tolerance " << format_number(cfg.tolerance, 6)
           << ")\n";
    }
    out.text = os.str();
    return out;
}

inline CommandOutput run_baseline(const RunConfig& cfg) {
    std::vector<TestFunction> members;
    if (cfg.testfn == "all") {
        for (auto& f : corpus()) {
            if (f.in_class) {
                members.push_back(std::move(f));
            }
        }
    } else {
        members.push_back(find_test_function(cfg.testfn));
    }
    const auto acc = cfg.accuracy.apply({1e-10, 1e-10, 2000});
    const auto values = ordered_map(members.size(), cfg.threads, [&](std::size_t i) {
        return guarded("classical_delta_check(testfn=" + members[i].name + ")",
                       [&] { return classical_delta_check(members[i], acc); });
    });
    CommandOutput out;
    std::ostringstream os;
    char line[200];
    if (cfg.format == Format::csv) {
        os << "testfn,value,target,abs_err\n";
    } else {
        std::snprintf(line, sizeof line, "%-16s  %22s  %22s  %12s\n", "testfn", "int phi_hat", "2 pi phi(0)", "abs_err");
        os << line;
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
        const double target = 2.0 * std::numbers::pi * members[i].value_at_zero;
        const double err = std::abs(values[i] - target);
        out.gates_passed = out.gates_passed && err <= cfg.tolerance;
        if (cfg.format == Format::csv) {
            os << members[i].name << ',' << format_number(values[i]) << ',' << format_number(target) << ','
               << format_number(err) << '\n';
        } else {
            std::snprintf(line, sizeof line, "%-16s  %22.17g  %22.17g  %12.4e\n", members[i].name.c_str(), values[i],
                          target, err);
            os << line;
        }
    }
    if (cfg.format == Format::table) {
        os << "result: " << (out.gates_passed ? "PASS" : "FAIL") << " (tolerance " << format_number(cfg.tolerance, 6)
           << ")\n";
    }
    out.text = os.str();
    return out;
}

inline CommandOutput run_entropy(const RunConfig& cfg) {
    const auto density = named_density(cfg.density);
    std::ostringstream os;
    if (cfg.format == Format::csv) {
        os << "density,q,entropy\n";
    }
    for (double q : cfg.q_values) {
        const double h = guarded("entropy(density=" + cfg.density + ", " + describe_q(q) + ")",
                                 [&] { return entropy(density, q); });
        if (cfg.format == Format::csv) {
            os << cfg.density << ',' << format_number(q) << ',' << format_number(h) << '\n';
        } else {
            os << "H_" << format_number(q, 10) << "(" << cfg.density << ") = " << format_number(h) << '\n';
        }
    }
    return {os.str(), true};
}

/// Writes via a temporary file and rename so readers never see a partial file.
inline void write_atomically(const std::string& path, const std::string& text) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".partial";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        }
        f << text;
        f.flush();
        if (!f) {
            throw std::runtime_error("write to '" + tmp.string() + "' failed");
        }
    }
    std::filesystem::rename(tmp, target);
}

} // namespace detail

/// Executes a parsed configuration, writing the report to cfg.output (or `out` for "-").
inline int run(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    detail::CommandOutput result;
    int code = kOk;
    try {
        switch (cfg.command) {
        case Command::eval:
            result = detail::run_eval(cfg);
            break;
        case Command::iq:
            result = detail::run_iq(cfg);
            break;
        case Command::delta:
            result = detail::run_delta(cfg);
            break;
        case Command::superstat_check:
            result = detail::run_superstat(cfg);
            break;
        case Command::baseline:
            result = detail::run_baseline(cfg);
            break;
        case Command::entropy:
            result = detail::run_entropy(cfg);
            break;
        }
        code = result.gates_passed ? kOk : kGateFailure;
    } catch (const numerical_failure& e) {
        err << "qdelta: numerical error in " << e.what() << '\n';
        if (cfg.format == Format::csv) {
            std::string quoted;
            for (char c : std::string(e.what())) {
                quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
            }
            result.text += "error,\"" + quoted + "\"\n";
        } else {
            result.text += std::string("error: ") + e.what() + '\n';
        }
        code = kNumerical;
    }
    if (cfg.output == "-") {
        out << result.text;
        out.flush();
        return code;
    }
    try {
        detail::write_atomically(cfg.output, result.text);
    } catch (const std::exception& e) {
        err << "qdelta: " << e.what() << '\n';
        return kNumerical;
    }
    return code;
}

/// parse + run.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    auto parsed = parse(argc, argv, out, err);
    if (!parsed.config) {
        return parsed.exit_code;
    }
    return run(*parsed.config, out, err);
}

} // namespace qdelta::cli
