#pragma once

#include <qdelta/deltaseq.hpp>
#include <qdelta/qfunc.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

namespace qdelta {

/// Shortest decimal that round-trips to v, or %.{digits}g when digits > 0.
inline std::string format_number(double v, int digits = 0) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    if (digits > 0) {
        std::snprintf(buf, sizeof buf, "%.*g", digits, v);
        return buf;
    }
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

/// "re+imi" / "re-imi".
inline std::string format_complex(ComplexVal z, int digits = 0) {
    const double im = z.imag();
    const bool negative = std::signbit(im) && im != 0.0;
    return format_number(z.real() == 0.0 ? 0.0 : z.real(), digits) + (negative ? "-" : "+") +
           format_number(std::abs(im), digits) + "i";
}

inline constexpr const char* kConvergenceCsvHeader = "q,L,pairing,target,abs_err,rel_err";

inline std::string to_csv(const ConvergenceReport& r) {
    std::ostringstream os;
    os << kConvergenceCsvHeader << '\n';
    for (const auto& row : r.rows) {
        os << format_number(r.q) << ',' << format_number(row.L) << ',' << format_number(row.pairing) << ','
           << format_number(row.target) << ',' << format_number(row.abs_err) << ',' << format_number(row.rel_err)
           << '\n';
    }
    return os.str();
}

inline std::string to_table(const ConvergenceReport& r) {
    std::ostringstream os;
    char line[256];
    os << "test function: " << r.phi_name << "   q = " << format_number(r.q, 10) << '\n';
    std::snprintf(line, sizeof line, "%12s  %20s  %20s  %12s  %12s\n", "L", "pairing", "target", "abs_err", "rel_err");
    os << line;
    for (const auto& row : r.rows) {
        std::snprintf(line, sizeof line, "%12.6g  %20.12f  %20.12f  %12.4e  %12.4e\n", row.L, row.pairing, row.target,
                      row.abs_err, row.rel_err);
        os << line;
    }
    os << "fitted rate: " << (r.fitted_rate ? format_number(*r.fitted_rate, 6) : std::string("n/a"))
       << "   envelope exponent: -" << format_number(r.envelope_exponent, 6) << '\n';
    os << "allowed final error: " << format_number(r.allowed_error, 6) << "   monotone: " << (r.monotone ? "yes" : "no")
       << '\n';
    os << "result: " << (r.passed ? "PASS" : "FAIL") << (r.rate_limited ? " (rate-limited)" : "") << '\n';
    return os.str();
}

} // namespace qdelta
