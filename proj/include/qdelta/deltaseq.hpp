#pragma once

/**
 * @file deltaseq.hpp
 * @brief The truncated q-kernel K_{q,L}(x) = int_{-L}^{L} e_q(-ikx) dk and its
 *        action on test functions.
 *
 * With a = (2-q)/(q-1) and beta = (q-1) L x the k-integral has the closed form
 *
 *     K_{q,L}(x) = 2 sin(a arctan beta) (1 + beta^2)^{-a/2} / ((2-q) x),
 *
 * K_{q,L}(0) = 2L. K_{q,L}(x) = L K_{q,1}(Lx), its total mass is c_q, and for
 * fixed x != 0 it decays like L^{-a}. Consequently <K_{q,L}, phi> approaches
 * c_q phi(0) with error O(L^{-a}), which is slow when q is close to 2.
 *
 * The mass identity reduces, via x = tan(theta)/((q-1)L), to
 *
 *     int_0^{pi/2} sin(a theta) cos(theta)^{a-1} / sin(theta) d theta = pi/2.
 */

#include <qdelta/parallel.hpp>
#include <qdelta/qfunc.hpp>
#include <qdelta/quad.hpp>
#include <qdelta/testfn.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdelta {

struct KernelParams {
    KernelParams(QIndex q_index, double length) : q(q_index), L(length) {
        if (!(length > 0.0) || !std::isfinite(length)) {
            throw std::domain_error("KernelParams: L must be finite and positive");
        }
    }
    QIndex q;
    double L;
};

/// int_{-L}^{L} e_q(-ikx) dk by adaptive quadrature (brute-force oracle for the closed form).
inline quad::QuadResult<ComplexVal> kernel_numeric_result(const KernelParams& p, double x,
                                                          const quad::QuadAccuracy& acc) {
    auto integrand = [&](double k) { return q_exponential(p.q, ComplexVal{0.0, -k * x}); };
    // The integrand varies on the scale 1/((q-1)|x|) around k = 0.
    std::vector<double> breaks{0.0};
    if (x != 0.0) {
        const double scale = 1.0 / (p.q.deformation() * std::abs(x));
        for (double m : {1.0, 10.0, 100.0}) {
            if (m * scale < p.L) {
                breaks.insert(breaks.begin(), -m * scale);
                breaks.push_back(m * scale);
            }
        }
    }
    return quad::integrate_adaptive(integrand, -p.L, p.L, acc, breaks);
}

inline ComplexVal kernel_numeric(const KernelParams& p, double x, const quad::QuadAccuracy& acc = {}) {
    return kernel_numeric_result(p, x, acc).value;
}

/// Phase a * arctan((q-1) L x) of the closed-form kernel; bounded by a*pi/2.
inline double kernel_phase(const KernelParams& p, double x) {
    return p.q.envelope_exponent() * std::atan(p.q.deformation() * p.L * x);
}

inline double kernel_closed_form(const KernelParams& p, double x) {
    if (x == 0.0) {
        return 2.0 * p.L;
    }
    const double a = p.q.envelope_exponent();
    const double beta = p.q.deformation() * p.L * x;
    const double envelope = std::exp(-0.5 * a * std::log1p(beta * beta));
    return 2.0 * std::sin(a * std::atan(beta)) * envelope / ((2.0 - p.q.value()) * x);
}

/**
 * int K_{q,L}(t) phi(t) dt over [-T, -delta], [-delta, delta], [delta, T]
 * with delta = 10/L. T is taken from phi's decay descriptor using
 * |K(t)| <= 2/((2-q)|t|).
 */
inline quad::QuadResult<double> pair_result(const KernelParams& p, const TestFunction& phi,
                                            const quad::QuadAccuracy& acc) {
    auto integrand = [&](double t) {
        const double v = phi.eval(t);
        return v == 0.0 ? 0.0 : kernel_closed_form(p, t) * v;
    };
    const double budget = 0.05 * acc.abs_tol * (2.0 - p.q.value());
    const double radius = std::max(1.0, phi.tail.radius(budget));
    const double delta = 10.0 / p.L;

    quad::QuadAccuracy local = acc;
    local.max_subdivisions = std::max(acc.max_subdivisions, 8000);

    quad::QuadResult<double> total;
    auto add = [&total](const quad::QuadResult<double>& r) {
        total.value += r.value;
        total.err_estimate += r.err_estimate;
        total.evaluations += r.evaluations;
    };
    if (delta >= radius) {
        add(quad::integrate_adaptive(integrand, -radius, radius, local, std::vector<double>{0.0}));
        return total;
    }
    add(quad::integrate_adaptive(integrand, -delta, delta, local, std::vector<double>{-1.0 / p.L, 0.0, 1.0 / p.L}));
    // Geometric breakpoints from the kernel scale out to the unit scale of phi.
    std::vector<double> right;
    for (double b = 2.0 * delta; b < radius; b *= 2.0) {
        right.push_back(b);
    }
    std::vector<double> left(right.rbegin(), right.rend());
    for (double& b : left) {
        b = -b;
    }
    add(quad::integrate_adaptive(integrand, delta, radius, local, right));
    add(quad::integrate_adaptive(integrand, -radius, -delta, local, left));
    total.err_estimate += 2.0 * phi.tail.tail_mass(radius) / ((2.0 - p.q.value()) * radius);
    return total;
}

inline double pair(const KernelParams& p, const TestFunction& phi, const quad::QuadAccuracy& acc = {}) {
    return pair_result(p, phi, acc).value;
}

// ---------------------------------------------------------------------------
// Convergence harness
// ---------------------------------------------------------------------------

/// Allowed final error: abs + rel * |target| for nonzero targets, zero_target otherwise.
struct ConvergenceGate {
    double rel = 1e-3;
    double abs = 0.0;
    /// When unset, zero targets use 1e-4 * (1 + sup|phi|).
    std::optional<double> zero_target;

    [[nodiscard]] double allowed(double target, double sup_norm) const {
        if (target != 0.0) {
            return abs + rel * std::abs(target);
        }
        return zero_target.value_or(1e-4 * (1.0 + sup_norm));
    }
};

struct ConvergenceRow {
    double L = 0.0;
    double pairing = 0.0;
    double target = 0.0;
    double abs_err = 0.0;
    /// abs_err / |target|; NaN when the target is zero.
    double rel_err = 0.0;
};

struct ConvergenceReport {
    std::string phi_name;
    double q = 0.0;
    std::vector<ConvergenceRow> rows;
    /// Least-squares slope of log(abs_err) against log(L).
    std::optional<double> fitted_rate;
    /// Kernel envelope exponent (2-q)/(q-1), the expected asymptotic rate.
    double envelope_exponent = 0.0;
    double allowed_error = 0.0;
    bool monotone = false;
    bool passed = false;
    /// The envelope exponent is too small for desk-scale L to reach the gate.
    bool rate_limited = false;
};

/// Errors below this are treated as converged when fitting rates.
inline constexpr double kRateFitFloor = 1e-13;
/// Envelope exponents below this are flagged as rate-limited.
inline constexpr double kRateLimitedExponent = 0.5;

namespace detail {

inline double least_squares_slope(const std::vector<std::pair<double, double>>& pts) {
    double mx = 0.0, my = 0.0;
    for (auto [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0.0, sxx = 0.0;
    for (auto [x, y] : pts) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    return sxy / sxx;
}

} // namespace detail

/// Slope of log(abs_err) against log(L) over rows with abs_err > kRateFitFloor; needs >= 3 such rows.
inline std::optional<double> fit_log_log_rate(const std::vector<ConvergenceRow>& rows) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rows) {
        if (r.abs_err > kRateFitFloor) {
            pts.emplace_back(std::log(r.L), std::log(r.abs_err));
        }
    }
    if (pts.size() < 3) {
        return std::nullopt;
    }
    return detail::least_squares_slope(pts);
}

/**
 * Log-log slope of |K_{q,L}(x)| against L over `schedule`. For large (q-1)L|x|
 * the kernel behaves like L^{-(2-q)/(q-1)}.
 */
inline double kernel_decay_rate(const QIndex& q, double x, const std::vector<double>& schedule) {
    if (schedule.size() < 2 || x == 0.0) {
        throw std::invalid_argument("kernel_decay_rate: need x != 0 and at least 2 schedule entries");
    }
    std::vector<std::pair<double, double>> pts;
    for (double L : schedule) {
        const double k = std::abs(kernel_closed_form(KernelParams{q, L}, x));
        if (!(k > 0.0)) {
            throw std::domain_error("kernel_decay_rate: kernel vanishes on the schedule");
        }
        pts.emplace_back(std::log(L), std::log(k));
    }
    return detail::least_squares_slope(pts);
}

/**
 * Errors must not increase along the schedule, except for at most one step that
 * grows by no more than 10%. Differences between errors that are both below
 * `noise` are ignored.
 */
inline bool errors_non_increasing(const std::vector<ConvergenceRow>& rows, double noise) {
    int inversions = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double prev = rows[i - 1].abs_err;
        const double cur = rows[i].abs_err;
        if (cur <= prev || cur <= noise) {
            continue;
        }
        if (cur > 1.1 * prev) {
            return false;
        }
        ++inversions;
    }
    return inversions <= 1;
}

inline ConvergenceReport delta_convergence(const QIndex& q, const TestFunction& phi, const std::vector<double>& schedule,
                                           const quad::QuadAccuracy& acc = {1e-12, 1e-12, 8000},
                                           const ConvergenceGate& gate = {}, unsigned threads = 1) {
    if (schedule.size() < 3) {
        throw std::invalid_argument("delta_convergence: schedule needs at least 3 entries");
    }
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (!(schedule[i] > 0.0) || (i > 0 && !(schedule[i] > schedule[i - 1]))) {
            throw std::invalid_argument("delta_convergence: schedule must be positive and strictly increasing");
        }
    }
    ConvergenceReport report;
    report.phi_name = phi.name;
    report.q = q.value();
    report.envelope_exponent = q.envelope_exponent();
    const double target = q.cq() * phi.value_at_zero;

    report.rows = ordered_map(schedule.size(), threads, [&](std::size_t i) {
        ConvergenceRow row;
        row.L = schedule[i];
        row.pairing = pair(KernelParams{q, schedule[i]}, phi, acc);
        row.target = target;
        row.abs_err = std::abs(row.pairing - target);
        row.rel_err = target != 0.0 ? row.abs_err / std::abs(target) : std::numeric_limits<double>::quiet_NaN();
        return row;
    });

    report.fitted_rate = fit_log_log_rate(report.rows);
    report.allowed_error = gate.allowed(target, phi.sup_norm);
    report.monotone = errors_non_increasing(report.rows, 10.0 * acc.target(std::abs(target)));
    report.passed = report.monotone && report.rows.back().abs_err <= report.allowed_error;
    report.rate_limited = report.envelope_exponent < kRateLimitedExponent;
    return report;
}

// ---------------------------------------------------------------------------
// Mass integral
// ---------------------------------------------------------------------------

namespace detail {

/// sin(a theta) / sin(theta), with a series near theta = 0.
inline double sine_ratio(double a, double theta) {
    if (theta < 1e-4 && a * theta < 1e-2) {
        const double t2 = theta * theta;
        const double a2 = a * a;
        return a * (1.0 + t2 * (1.0 - a2) / 6.0 + t2 * t2 * (7.0 - 10.0 * a2 + 3.0 * a2 * a2) / 360.0);
    }
    return std::sin(a * theta) / std::sin(theta);
}

/// Integrand with cos(theta) computed as sin(pi/2 - theta) from the exact complement.
inline double iq_integrand(double a, double theta, double complement) {
    return sine_ratio(a, theta) * std::pow(std::sin(complement), a - 1.0);
}

/// sin(a theta)/sin(theta) - sin(a pi/2), accurate near both endpoints.
inline double sine_ratio_minus_edge(double a, double theta, double complement) {
    const double edge = std::sin(0.5 * a * std::numbers::pi);
    if (theta < 0.25 * std::numbers::pi) {
        return sine_ratio(a, theta) - edge;
    }
    const double d = complement;
    const double edge_cos = std::cos(0.5 * a * std::numbers::pi);
    // sin(A - a d) - sin(A) cos(d) with A = a pi/2, divided by cos(d) = sin(theta)
    const double numerator =
        -2.0 * edge * std::sin(0.5 * (a + 1.0) * d) * std::sin(0.5 * (a - 1.0) * d) - edge_cos * std::sin(a * d);
    return numerator / std::cos(d);
}

} // namespace detail

/// sin(a theta) cos(theta)^{a-1} / sin(theta), a = (2-q)/(q-1), on 0 < theta < pi/2.
inline double iq_integrand(const QIndex& q, double theta) {
    if (!(theta >= 0.0 && theta < 0.5 * std::numbers::pi)) {
        std::ostringstream os;
        os << "iq_integrand: theta = " << theta << " outside [0, pi/2)";
        throw std::domain_error(os.str());
    }
    return detail::iq_integrand(q.envelope_exponent(), theta, 0.5 * std::numbers::pi - theta);
}

/**
 * int_0^{pi/2} iq_integrand d theta by tanh-sinh quadrature.
 *
 * For q > 3/2 the factor cos^{a-1} is singular at pi/2 with exponent close to
 * -1 as q -> 2. The singular part is then integrated in closed form,
 *     sin(a pi/2) int cos^{a-1} = sin(a pi/2) sqrt(pi) Gamma(a/2) / (2 Gamma((a+1)/2)),
 * and only the bounded remainder goes through the quadrature.
 */
inline quad::QuadResult<double> iq_value_result(const QIndex& q, const quad::QuadAccuracy& acc = {1e-13, 1e-12, 2000}) {
    const double a = q.envelope_exponent();
    constexpr double half_pi = 0.5 * std::numbers::pi;
    if (a >= 1.0) {
        auto f = [a](double theta, double /*to_zero*/, double to_edge) { return detail::iq_integrand(a, theta, to_edge); };
        return quad::integrate_double_exponential(f, 0.0, half_pi, acc);
    }
    auto remainder = [a](double theta, double /*to_zero*/, double to_edge) {
        const double diff = detail::sine_ratio_minus_edge(a, theta, to_edge);
        if (diff == 0.0) {
            return 0.0;
        }
        // cos^{a-1} overflows at subnormal distances while diff = O(distance); combine in logs.
        return std::copysign(std::exp((a - 1.0) * std::log(std::sin(to_edge)) + std::log(std::abs(diff))), diff);
    };
    auto result = quad::integrate_double_exponential(remainder, 0.0, half_pi, acc);
    const double wallis = 0.5 * std::sqrt(std::numbers::pi) * std::exp(std::lgamma(0.5 * a) - std::lgamma(0.5 * (a + 1.0)));
    result.value += std::sin(a * half_pi) * wallis;
    return result;
}

inline double iq_value(const QIndex& q, const quad::QuadAccuracy& acc = {1e-13, 1e-12, 2000}) {
    return iq_value_result(q, acc).value;
}

/**
 * Rebuilds c_q from the mass integral: the x-integral of the unit-L kernel
 * numerator is 2 * iq_value (x = tan(theta)/(q-1) on each half line), and
 * c_q = 2/(2-q) times that. Returns |rebuilt - 2 pi/(2-q)| / (2 pi/(2-q)).
 */
inline double cq_consistency(const QIndex& q, const quad::QuadAccuracy& acc = {1e-13, 1e-12, 2000}) {
    const double x_integral = 2.0 * iq_value(q, acc);
    const double rebuilt = 2.0 / (2.0 - q.value()) * x_integral;
    return std::abs(rebuilt - q.cq()) / q.cq();
}

} // namespace qdelta
