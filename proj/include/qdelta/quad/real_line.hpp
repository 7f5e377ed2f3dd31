#pragma once

/**
 * @file real_line.hpp
 * @brief Integration over the whole real line by truncation to [-T, T].
 *
 * T comes from a decay descriptor when one is supplied: the descriptor bounds
 * the mass outside [-T, T] and the smallest T meeting the tail budget is used.
 * Without a descriptor the integrand is probed on [R/2, R] for R = 1, 2, 4, ...
 * until R * max|f| on that band is below 1e-3 of the budget.
 */

#include <qdelta/quad/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qdelta::quad {

/// Analytic tail bound for an integrand on the real line.
struct DecayDescriptor {
    /// Short label ("gaussian", "algebraic", "compact", ...), used in diagnostics.
    std::string kind;
    /// Upper bound on the mass of |f| outside [-T, T]; must be nonincreasing in T.
    std::function<double(double)> tail_mass;

    /// Smallest power-of-two-refined T with tail_mass(T) <= eps (bisection after doubling).
    [[nodiscard]] double radius(double eps) const {
        double hi = 1.0;
        while (tail_mass(hi) > eps) {
            hi *= 2.0;
            if (hi > 1e15) {
                std::ostringstream os;
                os << "DecayDescriptor(" << kind << "): no radius reaches tail budget " << eps;
                throw quadrature_error(os.str());
            }
        }
        double lo = hi / 2.0;
        if (tail_mass(lo) <= eps) {
            return lo;
        }
        for (int i = 0; i < 60 && hi - lo > 1e-3 * hi; ++i) {
            const double mid = 0.5 * (lo + hi);
            (tail_mass(mid) <= eps ? hi : lo) = mid;
        }
        return hi;
    }
};

/// Gaussian-type bound |f(t)| <= amplitude * exp(-rate t^2).
inline DecayDescriptor gaussian_decay(double amplitude, double rate) {
    return {"gaussian", [amplitude, rate](double t) {
                return amplitude * std::sqrt(std::numbers::pi / rate) * std::erfc(std::sqrt(rate) * t);
            }};
}

/// Algebraic bound |f(t)| <= amplitude * |t|^{-power}, power > 1.
inline DecayDescriptor algebraic_decay(double amplitude, double power) {
    return {"algebraic",
            [amplitude, power](double t) { return 2.0 * amplitude * std::pow(t, 1.0 - power) / (power - 1.0); }};
}

/// f vanishes identically outside [-support, support].
inline DecayDescriptor compact_support(double support) {
    return {"compact", [support](double t) { return t >= support ? 0.0 : std::numeric_limits<double>::infinity(); }};
}

class tail_bound_error : public quadrature_error {
public:
    using quadrature_error::quadrature_error;
};

namespace detail {

template <typename F>
double probe_radius(F& f, double budget) {
    constexpr int probes = 16;
    constexpr double max_radius = 1 << 24;
    for (double r = 1.0; r <= max_radius; r *= 2.0) {
        double worst = 0.0;
        for (int i = 0; i <= probes; ++i) {
            const double t = r * (0.5 + 0.5 * i / probes);
            worst = std::max({worst, magnitude(f(t)), magnitude(f(-t))});
        }
        if (std::isfinite(worst) && worst * r <= 1e-3 * budget) {
            return r;
        }
    }
    std::ostringstream os;
    os << "integrate_real_line: no decay descriptor and |f| does not decay below the tail budget " << budget
       << " within |t| <= " << max_radius;
    throw tail_bound_error(os.str());
}

} // namespace detail

/**
 * Integral of f over the real line. The error estimate includes the tail
 * budget spent on truncation. The truncated range is pre-split into pieces
 * of roughly unit width (at most `max_pieces`) so that narrow features are
 * seen by the first sweep.
 */
template <typename F, typename T = integrand_value_t<F>>
QuadResult<T> integrate_real_line(F&& f, const QuadAccuracy& acc, const std::optional<DecayDescriptor>& tail,
                                  int max_pieces = 256) {
    acc.validate();
    const double budget = 0.1 * acc.abs_tol;
    const double radius = tail ? tail->radius(budget) : detail::probe_radius(f, budget);
    const double tail_error = tail ? tail->tail_mass(radius) : 1e-3 * budget;

    const int pieces = std::clamp(static_cast<int>(std::ceil(2.0 * radius)), 2, max_pieces);
    std::vector<double> breaks;
    breaks.reserve(pieces - 1);
    for (int i = 1; i < pieces; ++i) {
        breaks.push_back(-radius + 2.0 * radius * i / pieces);
    }
    QuadAccuracy inner = acc;
    inner.max_subdivisions = std::max(acc.max_subdivisions, 4 * pieces);
    auto result = integrate_adaptive(f, -radius, radius, inner, breaks);
    result.err_estimate += tail_error;
    return result;
}

} // namespace qdelta::quad
