#pragma once

/**
 * @file double_exponential.hpp
 * @brief Tanh-sinh quadrature on a finite interval.
 *
 * x = c + h * tanh(pi/2 * sinh t). The transformed integrand decays doubly
 * exponentially in t even when f has integrable algebraic endpoint
 * singularities, so the trapezoid rule in t converges geometrically.
 *
 * An integrand may take (x) or (x, dist_to_a, dist_to_b). The three-argument
 * form receives the distances to the endpoints computed without cancellation,
 * which matters when the singular factor is something like cos(x) near pi/2
 * and the node is 1e-200 away from the endpoint.
 */

#include <qdelta/quad/types.hpp>

#include <array>
#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <sstream>
#include <type_traits>

namespace qdelta::quad {

template <typename F>
concept EndpointAwareIntegrand = std::invocable<F&, double, double, double>;

namespace detail {

template <typename F>
auto call_with_distances(F& f, double x, double da, double db) {
    if constexpr (EndpointAwareIntegrand<F>) {
        return f(x, da, db);
    } else {
        return f(x);
    }
}

template <typename F>
using de_value_t = std::conditional_t<
    std::is_convertible_v<decltype(call_with_distances(std::declval<F&>(), 0.0, 0.0, 0.0)), double>, double,
    std::complex<double>>;

} // namespace detail

inline constexpr int kMaxDoubleExponentialLevels = 12;

/**
 * Tanh-sinh integration of f over [a, b]. The step is halved level by level
 * until two successive levels agree within max(abs_tol, rel_tol * |I|);
 * the reported error estimate is that last difference.
 */
template <typename F, typename T = detail::de_value_t<F>>
QuadResult<T> integrate_double_exponential(F&& f, double a, double b, const QuadAccuracy& acc,
                                           int max_levels = kMaxDoubleExponentialLevels) {
    acc.validate();
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        std::ostringstream os;
        os << "integrate_double_exponential: need finite a < b, got [" << a << ", " << b << "]";
        throw std::invalid_argument(os.str());
    }

    const double half = 0.5 * (b - a);
    const double center = 0.5 * (a + b);
    constexpr double half_pi = 0.5 * std::numbers::pi;
    // Beyond this t the endpoint distance underflows past 1e-300 * half.
    constexpr double t_max = 6.5;
    long evaluations = 0;

    // Contribution of the node pair +-t, weighted by dx/dt (without the step h).
    auto pair_sum = [&](double t) -> T {
        const double u = half_pi * std::sinh(t);
        const double e = std::exp(-2.0 * u);
        // 1 - tanh(u) = 2 e^{-2u} / (1 + e^{-2u})
        const double complement = 2.0 * e / (1.0 + e);
        const double dist = half * complement;
        // 1 / cosh^2(u) = 4 e^{-2u} / (1 + e^{-2u})^2
        const double weight = half * half_pi * std::cosh(t) * 4.0 * e / ((1.0 + e) * (1.0 + e));
        if (!(dist > 0.0) || weight == 0.0) {
            return T{};
        }
        const double x_left = a + dist;
        const double x_right = b - dist;
        const double span = b - a;
        T sum{};
        for (const auto& [x, da, db] : {std::array{x_left, dist, span - dist}, std::array{x_right, span - dist, dist}}) {
            if constexpr (!EndpointAwareIntegrand<F>) {
                // x rounded onto the endpoint; the plain integrand cannot be trusted there.
                if (x <= a || x >= b) {
                    continue;
                }
            }
            const T v = static_cast<T>(detail::call_with_distances(f, x, da, db));
            ++evaluations;
            if (!is_finite(v)) {
                throw non_finite_error(x);
            }
            sum += v;
        }
        return weight * sum;
    };

    auto center_term = [&]() -> T {
        const T v = static_cast<T>(detail::call_with_distances(f, center, half, half));
        ++evaluations;
        if (!is_finite(v)) {
            throw non_finite_error(center);
        }
        return half * half_pi * v;
    };

    // Level 0: h = 1, nodes at integer t.
    double h = 1.0;
    T sum = center_term();
    for (double t = 1.0; t <= t_max; t += 1.0) {
        sum += pair_sum(t);
    }
    T estimate = h * sum;
    double diff = std::numeric_limits<double>::infinity();

    for (int level = 1; level <= max_levels; ++level) {
        h *= 0.5;
        T added{};
        for (double t = h; t <= t_max; t += 2.0 * h) {
            added += pair_sum(t);
        }
        sum += added;
        const T next = h * sum;
        diff = magnitude(next - estimate);
        estimate = next;
        if (level >= 3 && diff <= acc.target(magnitude(estimate))) {
            return {estimate, diff, evaluations};
        }
    }
    std::ostringstream os;
    os << "integrate_double_exponential: no convergence after " << max_levels << " levels on [" << a << ", " << b
       << "], last difference " << diff;
    throw limit_error<T>(os.str(), QuadResult<T>{estimate, diff, evaluations});
}

} // namespace qdelta::quad
