#pragma once

/**
 * @file gauss_kronrod.hpp
 * @brief Globally adaptive 7/15-point Gauss-Kronrod quadrature.
 *
 * The interval with the largest local error |K15 - G7| is bisected until the
 * summed error meets max(abs_tol, rel_tol * |I|). Subdivision is sequential
 * and the heap ordering is fully determined by the inputs, so results are
 * bit-reproducible.
 */

#include <qdelta/quad/types.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <sstream>
#include <tuple>
#include <type_traits>
#include <vector>

namespace qdelta::quad {

namespace detail {

// Kronrod abscissae on [0, 1]; odd indices are the Gauss-Legendre 7-point nodes.
inline constexpr std::array<double, 8> gk15_x = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

inline constexpr std::array<double, 8> gk15_wk = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

inline constexpr std::array<double, 4> g7_w = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

template <typename T>
struct Segment {
    double a;
    double b;
    T value;
    double error;
    bool operator<(const Segment& other) const noexcept { return error < other.error; }
};

template <typename T, typename F>
Segment<T> gk15(F& f, double a, double b, long& evaluations) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    auto eval = [&](double x) -> T {
        T v = static_cast<T>(f(x));
        ++evaluations;
        if (!is_finite(v)) {
            throw non_finite_error(x);
        }
        return v;
    };

    const T fc = eval(center);
    T kronrod = fc * gk15_wk[7];
    T gauss = fc * g7_w[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * gk15_x[j];
        const T sum = eval(center - dx) + eval(center + dx);
        kronrod += gk15_wk[j] * sum;
        if (j % 2 == 1) {
            gauss += g7_w[j / 2] * sum;
        }
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, magnitude(kronrod - gauss)};
}

} // namespace detail

/// Integrand result type, double or std::complex<double>.
template <typename F>
using integrand_value_t = std::conditional_t<std::is_convertible_v<std::invoke_result_t<F&, double>, double>, double,
                                             std::complex<double>>;

/**
 * Adaptive integration of f over [a, b] starting from the partition given
 * by `breakpoints` (sorted, strictly inside (a, b)).
 */
template <typename F, typename T = integrand_value_t<F>>
QuadResult<T> integrate_adaptive(F&& f, double a, double b, const QuadAccuracy& acc,
                                 std::span<const double> breakpoints = {}) {
    acc.validate();
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        std::ostringstream os;
        os << "integrate_adaptive: need finite a < b, got [" << a << ", " << b << "]";
        throw std::invalid_argument(os.str());
    }

    long evaluations = 0;
    // Max-heap on local error; a vector so the segments can also be summed in place.
    std::vector<detail::Segment<T>> heap;
    std::vector<detail::Segment<T>> exhausted;

    double left = a;
    for (double p : breakpoints) {
        if (p > left && p < b) {
            heap.push_back(detail::gk15<T>(f, left, p, evaluations));
            left = p;
        }
    }
    heap.push_back(detail::gk15<T>(f, left, b, evaluations));
    std::make_heap(heap.begin(), heap.end());

    auto totals = [&]() {
        T value{};
        double error = 0.0;
        for (const auto* segments : {&heap, &exhausted}) {
            for (const auto& s : *segments) {
                value += s.value;
                error += s.error;
            }
        }
        return std::pair{value, error};
    };

    auto [value, error] = totals();
    int subdivisions = 0;
    while (error > acc.target(magnitude(value)) && !heap.empty()) {
        if (subdivisions >= acc.max_subdivisions) {
            std::ostringstream os;
            os << "integrate_adaptive: subdivision limit " << acc.max_subdivisions << " reached on [" << a << ", "
               << b << "], error estimate " << error;
            throw limit_error<T>(os.str(), QuadResult<T>{value, error, evaluations});
        }
        std::pop_heap(heap.begin(), heap.end());
        const detail::Segment<T> worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        const double resolution = 64.0 * std::numeric_limits<double>::epsilon() *
                                  std::max({std::abs(worst.a), std::abs(worst.b), std::numeric_limits<double>::min()});
        if (worst.b - worst.a <= resolution) {
            // Cannot be split further in double precision.
            exhausted.push_back(worst);
            continue;
        }
        for (const auto& half : {detail::gk15<T>(f, worst.a, mid, evaluations),
                                 detail::gk15<T>(f, mid, worst.b, evaluations)}) {
            heap.push_back(half);
            std::push_heap(heap.begin(), heap.end());
        }
        ++subdivisions;
        // Re-sum instead of updating incrementally so the totals never drift.
        std::tie(value, error) = totals();
    }
    return {value, error, evaluations};
}

} // namespace qdelta::quad
