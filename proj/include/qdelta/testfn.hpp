#pragma once

/**
 * @file testfn.hpp
 * @brief Rapidly decreasing test functions and their Fourier transforms.
 *
 * Fourier convention: phi_hat(u) = int e^{-iut} phi(t) dt, so that
 * int phi_hat(u) du = 2 pi phi(0).
 */

#include <qdelta/qfunc.hpp>
#include <qdelta/quad.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdelta {

enum class FourierKind { exact, numeric };

struct TestFunction {
    std::string name;
    std::function<double(double)> eval;
    double value_at_zero = 0.0;
    /// sup |phi|
    double sup_norm = 0.0;
    FourierKind fourier_kind = FourierKind::numeric;
    /// Closed-form transform; empty when fourier_kind is numeric.
    std::function<ComplexVal(double)> exact_fourier;
    quad::DecayDescriptor tail;
    /// Tail bound for phi_hat, when one is known analytically.
    std::optional<quad::DecayDescriptor> fourier_tail;
    /// False for stress members that are smooth and integrable but not rapidly decreasing.
    bool in_class = true;
};

namespace detail {

inline TestFunction gaussian_member(std::string name, double sigma) {
    const double root_two_pi = std::sqrt(2.0 * std::numbers::pi);
    TestFunction f;
    f.name = std::move(name);
    f.eval = [sigma](double t) { return std::exp(-t * t / (2.0 * sigma * sigma)); };
    f.value_at_zero = 1.0;
    f.sup_norm = 1.0;
    f.fourier_kind = FourierKind::exact;
    f.exact_fourier = [sigma, root_two_pi](double u) {
        return ComplexVal{sigma * root_two_pi * std::exp(-0.5 * sigma * sigma * u * u), 0.0};
    };
    f.tail = quad::gaussian_decay(1.0, 1.0 / (2.0 * sigma * sigma));
    f.fourier_tail = quad::gaussian_decay(sigma * root_two_pi, 0.5 * sigma * sigma);
    return f;
}

} // namespace detail

/**
 * The corpus:
 *   gaussian         e^{-t^2/2}
 *   scaled_gaussian  e^{-t^2/8}
 *   narrow_gaussian  e^{-2 t^2}
 *   hermite_damped   t^2 e^{-t^2/2}        (phi(0) = 0)
 *   odd_gaussian     t e^{-t^2/2}          (odd, complex transform)
 *   bump             exp(-1/(1 - t^2)) on |t| < 1, numeric transform
 *   cauchy3          (1 + t^2)^{-3}, numeric transform, not rapidly decreasing
 */
inline std::vector<TestFunction> corpus() {
    const double root_two_pi = std::sqrt(2.0 * std::numbers::pi);
    const double half_pi_root = std::sqrt(0.5 * std::numbers::pi);
    std::vector<TestFunction> out;

    out.push_back(detail::gaussian_member("gaussian", 1.0));
    out.push_back(detail::gaussian_member("scaled_gaussian", 2.0));
    out.push_back(detail::gaussian_member("narrow_gaussian", 0.5));

    {
        TestFunction f;
        f.name = "hermite_damped";
        f.eval = [](double t) { return t * t * std::exp(-0.5 * t * t); };
        f.value_at_zero = 0.0;
        f.sup_norm = 2.0 / std::numbers::e;
        f.fourier_kind = FourierKind::exact;
        f.exact_fourier = [root_two_pi](double u) {
            return ComplexVal{root_two_pi * (1.0 - u * u) * std::exp(-0.5 * u * u), 0.0};
        };
        // int_T^inf t^2 e^{-t^2/2} dt = T e^{-T^2/2} + sqrt(pi/2) erfc(T/sqrt2)
        f.tail = {"gaussian", [half_pi_root](double t) {
                      return 2.0 * (t * std::exp(-0.5 * t * t) + half_pi_root * std::erfc(t / std::numbers::sqrt2));
                  }};
        f.fourier_tail = quad::DecayDescriptor{"gaussian", [root_two_pi, half_pi_root](double u) {
                                                   return 2.0 * root_two_pi *
                                                          (u * std::exp(-0.5 * u * u) +
                                                           2.0 * half_pi_root * std::erfc(u / std::numbers::sqrt2));
                                               }};
        out.push_back(std::move(f));
    }
    {
        TestFunction f;
        f.name = "odd_gaussian";
        f.eval = [](double t) { return t * std::exp(-0.5 * t * t); };
        f.value_at_zero = 0.0;
        f.sup_norm = std::exp(-0.5);
        f.fourier_kind = FourierKind::exact;
        f.exact_fourier = [root_two_pi](double u) {
            return ComplexVal{0.0, -u * root_two_pi * std::exp(-0.5 * u * u)};
        };
        f.tail = {"gaussian", [](double t) { return 2.0 * std::exp(-0.5 * t * t); }};
        f.fourier_tail =
            quad::DecayDescriptor{"gaussian", [root_two_pi](double u) { return 2.0 * root_two_pi * std::exp(-0.5 * u * u); }};
        out.push_back(std::move(f));
    }
    {
        TestFunction f;
        f.name = "bump";
        f.eval = [](double t) {
            const double s = 1.0 - t * t;
            return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
        };
        f.value_at_zero = std::exp(-1.0);
        f.sup_norm = std::exp(-1.0);
        f.fourier_kind = FourierKind::numeric;
        f.tail = quad::compact_support(1.0);
        // |phi_hat(u)| <= 4 u^{-3/4} e^{-sqrt u} for u >= 1 (saddle-point envelope with margin);
        // int_T^inf 4 u^{-3/4} e^{-sqrt u} du <= 8 T^{-1/4} e^{-sqrt T}.
        f.fourier_tail = quad::DecayDescriptor{"subexponential", [](double u) {
                                                   const double v = std::max(u, 1.0);
                                                   return 16.0 * std::pow(v, -0.25) * std::exp(-std::sqrt(v));
                                               }};
        out.push_back(std::move(f));
    }
    {
        TestFunction f;
        f.name = "cauchy3";
        f.eval = [](double t) {
            const double s = 1.0 + t * t;
            return 1.0 / (s * s * s);
        };
        f.value_at_zero = 1.0;
        f.sup_norm = 1.0;
        f.fourier_kind = FourierKind::numeric;
        f.tail = quad::algebraic_decay(1.0, 6.0);
        // phi_hat(u) = (pi/8)(3 + 3|u| + u^2) e^{-|u|}
        f.fourier_tail = quad::DecayDescriptor{"exponential", [](double u) {
                                                   return 0.25 * std::numbers::pi * (u * u + 5.0 * u + 8.0) * std::exp(-u);
                                               }};
        f.in_class = false;
        out.push_back(std::move(f));
    }
    return out;
}

class unknown_test_function : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline TestFunction find_test_function(const std::string& name) {
    for (auto& f : corpus()) {
        if (f.name == name) {
            return f;
        }
    }
    std::ostringstream os;
    os << "unknown test function '" << name << "'; available:";
    for (const auto& f : corpus()) {
        os << ' ' << f.name;
    }
    throw unknown_test_function(os.str());
}

inline std::vector<std::string> corpus_names() {
    std::vector<std::string> names;
    for (const auto& f : corpus()) {
        names.push_back(f.name);
    }
    return names;
}

/// int e^{-iut} phi(t) dt by quadrature, regardless of whether a closed form exists.
inline ComplexVal numeric_fourier_transform(const TestFunction& phi, double u, const quad::QuadAccuracy& acc) {
    auto integrand = [&phi, u](double t) { return std::polar(phi.eval(t), -u * t); };
    quad::QuadAccuracy inner = acc;
    // Roughly one subdivision per half oscillation across the support.
    const double support = phi.tail.radius(0.1 * acc.abs_tol);
    inner.max_subdivisions = std::max(acc.max_subdivisions, static_cast<int>(4.0 * std::abs(u) * support));
    return quad::integrate_real_line(integrand, inner, phi.tail).value;
}

inline ComplexVal fourier_transform(const TestFunction& phi, double u, const quad::QuadAccuracy& acc) {
    if (phi.fourier_kind == FourierKind::exact) {
        return phi.exact_fourier(u);
    }
    return numeric_fourier_transform(phi, u, acc);
}

/**
 * int phi_hat(u) du, which equals 2 pi phi(0). The transform is evaluated
 * at a tolerance 100x tighter than the outer integral.
 */
inline quad::QuadResult<double> classical_delta_integral(const TestFunction& phi, const quad::QuadAccuracy& acc) {
    quad::QuadAccuracy inner = acc;
    inner.abs_tol = 1e-2 * acc.abs_tol;
    auto integrand = [&phi, &inner](double u) { return fourier_transform(phi, u, inner).real(); };
    return quad::integrate_real_line(integrand, acc, phi.fourier_tail);
}

inline double classical_delta_check(const TestFunction& phi, const quad::QuadAccuracy& acc) {
    return classical_delta_integral(phi, acc).value;
}

} // namespace qdelta
