#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qdelta::quad {

/// Requested accuracy of a quadrature call.
struct QuadAccuracy {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;

    void validate() const {
        if (!(abs_tol > 0.0) || !std::isfinite(abs_tol) || !(rel_tol > 0.0) || !std::isfinite(rel_tol) ||
            max_subdivisions <= 0) {
            throw std::invalid_argument("QuadAccuracy: tolerances must be finite and positive, "
                                        "max_subdivisions > 0");
        }
    }

    [[nodiscard]] double target(double magnitude) const noexcept {
        return std::max(abs_tol, rel_tol * magnitude);
    }
};

/// Integral estimate. err_estimate is an estimate, not a guaranteed bound.
template <typename T>
struct QuadResult {
    T value{};
    double err_estimate = 0.0;
    long evaluations = 0;
};

/// Integrand values supported by the engines.
template <typename T>
concept QuadValue = std::same_as<T, double> || std::same_as<T, std::complex<double>>;

inline double magnitude(double v) noexcept { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) noexcept { return std::abs(v); }
inline bool is_finite(double v) noexcept { return std::isfinite(v); }
inline bool is_finite(const std::complex<double>& v) noexcept {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

class quadrature_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The integrand returned NaN or infinity at `abscissa`.
class non_finite_error : public quadrature_error {
public:
    explicit non_finite_error(double abscissa)
        : quadrature_error(message(abscissa)), abscissa_(abscissa) {}
    [[nodiscard]] double abscissa() const noexcept { return abscissa_; }

private:
    static std::string message(double x) {
        std::ostringstream os;
        os.precision(17);
        os << "integrand is not finite at x = " << x;
        return os.str();
    }
    double abscissa_;
};

/// Tolerance not met within the work limit; carries the best available estimate.
template <typename T>
class limit_error : public quadrature_error {
public:
    limit_error(const std::string& what, QuadResult<T> best) : quadrature_error(what), best_(best) {}
    [[nodiscard]] const QuadResult<T>& best() const noexcept { return best_; }

private:
    QuadResult<T> best_;
};

} // namespace qdelta::quad
