#pragma once

/**
 * @file qfunc.hpp
 * @brief Nonextensivity index, complex q-exponential and Tsallis entropy.
 *
 * The q-exponential
 *
 *     e_q(z) = (1 + (1 - q) z)^{1 / (1 - q)}
 *
 * is evaluated on the principal branch of the complex power. With
 * w = 1 + (1 - q) z the cut is the ray {w real, w <= 0}, which for
 * 1 < q < 2 is the set of real z >= 1/(q - 1). Every purely imaginary
 * argument is away from the cut, so e_q(-iut) is analytic in (u, t).
 */

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qdelta {

using ComplexVal = std::complex<double>;

/// Nonextensivity index restricted to the open interval (1, 2).
class QIndex {
public:
    explicit QIndex(double q) : q_(q) {
        if (!(q > 1.0 && q < 2.0)) {
            std::ostringstream os;
            os << "q-index must satisfy 1 < q < 2, got " << q;
            throw std::domain_error(os.str());
        }
    }

    [[nodiscard]] double value() const noexcept { return q_; }
    /// q - 1, the deformation parameter.
    [[nodiscard]] double deformation() const noexcept { return q_ - 1.0; }
    /// Gamma shape 1/(q - 1) of the superstatistical mixing variable.
    [[nodiscard]] double shape() const noexcept { return 1.0 / (q_ - 1.0); }
    /// Normalisation constant c_q = 2*pi/(2 - q) of the q-delta representation.
    [[nodiscard]] double cq() const noexcept { return 2.0 * std::numbers::pi / (2.0 - q_); }
    /// Kernel envelope exponent (2 - q)/(q - 1).
    [[nodiscard]] double envelope_exponent() const noexcept { return (2.0 - q_) / (q_ - 1.0); }

    friend bool operator==(const QIndex&, const QIndex&) = default;

private:
    double q_;
};

namespace detail {

/// log(1 + zeta) for complex zeta without cancellation when |zeta| is small.
inline ComplexVal log1p(ComplexVal zeta) {
    const double x = zeta.real();
    const double y = zeta.imag();
    const double im = std::atan2(y, 1.0 + x);
    const double modulus = std::hypot(1.0 + x, y);
    if (modulus < 0.5 || modulus > 2.0) {
        return {std::log(modulus), im};
    }
    // |1 + zeta|^2 - 1 = 2x + x^2 + y^2
    return {0.5 * std::log1p(2.0 * x + x * x + y * y), im};
}

} // namespace detail

/**
 * Complex q-exponential on the principal branch.
 *
 * Evaluated as exp(Log(w) / (1 - q)) so that the large exponent
 * 1/(1 - q) near q = 1 never forms an intermediate power.
 * Throws std::domain_error when z lies on the branch cut.
 */
inline ComplexVal q_exponential(const QIndex& q, ComplexVal z) {
    const double one_minus_q = 1.0 - q.value();
    const ComplexVal zeta = one_minus_q * z;
    if (zeta.imag() == 0.0 && 1.0 + zeta.real() <= 0.0) {
        std::ostringstream os;
        os << "q_exponential: z = " << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag())
           << "i lies on the branch cut Re z >= " << 1.0 / q.deformation() << " (q = " << q.value() << ")";
        throw std::domain_error(os.str());
    }
    if (zeta == ComplexVal{0.0, 0.0}) {
        return {1.0, 0.0};
    }
    return std::exp(detail::log1p(zeta) / one_minus_q);
}

/// Real-argument convenience overload.
inline double q_exponential(const QIndex& q, double x) {
    return q_exponential(q, ComplexVal{x, 0.0}).real();
}

/// |e_q(-iut)| = (1 + (q-1)^2 u^2 t^2)^{-1/(2(q-1))}.
inline double q_exp_modulus(const QIndex& q, double u, double t) {
    const double b = q.deformation() * u * t;
    return std::exp(-0.5 * q.shape() * std::log1p(b * b));
}

/**
 * Gamma(1/(q-1) - 1) / ((q-1) Gamma(1/(q-1))), the constant that closes
 * the superstatistical computation of the delta normalisation. Evaluated
 * through lgamma, independently of the recurrence that reduces it to 1/(2-q).
 */
inline double gamma_ratio_constant(const QIndex& q) {
    const double s = q.shape();
    return std::exp(std::lgamma(s - 1.0) - std::lgamma(s)) / q.deformation();
}

// ---------------------------------------------------------------------------
// Entropy
// ---------------------------------------------------------------------------

/// A nonnegative density sampled on an increasing grid; integrals use the trapezoid rule.
class SampledDensity {
public:
    SampledDensity(std::vector<double> grid, std::vector<double> values)
        : grid_(std::move(grid)), values_(std::move(values)) {
        if (grid_.size() != values_.size() || grid_.size() < 2) {
            throw std::invalid_argument("SampledDensity: grid and values must have equal length >= 2");
        }
        for (std::size_t i = 1; i < grid_.size(); ++i) {
            if (!(grid_[i] > grid_[i - 1])) {
                throw std::invalid_argument("SampledDensity: grid must be strictly increasing");
            }
        }
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!(values_[i] >= 0.0) || !std::isfinite(values_[i])) {
                std::ostringstream os;
                os << "SampledDensity: negative or non-finite value " << values_[i] << " at x = " << grid_[i];
                throw std::domain_error(os.str());
            }
        }
    }

    /// Samples `pdf` on n equally spaced points of [a, b].
    template <typename Pdf>
    static SampledDensity from_function(Pdf&& pdf, double a, double b, std::size_t n) {
        if (n < 2 || !(b > a)) {
            throw std::invalid_argument("SampledDensity::from_function: need n >= 2 and a < b");
        }
        std::vector<double> x(n), f(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
            f[i] = pdf(x[i]);
        }
        return {std::move(x), std::move(f)};
    }

    [[nodiscard]] std::span<const double> grid() const noexcept { return grid_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    /// Trapezoid integral of g(f(x)) over the grid.
    template <typename G>
    [[nodiscard]] double integrate_transformed(G&& g) const {
        double sum = 0.0;
        for (std::size_t i = 1; i < grid_.size(); ++i) {
            sum += 0.5 * (grid_[i] - grid_[i - 1]) * (g(values_[i - 1]) + g(values_[i]));
        }
        return sum;
    }

    [[nodiscard]] double mass() const {
        return integrate_transformed([](double f) { return f; });
    }

private:
    std::vector<double> grid_;
    std::vector<double> values_;
};

namespace detail {
inline void require_normalized(const SampledDensity& f) {
    const double m = f.mass();
    if (std::abs(m - 1.0) > 1e-8) {
        std::ostringstream os;
        os << "entropy: density is not normalized (integral = " << m << ")";
        throw std::domain_error(os.str());
    }
}
} // namespace detail

/// Shannon entropy -int f log f, with 0 log 0 := 0.
inline double shannon_entropy(const SampledDensity& f) {
    detail::require_normalized(f);
    return -f.integrate_transformed([](double v) { return v > 0.0 ? v * std::log(v) : 0.0; });
}

/// Tsallis entropy (1 - int f^q)/(q - 1); tends to the Shannon entropy as q -> 1+.
inline double tsallis_entropy(const SampledDensity& f, const QIndex& q) {
    detail::require_normalized(f);
    const double qv = q.value();
    const double moment = f.integrate_transformed([qv](double v) { return v > 0.0 ? std::pow(v, qv) : 0.0; });
    return (1.0 - moment) / q.deformation();
}

/// Dispatches on q: exactly 1 gives Shannon, otherwise q must be a valid index.
inline double entropy(const SampledDensity& f, double q) {
    if (q == 1.0) {
        return shannon_entropy(f);
    }
    return tsallis_entropy(f, QIndex{q});
}

} // namespace qdelta
