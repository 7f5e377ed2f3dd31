#pragma once

/**
 * @file superstat.hpp
 * @brief Gamma-mixture expectations and the superstatistical form of e_q.
 *
 * With W ~ Gamma(shape = 1/(q-1), scale = 1),
 *
 *     e_q(-iut) = E[ exp(-i u t (q-1) W) ].
 *
 * Expectations are generalized Gauss-Laguerre sums with alpha = shape - 1.
 * The rule converges slowly for strongly oscillating g: roughly
 * exp(-order / theta^2) for g(w) = exp(-i theta w), so an order-n rule is
 * reliable only while |theta| stays well below sqrt(n).
 */

#include <qdelta/qfunc.hpp>
#include <qdelta/quad.hpp>
#include <qdelta/testfn.hpp>

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace qdelta {

inline constexpr int kMinGammaOrder = 8;

/**
 * Expectation of g(W) for W ~ Gamma(1/(q-1), 1) with an order-point Laguerre
 * rule. Nodes with probability weight <= min_weight are skipped.
 */
template <typename G>
auto gamma_expectation(const QIndex& q, G&& g, int order, double min_weight = 0.0) {
    if (order < kMinGammaOrder) {
        std::ostringstream os;
        os << "gamma_expectation: order must be >= " << kMinGammaOrder << ", got " << order;
        throw std::invalid_argument(os.str());
    }
    using R = std::conditional_t<std::is_convertible_v<std::invoke_result_t<G&, double>, double>, double, ComplexVal>;
    const auto rule = quad::laguerre_rule(q.shape() - 1.0, order);
    const auto nodes = rule->nodes();
    const auto weights = rule->probability_weights();
    R sum{};
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (weights[i] <= min_weight) {
            continue;
        }
        const R v = static_cast<R>(g(nodes[i]));
        if (!quad::is_finite(v)) {
            throw quad::non_finite_error(nodes[i]);
        }
        sum += weights[i] * v;
    }
    return sum;
}

/// E[exp(-i u t (q-1) W)], the mixture representation of e_q(-iut).
inline ComplexVal superstat_qexp(const QIndex& q, double u, double t, int order) {
    const double theta = u * t * q.deformation();
    return gamma_expectation(q, [theta](double w) { return std::polar(1.0, -theta * w); }, order);
}

/**
 * E[phi_hat(u (q-1) W)]: the pairing <e_q(-iut), phi> computed after
 * exchanging the t-integral with the mixture expectation.
 */
inline ComplexVal superstat_route(const QIndex& q, double u, const TestFunction& phi, int order,
                                  const quad::QuadAccuracy& acc = {1e-13, 1e-11, 2000}) {
    if (order < 32) {
        throw std::invalid_argument("superstat_route: order must be >= 32");
    }
    const double scale = u * q.deformation();
    // |phi_hat| <= ||phi||_1, so nodes below this weight change the sum by less than 1e-3 abs_tol.
    const auto l1 = quad::integrate_real_line([&phi](double t) { return std::abs(phi.eval(t)); },
                                              quad::QuadAccuracy{1e-10, 1e-8, 2000}, phi.tail);
    const double min_weight = 1e-3 * acc.abs_tol / (order * std::max(l1.value, 1e-300));
    return gamma_expectation(q, [&](double w) { return fourier_transform(phi, scale * w, acc); }, order, min_weight);
}

/// Direct pairing int e_q(-iut) phi(t) dt by quadrature over t.
inline quad::QuadResult<ComplexVal> direct_pairing(const QIndex& q, double u, const TestFunction& phi,
                                                   const quad::QuadAccuracy& acc) {
    auto integrand = [&](double t) { return q_exponential(q, ComplexVal{0.0, -u * t}) * phi.eval(t); };
    return quad::integrate_real_line(integrand, acc, phi.tail);
}

// ---------------------------------------------------------------------------
// Generalized Boltzmann factor
// ---------------------------------------------------------------------------

/// Probability density of the mixing variable on (0, inf), given in log form.
class MixtureSpec {
public:
    /// Rejects NaN log-densities on probes and densities whose integral is not 1 within 1e-8.
    MixtureSpec(std::string name, std::function<double(double)> log_density);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] double log_density(double beta) const { return log_density_(beta); }
    [[nodiscard]] double density(double beta) const { return std::exp(log_density_(beta)); }

private:
    std::string name_;
    std::function<double(double)> log_density_;
};

/// Gamma(shape k, scale theta) mixing density.
inline MixtureSpec gamma_mixture(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0)) {
        throw std::invalid_argument("gamma_mixture: shape and scale must be positive");
    }
    const double log_norm = -std::lgamma(shape) - shape * std::log(scale);
    std::ostringstream name;
    name << "gamma(" << shape << "," << scale << ")";
    return {name.str(), [=](double beta) {
                if (!(beta > 0.0)) {
                    return -std::numeric_limits<double>::infinity();
                }
                if (std::isinf(beta)) {
                    return -std::numeric_limits<double>::infinity();
                }
                return log_norm + (shape - 1.0) * std::log(beta) - beta / scale;
            }};
}

class divergence_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

namespace detail {

/// Integrand of int (d beta / beta) f(beta) e^{-beta E} after beta = e^s.
inline double bc_log_integrand(const MixtureSpec& spec, double energy, double s) {
    const double beta = std::exp(s);
    double log_value = spec.log_density(beta);
    if (energy > 0.0) {
        log_value -= beta * energy;
    }
    return std::exp(log_value);
}

} // namespace detail

inline MixtureSpec::MixtureSpec(std::string name, std::function<double(double)> log_density)
    : name_(std::move(name)), log_density_(std::move(log_density)) {
    // Mass in log coordinates: int f(beta) d beta = int f(e^s) e^s ds.
    auto integrand = [this](double s) { return std::exp(log_density_(std::exp(s)) + s); };
    for (double s = -40.0; s <= 40.0; s += 0.5) {
        if (std::isnan(log_density_(std::exp(s)))) {
            throw std::domain_error("MixtureSpec '" + name_ + "': density is NaN on (0, inf)");
        }
    }
    const auto mass = quad::integrate_real_line(integrand, quad::QuadAccuracy{1e-12, 1e-10, 4000}, std::nullopt);
    if (std::abs(mass.value - 1.0) > 1e-8) {
        std::ostringstream os;
        os << "MixtureSpec '" << name_ << "': density integrates to " << mass.value << ", not 1";
        throw std::domain_error(os.str());
    }
}

/**
 * Generalized Boltzmann factor int_0^inf (d beta / beta) f(beta) e^{-beta E}, integrated
 * over s = log beta. Throws divergence_error when f(beta)/beta is not
 * integrable at the origin.
 */
inline quad::QuadResult<double> bc_factor_result(const MixtureSpec& spec, double energy, const quad::QuadAccuracy& acc) {
    if (!(energy >= 0.0) || !std::isfinite(energy)) {
        throw std::invalid_argument("bc_factor: energy must be finite and >= 0");
    }
    auto integrand = [&](double s) { return detail::bc_log_integrand(spec, energy, s); };
    const double near = integrand(-40.0);
    const double far = integrand(-80.0);
    if (near > 0.0 && far >= near) {
        std::ostringstream os;
        os << "bc_factor: f(beta)/beta is not integrable at beta -> 0 for mixture '" << spec.name() << "'";
        throw divergence_error(os.str());
    }
    quad::QuadAccuracy local = acc;
    local.max_subdivisions = std::max(acc.max_subdivisions, 4000);
    return quad::integrate_real_line(integrand, local, std::nullopt);
}

inline double bc_factor(const MixtureSpec& spec, double energy, const quad::QuadAccuracy& acc = {}) {
    return bc_factor_result(spec, energy, acc).value;
}

} // namespace qdelta
