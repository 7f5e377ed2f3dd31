#pragma once

/**
 * @file laguerre.hpp
 * @brief Generalized Gauss-Laguerre rules for the weight w^alpha e^{-w} on (0, inf).
 *
 * Starting values are the eigenvalues of the symmetric tridiagonal Jacobi
 * matrix (diag 2k + alpha + 1, off-diag sqrt(k (k + alpha))). Each node is
 * then polished by Newton iteration on L_n^{(alpha)} evaluated with the
 * three-term recurrence. The recurrence is rescaled on the fly since
 * L_n(x) overflows for large n and x. Weights come from the Christoffel
 * function of the orthonormal polynomials for the Gamma(alpha + 1, 1)
 * probability measure, in log space:
 *
 *     w_i / Gamma(alpha + 1) = 1 / sum_{k<n} p_k(x_i)^2
 */

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qdelta::quad {

class laguerre_error : public std::runtime_error {
public:
    laguerre_error(const std::string& what, int index) : std::runtime_error(what), index_(index) {}
    /// Index of the node whose iteration failed.
    [[nodiscard]] int index() const noexcept { return index_; }

private:
    int index_;
};

class LaguerreRule {
public:
    LaguerreRule(double alpha, int order);

    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] int order() const noexcept { return static_cast<int>(nodes_.size()); }
    [[nodiscard]] std::span<const double> nodes() const noexcept { return nodes_; }
    [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
    [[nodiscard]] std::span<const double> log_weights() const noexcept { return log_weights_; }

    /// Weights divided by Gamma(alpha + 1): the rule for the Gamma(alpha + 1, 1) probability measure.
    [[nodiscard]] std::span<const double> probability_weights() const noexcept { return probability_weights_; }

    /// sum_i w_i g(x_i)
    template <typename G>
    [[nodiscard]] auto apply(G&& g) const {
        using R = decltype(g(0.0));
        R sum{};
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            sum += weights_[i] * g(nodes_[i]);
        }
        return sum;
    }

private:
    double alpha_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<double> log_weights_;
    std::vector<double> probability_weights_;
};

namespace detail {

struct ScaledLaguerre {
    double p_n;       // L_n(x) * exp(-log_scale)
    double p_nm1;     // L_{n-1}(x) * exp(-log_scale)
    double log_scale;
};

inline ScaledLaguerre laguerre_pair(int n, double alpha, double x) {
    constexpr double big = 1e150;
    constexpr double log_big = 345.38776394910684; // log(1e150)
    double p_prev = 1.0;
    double p = 1.0 + alpha - x;
    double log_scale = 0.0;
    if (n == 0) {
        return {1.0, 0.0, 0.0};
    }
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - x) * p - (k + alpha) * p_prev) / (k + 1.0);
        p_prev = p;
        p = next;
        if (std::abs(p) > big) {
            p /= big;
            p_prev /= big;
            log_scale += log_big;
        }
    }
    return {p, p_prev, log_scale};
}

/// log sum_{k<n} p_k(x)^2 for the orthonormal Laguerre polynomials (p_0 = 1).
inline double log_christoffel_sum(int n, double alpha, double x) {
    constexpr double big = 1e150;
    constexpr double log_big = 345.38776394910684;
    double p_prev = 0.0;
    double p = 1.0;
    double sum = 1.0;
    double log_scale = 0.0; // p is stored as p_true * exp(-log_scale); sum as sum_true * exp(-2 log_scale)
    for (int k = 0; k + 1 < n; ++k) {
        const double b_k = std::sqrt(k * (k + alpha));
        const double b_next = std::sqrt((k + 1.0) * (k + 1.0 + alpha));
        const double next = ((x - (2.0 * k + alpha + 1.0)) * p - b_k * p_prev) / b_next;
        p_prev = p;
        p = next;
        sum += p * p;
        if (std::abs(p) > big) {
            p /= big;
            p_prev /= big;
            sum /= big * big;
            log_scale += log_big;
        }
    }
    return std::log(sum) + 2.0 * log_scale;
}

} // namespace detail

inline LaguerreRule::LaguerreRule(double alpha, int order) : alpha_(alpha) {
    if (!(alpha > -1.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("LaguerreRule: alpha must be finite and > -1");
    }
    if (order < 1) {
        throw std::invalid_argument("LaguerreRule: order must be >= 1");
    }
    const int n = order;

    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max(n - 1, 0));
    for (int k = 0; k < n; ++k) {
        diag(k) = 2.0 * k + alpha + 1.0;
        if (k + 1 < n) {
            sub(k) = std::sqrt((k + 1.0) * (k + 1.0 + alpha));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw laguerre_error("LaguerreRule: tridiagonal eigenvalue iteration failed", -1);
    }
    const Eigen::VectorXd guesses = solver.eigenvalues();

    nodes_.resize(n);
    log_weights_.resize(n);
    const double log_gamma = std::lgamma(alpha + 1.0);
    for (int i = 0; i < n; ++i) {
        double x = std::max(guesses(i), std::numeric_limits<double>::min());
        bool converged = false;
        double previous_step = std::numeric_limits<double>::infinity();
        for (int iter = 0; iter < 100; ++iter) {
            const auto s = detail::laguerre_pair(n, alpha, x);
            const double derivative_times_x = n * s.p_n - (n + alpha) * s.p_nm1;
            const double step = x * s.p_n / derivative_times_x;
            x -= step;
            if (!std::isfinite(x) || x <= 0.0) {
                break;
            }
            // Either machine precision, or stagnation at the recurrence's roundoff level.
            if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * x ||
                (std::abs(step) <= 1e-10 * x && std::abs(step) >= 0.5 * previous_step)) {
                converged = true;
                break;
            }
            previous_step = std::abs(step);
        }
        if (!converged) {
            std::ostringstream os;
            os << "LaguerreRule: Newton iteration failed for node " << i << " (alpha = " << alpha << ", order = " << n
               << ")";
            throw laguerre_error(os.str(), i);
        }
        nodes_[i] = x;
        log_weights_[i] = log_gamma - detail::log_christoffel_sum(n, alpha, x);
    }
    for (int i = 1; i < n; ++i) {
        if (!(nodes_[i] > nodes_[i - 1])) {
            std::ostringstream os;
            os << "LaguerreRule: nodes " << i - 1 << " and " << i << " coincide after refinement";
            throw laguerre_error(os.str(), i);
        }
    }

    weights_.resize(n);
    probability_weights_.resize(n);
    for (int i = 0; i < n; ++i) {
        weights_[i] = std::exp(log_weights_[i]);
        probability_weights_[i] = std::exp(log_weights_[i] - log_gamma);
    }
}

/// Shared, memoized rule. Construction happens once per (alpha, order) across threads.
inline std::shared_ptr<const LaguerreRule> laguerre_rule(double alpha, int order) {
    static std::mutex mutex;
    static std::map<std::pair<double, int>, std::shared_ptr<const LaguerreRule>> cache;
    const auto key = std::pair{alpha, order};
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) {
            return it->second;
        }
    }
    auto rule = std::make_shared<const LaguerreRule>(alpha, order);
    std::lock_guard lock(mutex);
    return cache.try_emplace(key, std::move(rule)).first->second;
}

} // namespace qdelta::quad
