#include <qdelta/superstat.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

using qdelta::ComplexVal;
using qdelta::QIndex;

TEST(GammaExpectation, MomentLadder) {
    for (double q : {1.1, 1.3, 1.5, 1.9}) {
        const QIndex qi{q};
        const double shape = qi.shape();
        for (int k = 0; k <= 6; ++k) {
            const double got = qdelta::gamma_expectation(qi, [k](double w) { return std::pow(w, k); }, 64);
            // Gamma(shape + k) / Gamma(shape) in log space
            const double expected = std::exp(std::lgamma(shape + k) - std::lgamma(shape));
            EXPECT_NEAR(got / expected, 1.0, 1e-9) << "q=" << q << " k=" << k;
        }
    }
}

TEST(GammaExpectation, RejectsTinyOrder) {
    EXPECT_THROW(qdelta::gamma_expectation(QIndex{1.5}, [](double) { return 1.0; }, 4), std::invalid_argument);
}

TEST(Superstatistics, MatchesQExponentialForModeratePhase) {
    for (double q : {1.1, 1.5, 1.9}) {
        const QIndex qi{q};
        for (double u : {-3.0, -0.5, 1.0, 2.0}) {
            for (double t : {-2.0, 0.5, 1.5}) {
                if (std::abs(u * t * qi.deformation()) > 3.0) {
                    continue;
                }
                const ComplexVal lhs = qdelta::superstat_qexp(qi, u, t, 256);
                const ComplexVal rhs = qdelta::q_exponential(qi, ComplexVal{0.0, -u * t});
                EXPECT_LT(std::abs(lhs - rhs), 1e-10) << q << ' ' << u << ' ' << t;
            }
        }
    }
}

TEST(Superstatistics, ErrorDoesNotGrowWithOrder) {
    for (double q : {1.2, 1.5, 1.8}) {
        const QIndex qi{q};
        const ComplexVal exact = qdelta::q_exponential(qi, ComplexVal{0.0, -4.0});
        double previous = std::numeric_limits<double>::infinity();
        for (int order : {32, 64, 128, 256}) {
            const double err = std::abs(qdelta::superstat_qexp(qi, 2.0, 2.0, order) - exact);
            EXPECT_LE(err, previous + 1e-12) << q << ' ' << order;
            previous = err;
        }
    }
}

TEST(Superstatistics, BothFubiniOrdersAgree) {
    const qdelta::quad::QuadAccuracy acc{1e-12, 1e-11, 4000};
    for (const auto& phi : qdelta::corpus()) {
        for (double q : {1.25, 1.6}) {
            const QIndex qi{q};
            for (double u : {0.5, -2.0, 5.0}) {
                const ComplexVal route = qdelta::superstat_route(qi, u, phi, 256);
                const ComplexVal direct = qdelta::direct_pairing(qi, u, phi, acc).value;
                EXPECT_LT(std::abs(route - direct), 1e-9) << phi.name << " q=" << q << " u=" << u;
            }
        }
    }
}

TEST(BoltzmannFactor, GammaMixtureClosedForm) {
    // int_0^inf beta^{k-2} e^{-beta/theta - beta E} d beta / (Gamma(k) theta^k)
    //   = (1 + theta E)^{-(k-1)} / ((k - 1) theta)
    for (auto [k, theta] : {std::pair{4.0, 0.25}, std::pair{1.5, 2.0}, std::pair{11.0, 0.1}}) {
        const auto spec = qdelta::gamma_mixture(k, theta);
        for (double energy : {0.0, 0.3, 2.0, 25.0}) {
            const double expected = std::pow(1.0 + theta * energy, -(k - 1.0)) / ((k - 1.0) * theta);
            EXPECT_NEAR(qdelta::bc_factor(spec, energy) / expected, 1.0, 1e-9) << k << ' ' << theta << ' ' << energy;
        }
    }
}

TEST(BoltzmannFactor, QExponentialAsBoltzmannFactor) {
    // With k = 1/(q-1), theta = q-1 the factor is e_q(-E) / (2 - q).
    const QIndex q{1.3};
    const auto spec = qdelta::gamma_mixture(q.shape(), q.deformation());
    for (double energy : {0.0, 1.0, 4.0}) {
        EXPECT_NEAR(qdelta::bc_factor(spec, energy) * (2.0 - q.value()),
                    std::pow(qdelta::q_exponential(q, -energy), 2.0 - q.value()), 1e-9);
    }
}

TEST(BoltzmannFactor, NonIntegrableMixtureIsReported) {
    EXPECT_THROW(qdelta::bc_factor(qdelta::gamma_mixture(1.0, 1.0), 1.0), qdelta::divergence_error);
    EXPECT_THROW(qdelta::bc_factor(qdelta::gamma_mixture(0.5, 1.0), 1.0), qdelta::divergence_error);
    EXPECT_THROW(qdelta::bc_factor(qdelta::gamma_mixture(3.0, 1.0), -1.0), std::invalid_argument);
}

TEST(BoltzmannFactor, MixtureMustBeNormalized) {
    EXPECT_THROW(qdelta::MixtureSpec("half", [](double b) { return std::log(0.5) - b; }), std::domain_error);
    EXPECT_NO_THROW(qdelta::MixtureSpec("exp", [](double b) { return -b; }));
}
