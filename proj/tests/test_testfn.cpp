#include <qdelta/testfn.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

using qdelta::ComplexVal;
using qdelta::FourierKind;
using qdelta::TestFunction;

namespace {

const qdelta::quad::QuadAccuracy kFine{1e-13, 1e-12, 4000};

// Closed-form transform of (1 + t^2)^{-3}, used only as an oracle.
double cauchy3_transform(double u) {
    const double a = std::abs(u);
    return std::numbers::pi / 8.0 * (3.0 + 3.0 * a + a * a) * std::exp(-a);
}

} // namespace

TEST(Corpus, ContainsRequiredMembers) {
    const auto names = qdelta::corpus_names();
    for (const char* name :
         {"gaussian", "scaled_gaussian", "narrow_gaussian", "hermite_damped", "odd_gaussian", "bump", "cauchy3"}) {
        EXPECT_NE(std::find(names.begin(), names.end(), name), names.end()) << name;
    }
    EXPECT_FALSE(qdelta::find_test_function("cauchy3").in_class);
    EXPECT_TRUE(qdelta::find_test_function("bump").in_class);
}

TEST(Corpus, UnknownNameListsAlternatives) {
    try {
        qdelta::find_test_function("lorentzian");
        FAIL();
    } catch (const qdelta::unknown_test_function& e) {
        EXPECT_NE(std::string(e.what()).find("gaussian"), std::string::npos);
    }
}

TEST(Corpus, ValueAtZeroAndSupNorm) {
    for (const auto& f : qdelta::corpus()) {
        EXPECT_DOUBLE_EQ(f.eval(0.0), f.value_at_zero) << f.name;
        double sup = 0.0;
        for (int i = -4000; i <= 4000; ++i) {
            sup = std::max(sup, std::abs(f.eval(0.0025 * i)));
        }
        EXPECT_NEAR(sup, f.sup_norm, 1e-6) << f.name;
    }
}

TEST(Corpus, InClassMembersDecayRapidly) {
    for (const auto& f : qdelta::corpus()) {
        if (!f.in_class) {
            continue;
        }
        for (int k = 0; k <= 4; ++k) {
            double previous = std::numeric_limits<double>::infinity();
            for (double x : {8.0, 16.0, 32.0, 64.0}) {
                const double v = std::max(std::abs(std::pow(x, k) * f.eval(x)), std::abs(std::pow(x, k) * f.eval(-x)));
                EXPECT_LE(v, previous) << f.name << " k=" << k;
                previous = v;
            }
            EXPECT_LT(previous, 1e-100) << f.name << " k=" << k;
        }
    }
    // The stress member only decays algebraically: t^6 phi(t) -> 1.
    const auto c = qdelta::find_test_function("cauchy3");
    EXPECT_NEAR(std::pow(1e3, 6) * c.eval(1e3), 1.0, 1e-5);
}

TEST(Corpus, BumpVanishesAtSupportEdge) {
    const auto b = qdelta::find_test_function("bump");
    EXPECT_EQ(b.eval(1.0), 0.0);
    EXPECT_EQ(b.eval(-1.0), 0.0);
    EXPECT_EQ(b.eval(1.5), 0.0);
    EXPECT_LT(b.eval(0.999), 1e-200);
}

TEST(Corpus, TailDescriptorsBoundTheMass) {
    for (const auto& f : qdelta::corpus()) {
        for (double T : {1.0, 2.0, 4.0}) {
            auto outside = [&f](double t) { return std::abs(f.eval(t)); };
            const double right = qdelta::quad::integrate_adaptive(outside, T, T + 200.0, kFine).value;
            const double left = qdelta::quad::integrate_adaptive(outside, -T - 200.0, -T, kFine).value;
            EXPECT_LE(right + left, f.tail.tail_mass(T) * (1.0 + 1e-9) + 1e-14) << f.name << " T=" << T;
        }
    }
}

TEST(Fourier, ClosedFormsAgreeWithQuadrature) {
    for (const auto& f : qdelta::corpus()) {
        if (f.fourier_kind != FourierKind::exact) {
            continue;
        }
        for (double u : {0.0, 0.5, -1.0, 2.5, 5.0, -8.0}) {
            const ComplexVal exact = f.exact_fourier(u);
            const ComplexVal numeric = qdelta::numeric_fourier_transform(f, u, kFine);
            EXPECT_LT(std::abs(exact - numeric), 1e-11) << f.name << " u=" << u;
        }
    }
}

TEST(Fourier, CauchyTransformMatchesResidueFormula) {
    const auto c = qdelta::find_test_function("cauchy3");
    for (double u : {0.0, 0.3, -2.0, 6.0, 15.0}) {
        const ComplexVal v = qdelta::fourier_transform(c, u, kFine);
        EXPECT_NEAR(v.real(), cauchy3_transform(u), 1e-11) << u;
        EXPECT_NEAR(v.imag(), 0.0, 1e-11) << u;
    }
}

TEST(Fourier, RealEvenMembersHaveRealEvenTransforms) {
    for (const auto& f : qdelta::corpus()) {
        if (f.name == "odd_gaussian") {
            continue;
        }
        for (double u : {0.7, 3.0, 11.0}) {
            const ComplexVal plus = qdelta::fourier_transform(f, u, kFine);
            const ComplexVal minus = qdelta::fourier_transform(f, -u, kFine);
            EXPECT_LT(std::abs(plus.imag()), 1e-12) << f.name;
            EXPECT_NEAR(plus.real(), minus.real(), 1e-12) << f.name;
        }
    }
    const auto odd = qdelta::find_test_function("odd_gaussian");
    const ComplexVal v = qdelta::numeric_fourier_transform(odd, 1.3, kFine);
    EXPECT_LT(std::abs(v.real()), 1e-12);
    EXPECT_NEAR(v.imag(), -1.3 * std::sqrt(2.0 * std::numbers::pi) * std::exp(-0.5 * 1.69), 1e-12);
}

TEST(Fourier, BumpEnvelopeBound) {
    const auto b = qdelta::find_test_function("bump");
    const qdelta::quad::QuadAccuracy acc{1e-15, 1e-12, 20000};
    for (double u = 1.0; u <= 400.0; u *= 1.19) {
        const double bound = 4.0 * std::pow(u, -0.75) * std::exp(-std::sqrt(u));
        EXPECT_LE(std::abs(qdelta::numeric_fourier_transform(b, u, acc)), bound) << u;
    }
}

TEST(Fourier, TransformTailDescriptorsBoundTheMass) {
    for (const auto& f : qdelta::corpus()) {
        ASSERT_TRUE(f.fourier_tail.has_value()) << f.name;
        for (double U : {2.0, 8.0, 20.0}) {
            auto outside = [&f](double u) { return std::abs(qdelta::fourier_transform(f, u, kFine)); };
            const double right = qdelta::quad::integrate_adaptive(outside, U, U + 150.0, {1e-12, 1e-6, 4000}).value;
            EXPECT_LE(2.0 * right, f.fourier_tail->tail_mass(U) * (1.0 + 1e-6) + 1e-11) << f.name << " U=" << U;
        }
    }
}

TEST(ClassicalDelta, IntegralOfTransformIsTwoPiPhiZero) {
    for (const char* name : {"gaussian", "odd_gaussian", "hermite_damped"}) {
        const auto f = qdelta::find_test_function(name);
        const auto r = qdelta::classical_delta_integral(f, {1e-10, 1e-10, 2000});
        EXPECT_NEAR(r.value, 2.0 * std::numbers::pi * f.value_at_zero, 1e-9) << name;
    }
}
