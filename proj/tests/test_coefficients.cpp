// Coefficient functions: evaluation identities, antiderivative closed forms,
// the cutoff profile, and the growth-condition auditors.
#include "doctest.h"

#include <cmath>

#include "snls/coefficients.hpp"
#include "snls/rng.hpp"

using namespace snls;

namespace {
cplx draw_z(double R, std::uint32_t i) {
    double r = R * std::sqrt(rng::uniform(99, rng::kStreamScalarSamples, 1, i, 0));
    double ph = kTwoPi * rng::uniform(99, rng::kStreamScalarSamples, 1, i, 1);
    return cplx(r * std::cos(ph), r * std::sin(ph));
}
}  // namespace

TEST_CASE("f evaluation: cases and phase equivariance") {
    CoefficientSpec cubic = CoefficientSpec::defocusing_cubic();
    CHECK(f_eval(cplx(0.0), cubic) == cplx(0.0));
    CHECK(f_eval(cplx(1.0, 1.0), cubic) == cplx(2.0, 2.0));  // |z|^2 = 2

    CoefficientSpec foc = CoefficientSpec::focusing_sqrt();
    CHECK(f_eval(cplx(2.0, 0.0), foc).real() == doctest::Approx(-4.0));  // f~(4) = -2

    for (int i = 0; i < 50; ++i) {
        cplx z = draw_z(3.0, std::uint32_t(i));
        double phi = kTwoPi * rng::uniform(99, rng::kStreamScalarSamples, 2, std::uint32_t(i), 0);
        cplx rot = std::exp(cplx(0.0, phi));
        for (const CoefficientSpec& s : {cubic, foc}) {
            CHECK(std::abs(f_eval(rot * z, s) - rot * f_eval(z, s)) < 1e-12);
            CHECK(std::abs(g_eval(rot * z, s) - rot * g_eval(z, s)) < 1e-12);
            CHECK(std::abs(m_eval(rot * z, s) - rot * m_eval(z, s)) < 1e-12);
            // Re(conj(z) i f(z)) = 0 pointwise
            cplx v = cplx(0, 1) * f_eval(z, s);
            CHECK(std::abs(z.real() * v.real() + z.imag() * v.imag()) < 1e-12);
        }
    }
}

TEST_CASE("g evaluation: constant and log-saturating cases") {
    CoefficientSpec spec;
    spec.g_case = GCase::constant;
    spec.g_value = 1.0;
    CHECK(g_eval(cplx(0.7, -0.3), spec) == cplx(0.7, -0.3));
    CHECK(g_eval(cplx(0.0), spec) == cplx(0.0));

    spec.g_case = GCase::log_saturating;
    spec.g_C = 1.0;
    double expect = std::log(2.0) / (1.0 + std::log(2.0));
    CHECK(g_eval(cplx(1.0, 0.0), spec).real() == doctest::Approx(expect).epsilon(1e-15));
    // bounded amplitude: |g(z)| <= sup g~ |z| <= |z|
    for (int i = 0; i < 100; ++i) {
        cplx z = draw_z(10.0, std::uint32_t(i));
        CHECK(std::abs(g_eval(z, spec)) <= std::abs(z) + 1e-15);
    }
}

TEST_CASE("m formula: definition, kernel identity, FD oracle") {
    CoefficientSpec unit;
    unit.g_case = GCase::constant;
    unit.g_value = 1.0;
    cplx z(0.4, -1.1);
    CHECK(std::abs(m_eval(z, unit) + z) < 1e-15);
    CHECK(m_eval(cplx(0.0), unit) == cplx(0.0));

    CoefficientSpec logsat;
    logsat.g_case = GCase::log_saturating;
    const double h = 1e-5;
    const cplx I(0, 1);
    for (int i = 0; i < 200; ++i) {
        cplx y = draw_z(5.0, std::uint32_t(1000 + i));
        cplx dir = I * g_eval(y, logsat);
        cplx fd = (I * g_eval(y + h * dir, logsat) - I * g_eval(y - h * dir, logsat)) / (2.0 * h);
        CHECK(std::abs(fd - m_eval(y, logsat)) < 1e-6);
        cplx m = m_eval(y, logsat);
        double ident = m.real() * y.real() + m.imag() * y.imag() + std::norm(g_eval(y, logsat));
        CHECK(std::abs(ident) < 1e-12);
    }
}

TEST_CASE("antiderivative closed forms with F(0) = 0") {
    CoefficientSpec cubic = CoefficientSpec::defocusing_cubic();
    CHECK(antiderivative_F(3.0, cubic) == doctest::Approx(4.5));  // r^2/2

    CoefficientSpec foc = CoefficientSpec::focusing_sqrt();
    CHECK(antiderivative_F(4.0, foc) ==
          doctest::Approx(-(2.0 / 3.0) * std::pow(4.0, 1.5)).epsilon(1e-15));

    CoefficientSpec pow5;
    pow5.f_case = FCase::defocusing_power;
    pow5.f_C = 2.0;
    pow5.f_sigma = 2.0;
    CHECK(antiderivative_F(2.0, pow5) == doctest::Approx(2.0 / 3.0 * 8.0));

    for (const CoefficientSpec& s :
         {cubic, foc, pow5, CoefficientSpec::free_field()})
        CHECK(antiderivative_F(0.0, s) == 0.0);

    // term-wise polynomial: f~(r) = 1 + 2r + 3r^2 -> F~(r) = r + r^2 + r^3
    CoefficientSpec poly;
    poly.poly = {1.0, 2.0, 3.0};
    CHECK(antiderivative_F(2.0, poly) == doctest::Approx(2.0 + 4.0 + 8.0));
}

TEST_CASE("cutoff profile: plateaus exact, C1, slope budget") {
    // endpoint values pinned exactly
    for (double n : {1.0, 3.0, 17.5}) {
        CHECK(cutoff_theta(n, n) == 1.0);
        CHECK(cutoff_theta(2.0 * n, n) == 0.0);
    }
    // iff-plateaus: 1 exactly on [0,1], strictly below 1 beyond; 0 exactly
    // from 2 on, strictly positive before
    for (int i = 0; i <= 1000; ++i) {
        double x = 3.0 * i / 1000.0;
        double v = cutoff_theta_base(x);
        if (x <= 1.0) CHECK(v == 1.0);
        if (x > 1.0 + 1e-9 && x < 2.0 - 1e-9) {
            CHECK(v < 1.0);
            CHECK(v > 0.0);
        }
        if (x >= 2.0) CHECK(v == 0.0);
    }
    // nonincreasing
    double prev = 2.0;
    for (int i = 0; i <= 3000; ++i) {
        double v = cutoff_theta_base(3.0 * i / 3000.0);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
    // C1: derivative continuous at the knots and matching finite differences
    for (double x : {1.0, 1.0 + kCutoffEase, 1.5, 2.0 - kCutoffEase, 2.0}) {
        double fd = (cutoff_theta_base(x + 1e-7) - cutoff_theta_base(x - 1e-7)) / 2e-7;
        CHECK(std::abs(fd - cutoff_theta_base_deriv(x)) < 1e-6);
    }
    CHECK(cutoff_theta_base_deriv(1.0) == 0.0);
    CHECK(cutoff_theta_base_deriv(2.0) == 0.0);
    // derivative never dips below the implemented budget -1/(1-e)
    for (int i = 0; i <= 2000; ++i) {
        double x = 3.0 * i / 2000.0;
        CHECK(cutoff_theta_base_deriv(x) >= -kCutoffLip - 1e-12);
        CHECK(cutoff_theta_base_deriv(x) <= 0.0);
    }
}

TEST_CASE("cutoff Lipschitz bound at the implemented constant") {
    // Exact plateaus force the interior slope to -1/(1-e); the sampled
    // Lipschitz factor is kCutoffLip/n — a factor 1/n is unattainable jointly
    // with C1 smoothness and exact plateaus.  10^4 random pairs.
    double n = 7.0;
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        double x = 3.0 * n * rng::uniform(5, rng::kStreamScalarSamples, 3, std::uint32_t(i), 0);
        double y = 3.0 * n * rng::uniform(5, rng::kStreamScalarSamples, 3, std::uint32_t(i), 1);
        if (x == y) continue;
        double q = std::abs(cutoff_theta(x, n) - cutoff_theta(y, n)) / std::abs(x - y);
        worst = std::max(worst, q);
        CHECK(q <= kCutoffLip / n * (1.0 + 1e-12));
    }
    CHECK(worst > 0.9 / n);  // the bound is active, not vacuous

    // theta_n(x) h(x) <= h(2n) for nondecreasing h
    auto h = [](double x) { return x * x; };
    for (int i = 0; i < 1000; ++i) {
        double x = 4.0 * n * rng::uniform(5, rng::kStreamScalarSamples, 4, std::uint32_t(i), 0);
        CHECK(cutoff_theta(x, n) * h(x) <= h(2.0 * n) + 1e-12);
    }
}

TEST_CASE("growth audits accept correct exponents and flag wrong ones") {
    CoefficientSpec cubic = CoefficientSpec::defocusing_cubic();
    GrowthReport f_rep = growth_audit('f', cubic, 4000, 5.0, 7);
    CHECK(f_rep.exponent == 3.0);  // beta = 2N+1, N = 1
    CHECK(!f_rep.violation);
    CHECK(f_rep.c_growth > 0.0);
    CHECK(std::isfinite(f_rep.c_deriv_lip));

    GrowthReport g_rep = growth_audit('g', cubic, 4000, 5.0, 7);
    CHECK(g_rep.exponent == 1.0);  // a = 1 for the log-saturating amplitude
    CHECK(!g_rep.violation);

    GrowthReport m_rep = growth_audit('m', cubic, 4000, 5.0, 7);
    CHECK(m_rep.exponent == 2.0);  // gamma = 2
    CHECK(!m_rep.violation);

    // deliberately under-declared exponent must be flagged
    CoefficientSpec wrong = cubic;
    wrong.beta = 1.0;
    CHECK(growth_audit('f', wrong, 4000, 5.0, 7).violation);
}

TEST_CASE("spec validation names the violated constraint") {
    CoefficientSpec foc = CoefficientSpec::focusing_sqrt();
    foc.f_sigma = 1.5;
    CHECK_THROWS_WITH_AS(foc.validate(), doctest::Contains("sigma in [1/2, 1)"),
                         std::invalid_argument);

    CoefficientSpec poly;
    poly.poly = {1.0, -2.0};
    CHECK_THROWS_WITH_AS(poly.validate(), doctest::Contains("positive leading coefficient"),
                         std::invalid_argument);
}
