// coefficients.cpp
#include "snls/coefficients.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "snls/rng.hpp"

namespace snls {

void CoefficientSpec::validate() const {
    switch (f_case) {
        case FCase::none:
            break;
        case FCase::defocusing_poly:
            require(!poly.empty(), "coefficients: defocusing_poly needs at least one coefficient");
            require(poly.back() > 0.0,
                    "coefficients: defocusing_poly requires a positive leading coefficient");
            break;
        case FCase::defocusing_power:
            require(f_C > 0.0, "coefficients: defocusing_power requires C > 0");
            require(f_sigma >= 0.5, "coefficients: defocusing_power requires sigma >= 1/2");
            break;
        case FCase::focusing_power:
            require(f_C > 0.0, "coefficients: focusing_power requires C > 0");
            require(f_sigma >= 0.5 && f_sigma < 1.0,
                    "coefficients: focusing_power requires sigma in [1/2, 1)");
            break;
    }
    if (g_case == GCase::log_saturating)
        require(g_C > 0.0, "coefficients: log_saturating requires C > 0");
}

double CoefficientSpec::declared_beta() const {
    if (beta > 0.0) return beta;
    switch (f_case) {
        case FCase::none: return 1.0;
        case FCase::defocusing_poly: return 2.0 * double(poly.size() - 1) + 1.0;  // 2N+1
        case FCase::defocusing_power:
        case FCase::focusing_power: return 2.0 * f_sigma + 1.0;
    }
    return 1.0;
}

double CoefficientSpec::declared_a() const { return a > 0.0 ? a : 1.0; }
double CoefficientSpec::declared_gamma() const { return gamma > 0.0 ? gamma : 2.0; }

CoefficientSpec CoefficientSpec::defocusing_cubic(GCase g) {
    CoefficientSpec s;
    s.f_case = FCase::defocusing_poly;
    s.poly = {0.0, 1.0};
    s.g_case = g;
    return s;
}

CoefficientSpec CoefficientSpec::focusing_sqrt(GCase g) {
    CoefficientSpec s;
    s.f_case = FCase::focusing_power;
    s.f_C = 1.0;
    s.f_sigma = 0.5;
    s.g_case = g;
    return s;
}

CoefficientSpec CoefficientSpec::free_field() {
    CoefficientSpec s;
    s.f_case = FCase::none;
    s.g_case = GCase::none;
    return s;
}

double f_tilde(double r, const CoefficientSpec& spec) {
    switch (spec.f_case) {
        case FCase::none: return 0.0;
        case FCase::defocusing_poly: {
            double acc = 0.0;
            for (std::size_t k = spec.poly.size(); k-- > 0;) acc = acc * r + spec.poly[k];
            return acc;
        }
        case FCase::defocusing_power: return spec.f_C * std::pow(r, spec.f_sigma);
        case FCase::focusing_power: return -spec.f_C * std::pow(r, spec.f_sigma);
    }
    return 0.0;
}

double f_tilde_prime(double r, const CoefficientSpec& spec) {
    switch (spec.f_case) {
        case FCase::none: return 0.0;
        case FCase::defocusing_poly: {
            double acc = 0.0;
            for (std::size_t k = spec.poly.size(); k-- > 1;)
                acc = acc * r + double(k) * spec.poly[k];
            return acc;
        }
        case FCase::defocusing_power:
            return spec.f_C * spec.f_sigma * std::pow(r, spec.f_sigma - 1.0);
        case FCase::focusing_power:
            return -spec.f_C * spec.f_sigma * std::pow(r, spec.f_sigma - 1.0);
    }
    return 0.0;
}

double g_tilde(double r, const CoefficientSpec& spec) {
    switch (spec.g_case) {
        case GCase::none: return 0.0;
        case GCase::constant: return spec.g_value;
        case GCase::log_saturating: {
            double l = std::log1p(r);
            return l / (spec.g_C + l);
        }
    }
    return 0.0;
}

double g_tilde_prime(double r, const CoefficientSpec& spec) {
    switch (spec.g_case) {
        case GCase::none:
        case GCase::constant: return 0.0;
        case GCase::log_saturating: {
            double l = std::log1p(r);
            double d = spec.g_C + l;
            return spec.g_C / ((1.0 + r) * d * d);
        }
    }
    return 0.0;
}

cplx f_eval(cplx z, const CoefficientSpec& spec) { return f_tilde(std::norm(z), spec) * z; }
cplx g_eval(cplx z, const CoefficientSpec& spec) { return g_tilde(std::norm(z), spec) * z; }

cplx m_eval(cplx z, const CoefficientSpec& spec) {
    double gt = g_tilde(std::norm(z), spec);
    return -(gt * gt) * z;
}

double antiderivative_F(double r, const CoefficientSpec& spec) {
    switch (spec.f_case) {
        case FCase::none: return 0.0;
        case FCase::defocusing_poly: {
            // term-wise power rule, F̃(0) = 0
            double acc = 0.0;
            for (std::size_t k = spec.poly.size(); k-- > 0;)
                acc = acc * r + spec.poly[k] / double(k + 1);
            return acc * r;
        }
        case FCase::defocusing_power:
            return spec.f_C / (spec.f_sigma + 1.0) * std::pow(r, spec.f_sigma + 1.0);
        case FCase::focusing_power:
            return -spec.f_C / (spec.f_sigma + 1.0) * std::pow(r, spec.f_sigma + 1.0);
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Cutoff.  Plateaus are exact: θ = 1 iff x ≤ 1, θ = 0 iff x ≥ 2.  With exact
// plateaus a C¹ profile cannot keep slope ≥ −1 (the descent integral forces
// the middle below −1), so the middle runs at −1/(1−e) with quadratic corner
// eases of width e; kCutoffLip records the implemented Lipschitz constant.

double cutoff_theta_base(double x) {
    constexpr double e = kCutoffEase;
    constexpr double m = -1.0 / (1.0 - e);
    if (x <= 1.0) return 1.0;
    if (x >= 2.0) return 0.0;
    if (x < 1.0 + e) {
        double t = x - 1.0;
        return 1.0 + 0.5 * m * t * t / e;
    }
    if (x <= 2.0 - e) return 1.0 + 0.5 * m * e + m * (x - 1.0 - e);
    double t = 2.0 - x;
    return -0.5 * m * t * t / e;
}

double cutoff_theta_base_deriv(double x) {
    constexpr double e = kCutoffEase;
    constexpr double m = -1.0 / (1.0 - e);
    if (x <= 1.0 || x >= 2.0) return 0.0;
    if (x < 1.0 + e) return m * (x - 1.0) / e;
    if (x <= 2.0 - e) return m;
    return m * (2.0 - x) / e;
}

double cutoff_theta(double x, double n) {
    require(n >= 1.0, "cutoff_theta: level must satisfy n >= 1");
    return cutoff_theta_base(x / n);
}

// ---------------------------------------------------------------------------
// Growth audit machinery.  Derivatives are ℝ-Fréchet; for φ(z) = φ̃(|z|²)z the
// 2×2 real Jacobian has singular values {|φ̃(r) + 2rφ̃′(r)|, |φ̃(r)|}.

namespace {

struct Mat2 {
    // row-major 2×2 real matrix
    double a, b, c, d;
};

double op_norm(const Mat2& m) {
    // largest singular value via the 2×2 closed form
    double q1 = m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d;
    double det = m.a * m.d - m.b * m.c;
    double disc = std::sqrt(std::max(0.0, q1 * q1 - 4.0 * det * det));
    return std::sqrt(0.5 * (q1 + disc));
}

struct ScalarFn {
    double (*val)(double, const CoefficientSpec&);
    double (*der)(double, const CoefficientSpec&);
    double sign;  // m(z) = −g̃² z carries the minus inside val already
};

double m_tilde(double r, const CoefficientSpec& s) {
    double g = g_tilde(r, s);
    return -g * g;
}
double m_tilde_prime(double r, const CoefficientSpec& s) {
    return -2.0 * g_tilde(r, s) * g_tilde_prime(r, s);
}

// Jacobian of z ↦ φ̃(|z|²)z at z, as a real 2×2 matrix.
Mat2 jacobian(cplx z, double (*vt)(double, const CoefficientSpec&),
              double (*dt)(double, const CoefficientSpec&), const CoefficientSpec& spec) {
    double r = std::norm(z);
    double p = vt(r, spec);
    double dp = 2.0 * dt(r, spec);
    double x = z.real(), y = z.imag();
    return Mat2{p + dp * x * x, dp * x * y, dp * x * y, p + dp * y * y};
}

}  // namespace

GrowthReport growth_audit(char fn, const CoefficientSpec& spec, int samples, double radius,
                          std::uint64_t seed) {
    require(radius > 0.0, "growth_audit: radius must be positive");
    require(samples >= 100, "growth_audit: need at least 100 samples");

    double (*vt)(double, const CoefficientSpec&) = nullptr;
    double (*dt)(double, const CoefficientSpec&) = nullptr;
    GrowthReport rep;
    rep.fn = fn;
    switch (fn) {
        case 'f':
            vt = f_tilde;
            dt = f_tilde_prime;
            rep.exponent = spec.declared_beta();
            break;
        case 'g':
            vt = g_tilde;
            dt = g_tilde_prime;
            rep.exponent = spec.declared_a();
            break;
        case 'm':
            vt = m_tilde;
            dt = m_tilde_prime;
            rep.exponent = spec.declared_gamma();
            break;
        default: throw std::invalid_argument("growth_audit: fn must be one of 'f','g','m'");
    }

    auto draw = [&](std::uint32_t i, std::uint32_t sub) {
        double rr = radius * std::sqrt(rng::uniform(seed, rng::kStreamScalarSamples, 7, i, sub));
        double ph = kTwoPi * rng::uniform(seed, rng::kStreamScalarSamples, 7, i, sub + 1);
        return cplx(rr * std::cos(ph), rr * std::sin(ph));
    };

    const double e = rep.exponent;
    // per-shell maxima of the growth ratio, to detect a wrongly declared exponent
    constexpr int kShells = 10;
    std::array<double, kShells> shell_max{};
    double c_growth = 0.0, c_deriv = 0.0, c_lip = 0.0;

    for (int i = 0; i < samples; ++i) {
        cplx y = draw(std::uint32_t(i), 0);
        cplx z = draw(std::uint32_t(i), 2);
        double ay = std::abs(y), az = std::abs(z);

        double ratio = std::abs(vt(std::norm(y), spec)) * ay / (1.0 + std::pow(ay, e));
        c_growth = std::max(c_growth, ratio);
        int shell = std::min(kShells - 1, int(ay / radius * kShells));
        shell_max[shell] = std::max(shell_max[shell], ratio);

        double jn = op_norm(jacobian(y, vt, dt, spec));
        c_deriv = std::max(c_deriv, jn / (1.0 + std::pow(ay, e - 1.0)));

        if (std::abs(y - z) > 1e-9) {
            Mat2 jy = jacobian(y, vt, dt, spec);
            Mat2 jz = jacobian(z, vt, dt, spec);
            Mat2 diff{jy.a - jz.a, jy.b - jz.b, jy.c - jz.c, jy.d - jz.d};
            double denom = (1.0 + std::pow(ay, std::max(0.0, e - 2.0)) +
                            std::pow(az, std::max(0.0, e - 2.0))) *
                           std::abs(y - z);
            c_lip = std::max(c_lip, op_norm(diff) / denom);
        }
    }

    rep.c_growth = c_growth;
    rep.c_deriv = c_deriv;
    rep.c_deriv_lip = c_lip;

    // A correct exponent gives shell maxima that level off; a too-small one
    // keeps climbing toward the boundary.  Flag monotone growth of the last
    // three shells by more than 20% per shell.
    bool climbing = true;
    for (int s = kShells - 3; s < kShells; ++s) {
        if (shell_max[s] <= 0.0 || shell_max[s - 1] <= 0.0 ||
            shell_max[s] < 1.2 * shell_max[s - 1]) {
            climbing = false;
            break;
        }
    }
    rep.violation = climbing;
    if (climbing)
        rep.note = "growth ratio still climbing at the sample boundary; "
                   "declared exponent likely too small";
    return rep;
}

}  // namespace snls
