// coefficients.hpp — the scalar coefficient functions of the equation:
// nonlinearity f(z) = f̃(|z|²)z, diffusion amplitude g(z) = g̃(|z|²)z, the
// Stratonovich correction m(z) = −g̃(|z|²)²z, the antiderivative F̃, the
// cutoff θ_n, and growth-condition auditors.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "snls/common.hpp"

namespace snls {

enum class FCase { none, defocusing_poly, defocusing_power, focusing_power };
enum class GCase { none, constant, log_saturating };

struct CoefficientSpec {
    FCase f_case = FCase::defocusing_poly;
    std::vector<double> poly = {0.0, 1.0};  // a_0..a_N; default cubic f̃(r) = r
    double f_C = 1.0;                       // power cases
    double f_sigma = 0.5;

    GCase g_case = GCase::log_saturating;
    double g_value = 1.0;  // constant case amplitude
    double g_C = 1.0;      // log-saturating constant

    // declared growth orders; 0 = derive the default from the case
    double beta = 0.0;
    double a = 0.0;
    double gamma = 0.0;

    void validate() const;
    double declared_beta() const;
    double declared_a() const;
    double declared_gamma() const;

    static CoefficientSpec defocusing_cubic(GCase g = GCase::log_saturating);
    static CoefficientSpec focusing_sqrt(GCase g = GCase::log_saturating);
    static CoefficientSpec free_field();  // f = g = 0
};

double f_tilde(double r, const CoefficientSpec& spec);
double f_tilde_prime(double r, const CoefficientSpec& spec);
double g_tilde(double r, const CoefficientSpec& spec);
double g_tilde_prime(double r, const CoefficientSpec& spec);

cplx f_eval(cplx z, const CoefficientSpec& spec);
cplx g_eval(cplx z, const CoefficientSpec& spec);
// m(z) = ((ig)'(z))(ig(z)) = −g̃(|z|²)² z; satisfies Re⟨m(z), z⟩ = −|g(z)|².
cplx m_eval(cplx z, const CoefficientSpec& spec);

// F̃ with F̃(0) = 0, exact closed form per case.
double antiderivative_F(double r, const CoefficientSpec& spec);

// Cutoff θ_n(x) = θ(x/n).  θ is the C¹ eased ramp: 1 on [0,1], 0 on [2,∞),
// slope −1/(1−e) on the middle with quadratic corner eases of width e = 0.05.
// The exact plateaus force the interior slope below −1; the implemented
// Lipschitz constant is kCutoffLip = 1/(1−e).
inline constexpr double kCutoffEase = 0.05;
inline constexpr double kCutoffLip = 1.0 / (1.0 - kCutoffEase);

double cutoff_theta_base(double x);
double cutoff_theta_base_deriv(double x);
double cutoff_theta(double x, double n);

// Empirical growth-condition audit at the declared exponents.
struct GrowthReport {
    char fn = 'f';
    double exponent = 0.0;   // β, a or γ
    double c_growth = 0.0;   // smallest C with |φ(y)| ≤ C(1+|y|^e)
    double c_deriv = 0.0;    // |φ'(y)| ≤ C(1+|y|^{e−1})
    double c_deriv_lip = 0.0;  // |φ'(y)−φ'(z)| ≤ C(1+|y|^{e−2}+|z|^{e−2})|y−z|
    bool violation = false;  // ratio still climbing at the sample boundary
    std::string note;
};

GrowthReport growth_audit(char fn, const CoefficientSpec& spec, int samples, double radius,
                          std::uint64_t seed);

}  // namespace snls
