// norms.hpp — the function-space norms: L^q, fractional Sobolev H^{s,2},
// Besov–Slobodetskii seminorm and W^{θ,q} norm, the R-norm (W ∩ L^∞), and
// the trajectory norm on Y_{[0,T]}.
#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "snls/torus.hpp"

namespace snls {

inline constexpr double kQInf = std::numeric_limits<double>::infinity();

// (cell_area Σ|u|^q)^{1/q}; q = ∞ gives the max modulus.
double lq_norm(const GridFunction& u, double q);
double linf_norm(const GridFunction& u);

// L² norm of (1−Δ)^{s/2} u, evaluated spectrally.  Realizes H^{s,2}(M); the
// Bessel weight (1+|k|²)^{s/2} keeps the zero mode invertible (norm
// equivalence, not an identity, with the |k|^s form).
double sobolev_norm(const GridFunction& u, double s);

// Discrete Besov–Slobodetskii seminorm: double Riemann sum over off-diagonal
// node pairs of |u(x₂)−u(x₁)|^q / d(x₁,x₂)^{2+θq}, cell_area² weight.
// O(n⁴); grids above n = 64 are rejected.
double slobodetskii_seminorm(const GridFunction& u, double theta, double q);

// ⦀u⦀_{1,q} = (∫|∇u|^q)^{1/q}, the θ = 1 seminorm.
double gradient_lq_seminorm(const GridFunction& u, double q);

// Full W^{θ,q} norm = L^q norm + seminorm (θ = 1 uses the gradient seminorm).
double w_norm(const GridFunction& u, double theta, double q);

// R-norm = W^{θ,q} norm + L^∞ norm.
double r_norm(const GridFunction& u, double theta, double q);

// ‖(1−Δ)^{ŝ/2} u‖_{L^q}, the any-n surrogate for the W^{ŝ,q} norm
// (H^{ŝ,q} ⊂ W^{ŝ,q} for q > 2, so it is a conservative upper-norm proxy).
double bessel_lq_norm(const GridFunction& u, double shat, double q);

// Spatial norm used inside trajectory functionals; selectable realization.
struct EnormSpec {
    enum class Kind { bessel_proxy, slobodetskii };
    Kind kind = Kind::bessel_proxy;
    double shat = 0.75;
    double q = 4.0;

    double eval(const GridFunction& u) const {
        return kind == Kind::bessel_proxy ? bessel_lq_norm(u, shat, q) : w_norm(u, shat, q);
    }
    std::string name() const {
        return kind == Kind::bessel_proxy ? "bessel_proxy" : "slobodetskii";
    }
};

// Time-indexed sequence of states on a uniform mesh t_i = t0 + i·dt.
struct Trajectory {
    std::vector<double> times;
    std::vector<GridFunction> states;

    double dt() const {
        require(times.size() >= 2, "Trajectory: need at least two mesh points");
        return times[1] - times[0];
    }
    void check() const;
};

// |u|_Y = (sup_t |u(t)|_{H^{s,2}}^p + Σ_t Δt E(u(t))^p)^{1/p}, left-endpoint
// quadrature; nondecreasing under trajectory extension.
double y_norm(const Trajectory& tr, double p, double s, const EnormSpec& enorm);

// Same norm on the prefix [t_0, t_m]; used by the cutoff monitors.
double y_norm_prefix(const Trajectory& tr, int m, double p, double s, const EnormSpec& enorm);

// One-stop norm table for a state.
struct NormReport {
    std::map<double, double> lq;                                // q → value
    std::map<double, double> sobolev;                           // s → value
    std::map<std::pair<double, double>, std::pair<double, double>> slobodetskii;
    // (θ,q) → (seminorm, full norm)
    double linf = 0.0;
    double r_value = 0.0;  // W^{θ,q} + L^∞ at the report's leading (θ,q)
};

NormReport norm_report(const GridFunction& u, const std::vector<double>& qs,
                       const std::vector<double>& sobolev_orders,
                       const std::vector<std::pair<double, double>>& theta_q);

}  // namespace snls
