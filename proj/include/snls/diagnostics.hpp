// diagnostics.hpp — conservation and Lyapunov functionals, derivative-pairing
// identities, Strichartz quotient estimators, Burkholder/Kahane–Khinchin
// ratio checks, and the Gronwall energy envelope.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "snls/coefficients.hpp"
#include "snls/noise.hpp"

namespace snls {

// |u|²_{L²} by cell-weighted sum.
double mass(const GridFunction& u);

struct EnergyRecord {
    double kinetic = 0.0;    // ½|∇u|²_{L²}
    double potential = 0.0;  // ½∫F̃(|u|²)
    double total = 0.0;      // Ψ
    double mass_value = 0.0;
    double time = 0.0;
};

EnergyRecord energy_psi(const GridFunction& u, const CoefficientSpec& spec, double t = 0.0);

// ⟨Ψ′(u), i[Δu − F(u)]⟩; identically zero in the continuum, returned as the
// discrete residual.  Band-limited inputs keep the integration by parts exact.
double pairing_drift(const GridFunction& u, const CoefficientSpec& spec);

// Per noise mode j: ⟨Ψ′(u), i g(u)Λe_j⟩ = ∫ Re(∇u · conj(∇[i g(u)Λe_j])) dx;
// the martingale integrand of the energy Itô formula.
std::vector<double> pairing_noise(const GridFunction& u, const NoiseBasis& basis,
                                  const CoefficientSpec& spec);

// Central finite difference of Ψ along direction v (cross-validation oracle).
double psi_directional_fd(const GridFunction& u, const GridFunction& v,
                          const CoefficientSpec& spec, double h);

struct QuotientReport {
    double T = 0.0;
    double p = 0.0, q = 0.0, s = 0.0;
    int ensemble = 0;
    double max_quotient = 0.0;
    double mean_quotient = 0.0;
    double bootstrap_lo = 0.0;  // bootstrap band for the max statistic
    double bootstrap_hi = 0.0;
    std::vector<double> samples;
    std::string enorm;
};

// Homogeneous quotient ‖U_· v0‖_{L^p(0,T;E)} / ‖v0‖_{H^{s,2}} over an
// ensemble of band-limited draws; one report per horizon in Ts (meshes nest
// so the per-draw quotient is exactly monotone in T).
std::vector<QuotientReport> strichartz_hom(const std::shared_ptr<const TorusGrid>& grid,
                                           int draws, const std::vector<double>& Ts, double dt,
                                           double p, double q, double s, const EnormSpec& enorm,
                                           std::uint64_t seed);

struct InhomReport {
    double lp_quotient_max = 0.0;     // ‖U∗f‖_{L^p(0,T;E)} / |f|_{L¹(0,T;H)}
    double cnorm_quotient_max = 0.0;  // ‖U∗f‖_{C([0,T];H)} / |f|_{L¹(0,T;H)}
    int ensemble = 0;
    double T = 0.0;
};

InhomReport strichartz_inhom(const std::shared_ptr<const TorusGrid>& grid, int draws, double T,
                             double dt, double p, double q, double s, const EnormSpec& enorm,
                             std::uint64_t seed);

struct StochStrichartzReport {
    double lhs = 0.0, lhs_se = 0.0;  // E ∫₀^T |Jξ(t)|^p_E dt
    double rhs = 0.0;                // E(∫₀^T ‖ξ‖²_{R(K,H)} dt)^{p/2} (deterministic ξ)
    double ratio = 0.0, ratio_se = 0.0;
    double maximal_lhs = 0.0, maximal_se = 0.0;  // E sup_t |Jξ(t)|^p_H
    double maximal_ratio = 0.0;
    int paths = 0;
    int J = 0;
    bool degenerate = false;  // ξ = 0
};

// ξ(t) = multiplication by g(U_t v0) composed with Λ; deterministic-in-path
// integrand, so the RHS carries no MC error.  Standard errors via 8 batch
// means.
StochStrichartzReport strichartz_stoch(const NoiseBasis& basis, const GridFunction& v0,
                                       const CoefficientSpec& spec, int paths, double T,
                                       double dt, double p, double s, const EnormSpec& enorm,
                                       std::uint64_t seed);

struct MomentCheck {
    double value = 0.0;
    double se = 0.0;
    double reference = 0.0;  // exact value or bound it is compared against
    std::string what;
};

// E sup_{t≤T} |∫ξ dW|^p_E over E(∫‖ξ‖²)^{p/2}; constants are reported, not
// thresholded (the continuum constants are not numeric).
MomentCheck burkholder_check(const NoiseBasis& basis, const GridFunction& multiplier, int paths,
                             double T, double dt, double p, std::uint64_t seed);

// Two-sided L^p vs L² Gaussian-series norm ratio for the basis embedding.
MomentCheck kahane_khinchin_check(const NoiseBasis& basis, double p, int draws,
                                  std::uint64_t seed);

struct GronwallReport {
    double c_coercivity = 0.0;  // smallest c with |u|²_{H¹} ≤ 2Ψ + c|u|²_{L²} on the ensemble
    double C_fitted = 0.0;      // smallest C with meanΨ+c·mass ≤ [Ψ̄₀+Ctφ(|u₀|₂)]e^{Ct}
    bool fit_failed = false;
    int violations = 0;
    double min_psi_plus_cmass = 0.0;
    std::vector<double> times, mean_curve, envelope;
};

// `ensemble` holds per-path diagnostic rows on a common mesh.
struct PathDiagnostics {
    std::vector<double> t, psi, mass_v, h1;
};

GronwallReport gronwall_envelope(const std::vector<PathDiagnostics>& ensemble,
                                 const CoefficientSpec& spec);

}  // namespace snls
