// studies.hpp — the experiment pipelines behind the CLI commands and the
// acceptance suite: ensemble runs, the Stratonovich bias study, the m-formula
// finite-difference check, pairing residuals, and integrator comparisons.
#pragma once

#include "snls/diagnostics.hpp"
#include "snls/evolution.hpp"

namespace snls {

// Default initial state for simulation studies: a fixed band-limited profile
// with O(1) norms, pinned in closed form so configs reproduce it exactly.
GridFunction default_initial_state(const std::shared_ptr<const TorusGrid>& grid);

// Ensemble of trajectories over independent counter-based paths; results are
// byte-identical for any thread count.
std::vector<RunResult> ensemble_run(const SimConfig& cfg, const GridFunction& u0, int paths,
                                    int threads, bool keep_states = false);

// ---------------------------------------------------------------------------
// Stratonovich correction necessity (single-constant-mode configuration).
//
// With g̃ ≡ 1 the Euler–Maruyama map on a constant field is exactly
// u ← u(1 − ½𝔭dt − iΔW), so mass(T)/mass(0) = Π[(1−½𝔭dt)² + ΔW²].  The
// with-correction statistic |E mass(T)/mass(0) − 1| = O(dt) sits far below
// plain-MC resolution at 256 paths, so its estimator subtracts the
// product-form control variate Π(1 + ΔW² − 𝔭dt), which has unit expectation
// and absorbs the path noise; the estimator stays unbiased and its batch-mean
// SE is reported.  The without-correction statistic is plain MC.
struct BiasReport {
    std::vector<double> dts;
    std::vector<double> stat_with, se_with;
    std::vector<double> stat_without, se_without;
    std::vector<double> closed_form_with;  // (1+¼𝔭²dt²)^{T/dt} − 1, scheme moment
    double fitted_order_with = 0.0;
    double reference_without = 0.0;  // e^{𝔭T} − 1
    int paths = 0;
    double T = 0.0;
};

BiasReport stratonovich_bias_study(int paths, double T, const std::vector<double>& dts,
                                   std::uint64_t seed, int threads = 1);

// ---------------------------------------------------------------------------
// m(z) = ((ig)'(z))(ig(z)) finite-difference verification.
struct MFormulaReport {
    int count = 0;
    double max_fd_error = 0.0;        // |FD − m(z)|, h = 1e−5 central
    double max_identity_error = 0.0;  // |Re⟨m(z),z⟩ + |g(z)|²|
};

MFormulaReport m_formula_check(const CoefficientSpec& spec, int count, double radius, double h,
                               std::uint64_t seed);

// ---------------------------------------------------------------------------
// Energy pairing residual ⟨Ψ′(u), i[Δu − F(u)]⟩ over band-limited states.
struct PairingReport {
    int draws = 0;
    double max_relative_residual = 0.0;  // |residual| / (1 + Ψ(u))
};

PairingReport pairing_drift_study(const std::shared_ptr<const TorusGrid>& grid, int draws,
                                  const CoefficientSpec& spec, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Strong Itô-vs-splitting error at T as dt halves: the L² gap between the two
// integrators on the same refined path, averaged over an ensemble of paths.
struct StrongOrderReport {
    std::vector<double> dts;
    std::vector<double> errors;  // E |u_em(T) − u_split(T)|_{L²}
    double fitted_order = 0.0;
};

StrongOrderReport strong_order_study(const SimConfig& base, const GridFunction& u0,
                                     int halvings, std::uint64_t seed, int paths = 16);

// ---------------------------------------------------------------------------
// Picard vs fine-dt splitting cross-check (deterministic configuration).
struct PicardCrossCheck {
    PicardResult picard;
    double rel_sup_l2_gap = 0.0;  // sup_t |X(t) − u_split(t)|_{L²} / sup_t |u_split|_{L²}
};

PicardCrossCheck picard_vs_splitting(const SimConfig& cfg, const GridFunction& u0,
                                     double fine_dt_factor);

double fit_order(const std::vector<double>& dts, const std::vector<double>& errs);

}  // namespace snls
