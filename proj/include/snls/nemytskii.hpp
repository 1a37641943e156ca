// nemytskii.hpp — composition operators F(γ) = f∘γ on grid functions and
// empirical verification of the growth, Lipschitz and algebra inequalities
// with their stated constants.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "snls/norms.hpp"

namespace snls {

using ScalarMap = std::function<cplx(cplx)>;

// F(γ) = f∘γ, pointwise at every node.
GridFunction nemytskii_apply(const ScalarMap& fn, const GridFunction& gamma);

// Empirical sup-quotients over the disc of radius R:
//   j = 1: sup |f(y)−f(x)| / |y−x|
//   j = 2: sup |f′(y)−f′(x)| / |y−x|  (ℝ-Fréchet derivative, FD Jacobian)
// Sampled lower bound on the true sup; tightens with the sample count.
double estimate_K(const ScalarMap& fn, double R, int j, int samples, std::uint64_t seed);

struct KSet {
    double K1 = 0.0;
    double K2 = 0.0;
    std::string source = "sampled";  // or "analytic"
};

// Closed-form constants for the cubic f(z) = |z|²z: K1 = 3R², K2 = 6R.
KSet cubic_analytic_K(double R);

struct AuditRecord {
    std::string inequality;  // "growth-bound", "lipschitz-lq", "lipschitz-seminorm", "algebra"
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // rhs − lhs; negative = violation
    double K1 = 0.0;
    double K2 = 0.0;
    std::string k_source;
    std::uint64_t seed = 0;
    // lipschitz-seminorm only: fraction of the ½⦀γ−σ⦀ cross-term the lhs actually uses
    double half_term_utilization = 0.0;
};

// ‖F(γ)‖_{θ,q} ≤ |f(0)| vol(M) + K₁(f,|γ|_∞) ‖γ‖_{θ,q}
// (θ = 1 replaces K₁ with the derivative bound K̃₁, here estimated the same way).
AuditRecord audit_growth(const ScalarMap& fn, const GridFunction& gamma, double theta, double q,
                         std::optional<double> K1_override = std::nullopt,
                         std::uint64_t seed = 0);

// lipschitz-lq:  |F(γ)−F(σ)|_q ≤ K₁(f,R) |γ−σ|_q,            R = |γ|_∞ ∨ |σ|_∞
// lipschitz-seminorm:  ⦀F(γ)−F(σ)⦀ ≤ K₂(f,R)|γ−σ|_∞ [⦀σ⦀ + ½⦀γ−σ⦀] + K₁(f,R)⦀γ−σ⦀
std::pair<AuditRecord, AuditRecord> audit_lipschitz(const ScalarMap& fn, const GridFunction& gamma,
                                                    const GridFunction& sigma, double theta,
                                                    double q,
                                                    std::optional<KSet> K_override = std::nullopt,
                                                    std::uint64_t seed = 0);

// ⦀σγ⦀ ≤ ‖σγ‖_{θ,q} ≤ |σ|_∞‖γ‖_{θ,q} + |γ|_∞‖σ‖_{θ,q}; the middle inequality
// is pointwise-derived and holds in the discrete sums with zero tolerance.
AuditRecord audit_algebra(const GridFunction& sigma, const GridFunction& gamma, double theta,
                          double q);

}  // namespace snls
