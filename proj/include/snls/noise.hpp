// noise.hpp — truncated cylindrical Wiener process: weighted real Fourier
// modes Λe_j with summable smooth-norm decay, the trace fields 𝔭 and 𝔮,
// Brownian increment tables, and the stochastic convolution.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "snls/norms.hpp"

namespace snls {

struct NoiseMode {
    int k1 = 0, k2 = 0;
    bool is_sin = false;  // false: cos(k·x) (or the constant for k = 0)
    double weight = 1.0;  // c_j = (1+|k|²)^{−ρ/2}
};

struct SummabilityReport {
    double series_value = 0.0;  // Σ_j ‖Λe_j‖²_{H^{1,2s₀} ∩ W^{ŝ,q}} over the truncation
    double rho = 0.0;
    bool summable = false;  // infinite-series criterion: ρ > 2
};

struct NoiseBasis {
    std::shared_ptr<const TorusGrid> grid;
    double rho = 4.0;
    double s0 = 1.5, shat = 0.75, q = 4.0;  // declared smoothness budget
    std::vector<NoiseMode> modes;
    std::vector<GridFunction> fields;  // Λe_j as grid functions
    GridFunction p_field;              // 𝔭(x) = Σ_j (Λe_j)²
    GridFunction q_field;              // 𝔮(x) = Σ_j |∇Λe_j|²
    SummabilityReport summability;

    int J() const { return int(fields.size()); }
};

// Modes are {1, cos(k·x), sin(k·x)} over half-plane representatives, ordered
// by (|k|², k1, k2); weights (1+|k|²)^{−ρ/2}.  ρ ≤ 2 builds the basis but
// flags it non-summable.
NoiseBasis build_basis(const std::shared_ptr<const TorusGrid>& grid, int J, double rho,
                       double s0 = 1.5, double shat = 0.75, double q = 4.0);

// Recompute (𝔭, 𝔮) from the stored mode fields; identical code path to the
// cached fields, so the results match bit-exactly.
std::pair<GridFunction, GridFunction> trace_fields(const NoiseBasis& basis);

struct BrownianPath {
    double dt = 0.0;
    int steps = 0;
    int modes = 0;
    std::uint64_t seed = 0;
    std::uint32_t path_id = 0;
    std::vector<double> increments;  // row-major steps × modes

    double inc(int step, int j) const { return increments[std::size_t(step) * modes + j]; }
};

BrownianPath sample_path(int modes, double dt, int steps, std::uint64_t seed,
                         std::uint32_t path_id = 0);

// Sum consecutive increments: a path on the mesh coarsened by `factor`.
BrownianPath coarsen_path(const BrownianPath& p, int factor);

// ΔW(t_i, x) = Σ_j ΔW_j(t_i) Λe_j(x); real-valued field.
GridFunction noise_field(const BrownianPath& path, int step, const NoiseBasis& basis);

// Binary table (all little-endian): header u64 seed, f64 dt, u64 steps,
// u64 modes; payload row-major f64 increments.
void write_path(const BrownianPath& p, const std::string& file);
BrownianPath read_path(const std::string& file);

// ‖ξ‖²_{R(K,H)} = Σ_j ‖φ·Λe_j‖²_H for the multiplication operator ξ = φ·Λ;
// H = H^{sobolev_s,2} (sobolev_s = 0 gives L²).
double rkhs_norm_sq(const GridFunction& multiplier, const NoiseBasis& basis, double sobolev_s);

// [J ξ](t_m) = Σ_{r<m} U_{t_m − t_r} [φ(t_r)·ΔW(r)] with the Itô left-point
// convention.  `integrand` holds the multiplier fields φ(t_r); pass an empty
// vector for φ ≡ 1.
GridFunction stochastic_convolution(const std::vector<GridFunction>& integrand,
                                    const BrownianPath& path, const NoiseBasis& basis,
                                    int t_index);

// Band-limited Gaussian field: unit-variance complex coefficients on modes
// with |k|_∞ ≤ kmax; the workhorse random test function.
GridFunction random_band_limited(const std::shared_ptr<const TorusGrid>& grid, int kmax,
                                 std::uint64_t seed, std::uint32_t draw, double coeff_std = 1.0);

}  // namespace snls
