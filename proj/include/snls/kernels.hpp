// kernels.hpp — data-parallel inner loops with scalar reference and AVX2
// variants, selected at runtime.
//
// Both variants are deterministic for a fixed input; the AVX2 reductions use
// a fixed lane order, so results do not depend on thread count.  Scalar and
// SIMD paths are equivalence-tested against each other in tests/.
#pragma once

#include <cstddef>

#include "snls/common.hpp"

namespace snls::kernels {

enum class Backend { scalar, avx2 };

struct Ops {
    // Σ |z_i|²
    double (*sum_sq_mod)(const cplx*, std::size_t);
    // Σ (|z_i|²)^h  for integer h ≥ 1 (even L^q powers, q = 2h)
    double (*sum_pow_mod_even)(const cplx*, std::size_t, int);
    // max |z_i|²
    double (*max_sq_mod)(const cplx*, std::size_t);
    // Σ |a_i − b_i|²
    double (*sum_sq_mod_diff)(const cplx*, const cplx*, std::size_t);
    // u_i *= m_i (complex multiplier)
    void (*cmul)(cplx*, const cplx*, std::size_t);
    // u_i *= m_i (real multiplier)
    void (*rmul)(cplx*, const double*, std::size_t);
    // y_i += a x_i
    void (*axpy)(cplx*, cplx, const cplx*, std::size_t);
    // Σ_x (|u(x+s) − u(x)|²)^h over the n×n torus, shift s = (sa, sb),
    // row-major storage; the inner loop of the Slobodetskii double sum.
    double (*shift_diff_pow_even)(const cplx*, int, int, int, int);
};

const Ops& ops();
Backend active();
void select(Backend b);  // throws if the backend is unavailable on this CPU
bool avx2_available();
const Ops& scalar_ops();  // always available, for equivalence tests

}  // namespace snls::kernels
