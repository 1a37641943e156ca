// fft.hpp — radix-2 complex FFT on the n×n periodic grid.
//
// Hand-rolled rather than wrapped: grids here are tiny (n ≤ 256) and the
// project promises bit-reproducible artifacts, so the transform has to be a
// fixed arithmetic circuit with no planner heuristics.
//
// Convention: forward() maps point values to Fourier coefficients with the
// 1/n² normalization folded in, i.e. u(x) = Σ_k û_k e^{ik·x} and a single
// mode e^{ik·x} has û_k = 1.
#pragma once

#include <memory>
#include <vector>

#include "snls/common.hpp"

namespace snls {

class Fft2D {
  public:
    explicit Fft2D(int n);

    void forward(std::vector<cplx>& a) const;  // values → coefficients
    void inverse(std::vector<cplx>& a) const;  // coefficients → values

    int size() const { return n_; }

  private:
    void fft1d(cplx* a, const std::vector<cplx>& tw) const;
    void pass2d(std::vector<cplx>& a, const std::vector<cplx>& tw) const;

    int n_;
    int log2n_;
    std::vector<cplx> tw_fwd_, tw_inv_;  // stage twiddles, e^{∓2πi j/m}
    std::vector<std::uint32_t> bitrev_;
};

}  // namespace snls
