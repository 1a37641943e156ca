// fft.cpp — iterative decimation-in-time radix-2 FFT, rows then columns.
#include "snls/fft.hpp"

#include <cmath>

namespace snls {

namespace {
int ilog2(int n) {
    int l = 0;
    while ((1 << l) < n) ++l;
    return l;
}
}  // namespace

Fft2D::Fft2D(int n) : n_(n), log2n_(ilog2(n)) {
    require(n >= 2 && (n & (n - 1)) == 0, "Fft2D: size must be a power of two");
    // Twiddles for all stages, concatenated: stage m = 2,4,...,n stores m/2 factors.
    tw_fwd_.reserve(n - 1);
    tw_inv_.reserve(n - 1);
    for (int m = 2; m <= n_; m <<= 1) {
        for (int j = 0; j < m / 2; ++j) {
            double ang = kTwoPi * double(j) / double(m);
            tw_fwd_.push_back(cplx(std::cos(ang), -std::sin(ang)));
            tw_inv_.push_back(cplx(std::cos(ang), std::sin(ang)));
        }
    }
    bitrev_.resize(n_);
    for (int i = 0; i < n_; ++i) {
        std::uint32_t r = 0;
        for (int b = 0; b < log2n_; ++b)
            if (i & (1 << b)) r |= 1u << (log2n_ - 1 - b);
        bitrev_[i] = r;
    }
}

void Fft2D::fft1d(cplx* a, const std::vector<cplx>& tw) const {
    for (int i = 0; i < n_; ++i) {
        std::uint32_t j = bitrev_[i];
        if (std::uint32_t(i) < j) std::swap(a[i], a[j]);
    }
    std::size_t tbase = 0;
    for (int m = 2; m <= n_; m <<= 1) {
        int half = m / 2;
        for (int k = 0; k < n_; k += m) {
            for (int j = 0; j < half; ++j) {
                cplx w = tw[tbase + j];
                cplx t = w * a[k + j + half];
                cplx u = a[k + j];
                a[k + j] = u + t;
                a[k + j + half] = u - t;
            }
        }
        tbase += half;
    }
}

void Fft2D::pass2d(std::vector<cplx>& a, const std::vector<cplx>& tw) const {
    // rows are contiguous
    for (int r = 0; r < n_; ++r) fft1d(a.data() + std::size_t(r) * n_, tw);
    // columns through a gather/scatter scratch
    std::vector<cplx> col(n_);
    for (int c = 0; c < n_; ++c) {
        for (int r = 0; r < n_; ++r) col[r] = a[std::size_t(r) * n_ + c];
        fft1d(col.data(), tw);
        for (int r = 0; r < n_; ++r) a[std::size_t(r) * n_ + c] = col[r];
    }
}

void Fft2D::forward(std::vector<cplx>& a) const {
    require(a.size() == std::size_t(n_) * n_, "Fft2D: field size mismatch");
    pass2d(a, tw_fwd_);
    double scale = 1.0 / (double(n_) * double(n_));
    for (auto& z : a) z *= scale;
}

void Fft2D::inverse(std::vector<cplx>& a) const {
    require(a.size() == std::size_t(n_) * n_, "Fft2D: field size mismatch");
    pass2d(a, tw_inv_);
}

}  // namespace snls
