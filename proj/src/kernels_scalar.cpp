// kernels_scalar.cpp — portable reference implementations.
//
// These are the semantics the AVX2 variants are tested against.  Compiled
// without arch-specific flags so the reference stays plain IEEE double.
#include <cmath>

#include "snls/kernels.hpp"

namespace snls::kernels {
namespace {

double s_sum_sq_mod(const cplx* u, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double re = u[i].real(), im = u[i].imag();
        acc += re * re + im * im;
    }
    return acc;
}

double s_sum_pow_mod_even(const cplx* u, std::size_t n, int h) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double re = u[i].real(), im = u[i].imag();
        double m = re * re + im * im;
        double p = m;
        for (int j = 1; j < h; ++j) p *= m;
        acc += p;
    }
    return acc;
}

double s_max_sq_mod(const cplx* u, std::size_t n) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double re = u[i].real(), im = u[i].imag();
        double m = re * re + im * im;
        if (m > best) best = m;
    }
    return best;
}

double s_sum_sq_mod_diff(const cplx* a, const cplx* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double re = a[i].real() - b[i].real();
        double im = a[i].imag() - b[i].imag();
        acc += re * re + im * im;
    }
    return acc;
}

void s_cmul(cplx* u, const cplx* m, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double ur = u[i].real(), ui = u[i].imag();
        double mr = m[i].real(), mi = m[i].imag();
        u[i] = cplx(ur * mr - ui * mi, ur * mi + ui * mr);
    }
}

void s_rmul(cplx* u, const double* m, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) u[i] = cplx(u[i].real() * m[i], u[i].imag() * m[i]);
}

void s_axpy(cplx* y, cplx a, const cplx* x, std::size_t n) {
    double ar = a.real(), ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        double xr = x[i].real(), xi = x[i].imag();
        y[i] = cplx(y[i].real() + ar * xr - ai * xi, y[i].imag() + ar * xi + ai * xr);
    }
}

double s_shift_diff_pow_even(const cplx* u, int n, int sa, int sb, int h) {
    double acc = 0.0;
    for (int a = 0; a < n; ++a) {
        const cplx* row1 = u + std::size_t(a) * n;
        const cplx* row2 = u + std::size_t((a + sa) % n) * n;
        for (int b = 0; b < n; ++b) {
            int b2 = b + sb;
            if (b2 >= n) b2 -= n;
            double re = row2[b2].real() - row1[b].real();
            double im = row2[b2].imag() - row1[b].imag();
            double m = re * re + im * im;
            double p = m;
            for (int j = 1; j < h; ++j) p *= m;
            acc += p;
        }
    }
    return acc;
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops k{s_sum_sq_mod, s_sum_pow_mod_even, s_max_sq_mod, s_sum_sq_mod_diff,
                       s_cmul,       s_rmul,             s_axpy,       s_shift_diff_pow_even};
    return k;
}

}  // namespace snls::kernels
