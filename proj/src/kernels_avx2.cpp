// kernels_avx2.cpp — AVX2/FMA variants of the inner loops.
//
// Complex fields are interleaved (re, im) pairs, two complex values per
// 256-bit vector.  Reductions accumulate in fixed lane order; the horizontal
// sum happens once at the end, so a given input always produces the same
// result regardless of threading.
#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "snls/kernels.hpp"

namespace snls::kernels {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double v_sum_sq_mod(const cplx* u, std::size_t n) {
    const double* p = reinterpret_cast<const double*>(u);
    std::size_t nd = 2 * n, i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= nd; i += 4) {
        __m256d x = _mm256_loadu_pd(p + i);
        acc = _mm256_fmadd_pd(x, x, acc);
    }
    double s = hsum(acc);
    for (; i < nd; ++i) s += p[i] * p[i];
    return s;
}

// (|z0|², |z0|², |z1|², |z1|²) from an interleaved pair vector.
inline __m256d mod_sq_dup(__m256d x) {
    __m256d sq = _mm256_mul_pd(x, x);
    return _mm256_hadd_pd(sq, sq);
}

double v_sum_pow_mod_even(const cplx* u, std::size_t n, int h) {
    const double* p = reinterpret_cast<const double*>(u);
    std::size_t nd = 2 * n, i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= nd; i += 4) {
        __m256d m = mod_sq_dup(_mm256_loadu_pd(p + i));
        __m256d pw = m;
        for (int j = 1; j < h; ++j) pw = _mm256_mul_pd(pw, m);
        acc = _mm256_add_pd(acc, pw);
    }
    // duplicate lanes hold identical values; halving after the fold is exact
    double s = hsum(acc) * 0.5;
    for (; i < nd; i += 2) {
        double m = p[i] * p[i] + p[i + 1] * p[i + 1];
        double pw = m;
        for (int j = 1; j < h; ++j) pw *= m;
        s += pw;
    }
    return s;
}

double v_max_sq_mod(const cplx* u, std::size_t n) {
    const double* p = reinterpret_cast<const double*>(u);
    std::size_t nd = 2 * n, i = 0;
    __m256d best = _mm256_setzero_pd();
    for (; i + 4 <= nd; i += 4) best = _mm256_max_pd(best, mod_sq_dup(_mm256_loadu_pd(p + i)));
    __m128d lo = _mm256_castpd256_pd128(best);
    __m128d hi = _mm256_extractf128_pd(best, 1);
    lo = _mm_max_pd(lo, hi);
    double s = _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (; i < nd; i += 2) {
        double m = p[i] * p[i] + p[i + 1] * p[i + 1];
        if (m > s) s = m;
    }
    return s;
}

double v_sum_sq_mod_diff(const cplx* a, const cplx* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    std::size_t nd = 2 * n, i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= nd; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double s = hsum(acc);
    for (; i < nd; ++i) {
        double d = pa[i] - pb[i];
        s += d * d;
    }
    return s;
}

void v_cmul(cplx* u, const cplx* m, std::size_t n) {
    double* pu = reinterpret_cast<double*>(u);
    const double* pm = reinterpret_cast<const double*>(m);
    std::size_t nd = 2 * n, i = 0;
    for (; i + 4 <= nd; i += 4) {
        __m256d x = _mm256_loadu_pd(pu + i);
        __m256d y = _mm256_loadu_pd(pm + i);
        __m256d yr = _mm256_movedup_pd(y);              // (yr, yr, ...)
        __m256d yi = _mm256_permute_pd(y, 0xF);         // (yi, yi, ...)
        __m256d xs = _mm256_permute_pd(x, 0x5);         // (xi, xr, ...)
        __m256d res = _mm256_addsub_pd(_mm256_mul_pd(x, yr), _mm256_mul_pd(xs, yi));
        _mm256_storeu_pd(pu + i, res);
    }
    for (; i < nd; i += 2) {
        double ur = pu[i], ui = pu[i + 1], mr = pm[i], mi = pm[i + 1];
        pu[i] = ur * mr - ui * mi;
        pu[i + 1] = ur * mi + ui * mr;
    }
}

void v_rmul(cplx* u, const double* m, std::size_t n) {
    double* pu = reinterpret_cast<double*>(u);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m128d mp = _mm_loadu_pd(m + i);
        __m256d mv = _mm256_permute4x64_pd(_mm256_castpd128_pd256(mp), 0x50);  // (m0,m0,m1,m1)
        __m256d x = _mm256_loadu_pd(pu + 2 * i);
        _mm256_storeu_pd(pu + 2 * i, _mm256_mul_pd(x, mv));
    }
    for (; i < n; ++i) {
        pu[2 * i] *= m[i];
        pu[2 * i + 1] *= m[i];
    }
}

void v_axpy(cplx* y, cplx a, const cplx* x, std::size_t n) {
    double* py = reinterpret_cast<double*>(y);
    const double* px = reinterpret_cast<const double*>(x);
    __m256d ar = _mm256_set1_pd(a.real());
    __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t nd = 2 * n, i = 0;
    for (; i + 4 <= nd; i += 4) {
        __m256d xv = _mm256_loadu_pd(px + i);
        __m256d xs = _mm256_permute_pd(xv, 0x5);
        __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(xv, ar), _mm256_mul_pd(xs, ai));
        _mm256_storeu_pd(py + i, _mm256_add_pd(_mm256_loadu_pd(py + i), prod));
    }
    for (; i < nd; i += 2) {
        double xr = px[i], xi = px[i + 1];
        py[i] += a.real() * xr - a.imag() * xi;
        py[i + 1] += a.real() * xi + a.imag() * xr;
    }
}

inline double seg_diff_pow(const cplx* a, const cplx* b, std::size_t len, int h) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    std::size_t nd = 2 * len, i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= nd; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(pb + i), _mm256_loadu_pd(pa + i));
        __m256d m = mod_sq_dup(d);
        __m256d pw = m;
        for (int j = 1; j < h; ++j) pw = _mm256_mul_pd(pw, m);
        acc = _mm256_add_pd(acc, pw);
    }
    double s = hsum(acc) * 0.5;
    for (; i < nd; i += 2) {
        double re = pb[i] - pa[i], im = pb[i + 1] - pa[i + 1];
        double m = re * re + im * im;
        double pw = m;
        for (int j = 1; j < h; ++j) pw *= m;
        s += pw;
    }
    return s;
}

double v_shift_diff_pow_even(const cplx* u, int n, int sa, int sb, int h) {
    double acc = 0.0;
    for (int a = 0; a < n; ++a) {
        const cplx* row1 = u + std::size_t(a) * n;
        const cplx* row2 = u + std::size_t((a + sa) % n) * n;
        // column wrap splits the row into two contiguous segments
        acc += seg_diff_pow(row1, row2 + sb, std::size_t(n - sb), h);
        if (sb > 0) acc += seg_diff_pow(row1 + (n - sb), row2, std::size_t(sb), h);
    }
    return acc;
}

}  // namespace

const Ops& avx2_ops() {
    static const Ops k{v_sum_sq_mod, v_sum_pow_mod_even, v_max_sq_mod, v_sum_sq_mod_diff,
                       v_cmul,       v_rmul,             v_axpy,       v_shift_diff_pow_even};
    return k;
}

}  // namespace snls::kernels

#endif  // x86_64
