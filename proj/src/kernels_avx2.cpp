#include "ncqm/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

// Compiled with -mavx2 -mfma; only dispatched to when CPUID reports support.
// Complex doubles are interleaved (re,im), two per 256-bit lane pair.

namespace ncqm::kern {
namespace {

inline double hsum256(__m256d v) {
    __m256d t = _mm256_add_pd(v, _mm256_permute2f128_pd(v, v, 1));
    t = _mm256_add_pd(t, _mm256_permute_pd(t, 0x5));
    return _mm256_cvtsd_f64(t);
}

cxd cdotc_avx2(std::size_t n, const cxd* x, const cxd* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    const __m256d imsign = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        // re: xr*yr + xi*yi elementwise, summed later
        acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
        // im: xr*yi - xi*yr == sign-mask applied to swap(x)*y
        __m256d xs = _mm256_permute_pd(xv, 0x5); // [xi, xr, ...]
        acc_im = _mm256_fmadd_pd(_mm256_mul_pd(xs, yv), imsign, acc_im);
    }
    double re = hsum256(acc_re), im = hsum256(acc_im);
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

cxd cdotu_avx2(std::size_t n, const cxd* x, const cxd* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    const __m256d resign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        // re: xr*yr - xi*yi
        acc_re = _mm256_fmadd_pd(_mm256_mul_pd(xv, yv), resign, acc_re);
        // im: xr*yi + xi*yr
        __m256d xs = _mm256_permute_pd(xv, 0x5);
        acc_im = _mm256_fmadd_pd(xs, yv, acc_im);
    }
    double re = hsum256(acc_re), im = hsum256(acc_im);
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr - xi * yi;
        im += xr * yi + xi * yr;
    }
    return {re, im};
}

void axpy_avx2(std::size_t n, cxd a, const cxd* x, cxd* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        __m256d xs = _mm256_permute_pd(xv, 0x5);
        // (ar*xr - ai*xi, ar*xi + ai*xr)
        __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
        __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(yv, prod));
    }
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += cxd{a.real() * xr - a.imag() * xi, a.real() * xi + a.imag() * xr};
    }
}

void scale_avx2(std::size_t n, cxd a, cxd* x) {
    double* xp = reinterpret_cast<double*>(x);
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        __m256d xs = _mm256_permute_pd(xv, 0x5);
        _mm256_storeu_pd(xp + 2 * i, _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs)));
    }
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        x[i] = cxd{a.real() * xr - a.imag() * xi, a.real() * xi + a.imag() * xr};
    }
}

double nrm2sq_avx2(std::size_t n, const cxd* x) {
    const double* xp = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        acc = _mm256_fmadd_pd(xv, xv, acc);
    }
    double s = hsum256(acc);
    for (; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

void matmul_avx2(std::size_t n, const cxd* a, const cxd* b, cxd* c) {
    for (std::size_t i = 0; i < n * n; ++i) c[i] = cxd{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        cxd* crow = c + i * n;
        for (std::size_t k = 0; k < n; ++k) {
            const cxd aik = a[i * n + k];
            if (aik == cxd{0.0, 0.0}) continue;
            axpy_avx2(n, aik, b + k * n, crow);
        }
    }
}

} // namespace

namespace detail {
const Dispatch avx2_table = {
    cdotc_avx2, cdotu_avx2, axpy_avx2, scale_avx2, nrm2sq_avx2, matmul_avx2,
};
}

} // namespace ncqm::kern

#else

namespace ncqm::kern::detail {
const Dispatch avx2_table = scalar_table;
}

#endif
