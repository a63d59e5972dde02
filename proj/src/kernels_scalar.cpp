#include "ncqm/kernels.hpp"

namespace ncqm::kern {
namespace {

cxd cdotc_scalar(std::size_t n, const cxd* x, const cxd* y) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

cxd cdotu_scalar(std::size_t n, const cxd* x, const cxd* y) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr - xi * yi;
        im += xr * yi + xi * yr;
    }
    return {re, im};
}

void axpy_scalar(std::size_t n, cxd a, const cxd* x, cxd* y) {
    const double ar = a.real(), ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += cxd{ar * xr - ai * xi, ar * xi + ai * xr};
    }
}

void scale_scalar(std::size_t n, cxd a, cxd* x) {
    const double ar = a.real(), ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        x[i] = cxd{ar * xr - ai * xi, ar * xi + ai * xr};
    }
}

double nrm2sq_scalar(std::size_t n, const cxd* x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

// k-outer-product ordering: C[i,:] accumulates A[i,k] * B[k,:]. Keeps the
// inner loop a contiguous axpy.
void matmul_scalar(std::size_t n, const cxd* a, const cxd* b, cxd* c) {
    for (std::size_t i = 0; i < n * n; ++i) c[i] = cxd{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        cxd* crow = c + i * n;
        for (std::size_t k = 0; k < n; ++k) {
            const cxd aik = a[i * n + k];
            if (aik == cxd{0.0, 0.0}) continue;
            axpy_scalar(n, aik, b + k * n, crow);
        }
    }
}

} // namespace

namespace detail {
const Dispatch scalar_table = {
    cdotc_scalar, cdotu_scalar, axpy_scalar, scale_scalar, nrm2sq_scalar, matmul_scalar,
};
}

} // namespace ncqm::kern
