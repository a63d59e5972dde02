#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

// Data-parallel complex arithmetic kernels. Every routine exists as a scalar
// reference implementation and (on x86-64 with AVX2+FMA) a vectorized variant;
// the active backend is chosen once at startup from CPUID and can be forced
// with set_backend() or the NCQM_KERNEL environment variable (scalar|avx2).
// The two backends are equivalence-tested against each other.

namespace ncqm::kern {

using cxd = std::complex<double>;

enum class Backend { Scalar, Avx2 };

struct Dispatch {
    // acc += sum_i conj(x_i) * y_i
    cxd (*cdotc)(std::size_t n, const cxd* x, const cxd* y);
    // acc += sum_i x_i * y_i
    cxd (*cdotu)(std::size_t n, const cxd* x, const cxd* y);
    // y_i += a * x_i
    void (*axpy)(std::size_t n, cxd a, const cxd* x, cxd* y);
    // x_i *= a
    void (*scale)(std::size_t n, cxd a, cxd* x);
    // sum_i |x_i|^2
    double (*nrm2sq)(std::size_t n, const cxd* x);
    // row-major square matmul: C = A * B, C distinct from A and B
    void (*matmul)(std::size_t n, const cxd* a, const cxd* b, cxd* c);
};

const Dispatch& active();
Backend backend();
std::string_view backend_name();
bool avx2_available();

// Force a backend (throws DomainError if unavailable). Used by the
// equivalence tests and the NCQM_KERNEL override.
void set_backend(Backend b);

namespace detail {
extern const Dispatch scalar_table;
extern const Dispatch avx2_table; // valid only if avx2_available()
}

} // namespace ncqm::kern
