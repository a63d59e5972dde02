#include "ncqm/kernels.hpp"
#include "ncqm/errors.hpp"

#include <cstdlib>
#include <cstring>

namespace ncqm::kern {

namespace {

Backend g_backend = Backend::Scalar;
const Dispatch* g_active = &detail::scalar_table;

bool cpu_has_avx2() {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

struct Init {
    Init() {
        Backend want = cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
        if (const char* env = std::getenv("NCQM_KERNEL")) {
            if (std::strcmp(env, "scalar") == 0) want = Backend::Scalar;
            else if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) want = Backend::Avx2;
        }
        g_backend = want;
        g_active = (want == Backend::Avx2) ? &detail::avx2_table : &detail::scalar_table;
    }
};
const Init g_init;

} // namespace

bool avx2_available() { return cpu_has_avx2(); }

const Dispatch& active() { return *g_active; }

Backend backend() { return g_backend; }

std::string_view backend_name() {
    return g_backend == Backend::Avx2 ? "avx2" : "scalar";
}

void set_backend(Backend b) {
    if (b == Backend::Avx2 && !cpu_has_avx2())
        throw DomainError("kern::set_backend: AVX2 not available on this CPU");
    g_backend = b;
    g_active = (b == Backend::Avx2) ? &detail::avx2_table : &detail::scalar_table;
}

} // namespace ncqm::kern
