#include <doctest.h>

#include "ncqm/kernels.hpp"
#include "ncqm/rng.hpp"

#include <vector>

using namespace ncqm;

namespace {

struct BackendGuard {
    kern::Backend saved;
    BackendGuard() : saved(kern::backend()) {}
    ~BackendGuard() { kern::set_backend(saved); }
};

CVec random_vec(GaussianRng& rng, std::size_t n) {
    CVec v(n);
    for (auto& x : v) x = rng.gaussian_complex();
    return v;
}

} // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar reference: dot products against hand-rolled loop") {
    const CVec x{{1.0, 2.0}, {-0.5, 0.25}, {3.0, -1.0}};
    const CVec y{{0.5, -1.0}, {2.0, 2.0}, {-1.0, 0.0}};
    cxd expect_c{0.0, 0.0}, expect_u{0.0, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i) {
        expect_c += std::conj(x[i]) * y[i];
        expect_u += x[i] * y[i];
    }
    const auto& d = kern::detail::scalar_table;
    CHECK(std::abs(d.cdotc(3, x.data(), y.data()) - expect_c) < 1e-15);
    CHECK(std::abs(d.cdotu(3, x.data(), y.data()) - expect_u) < 1e-15);
}

TEST_CASE("avx2 and scalar backends agree") {
    if (!kern::avx2_available()) return; // nothing to compare on this machine
    GaussianRng rng(42);
    const auto& sc = kern::detail::scalar_table;
    const auto& vx = kern::detail::avx2_table;
    // odd sizes exercise the tail paths
    for (std::size_t n : {1u, 2u, 3u, 7u, 64u, 65u, 255u}) {
        const CVec x = random_vec(rng, n);
        const CVec y = random_vec(rng, n);
        const cxd a = rng.gaussian_complex();

        CHECK(std::abs(sc.cdotc(n, x.data(), y.data()) - vx.cdotc(n, x.data(), y.data())) <
              1e-12 * (1.0 + std::abs(sc.cdotc(n, x.data(), y.data()))));
        CHECK(std::abs(sc.cdotu(n, x.data(), y.data()) - vx.cdotu(n, x.data(), y.data())) <
              1e-12 * (1.0 + std::abs(sc.cdotu(n, x.data(), y.data()))));
        CHECK(sc.nrm2sq(n, x.data()) == doctest::Approx(vx.nrm2sq(n, x.data())).epsilon(1e-13));

        CVec y1 = y, y2 = y;
        sc.axpy(n, a, x.data(), y1.data());
        vx.axpy(n, a, x.data(), y2.data());
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) < 1e-13);

        CVec x1 = x, x2 = x;
        sc.scale(n, a, x1.data());
        vx.scale(n, a, x2.data());
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(x1[i] - x2[i]) < 1e-13);
    }
    for (std::size_t n : {2u, 5u, 16u, 33u}) {
        const CVec a = random_vec(rng, n * n);
        const CVec b = random_vec(rng, n * n);
        CVec c1(n * n), c2(n * n);
        sc.matmul(n, a.data(), b.data(), c1.data());
        vx.matmul(n, a.data(), b.data(), c2.data());
        for (std::size_t i = 0; i < n * n; ++i) CHECK(std::abs(c1[i] - c2[i]) < 1e-11);
    }
}

TEST_CASE("runtime backend switch is honored") {
    BackendGuard guard;
    kern::set_backend(kern::Backend::Scalar);
    CHECK(kern::backend_name() == "scalar");
    if (kern::avx2_available()) {
        kern::set_backend(kern::Backend::Avx2);
        CHECK(kern::backend_name() == "avx2");
    }
}

TEST_CASE("matmul matches naive triple loop") {
    GaussianRng rng(7);
    const std::size_t n = 9;
    const CVec a = random_vec(rng, n * n);
    const CVec b = random_vec(rng, n * n);
    CVec c(n * n);
    kern::active().matmul(n, a.data(), b.data(), c.data());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cxd s{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k) s += a[i * n + k] * b[k * n + j];
            CHECK(std::abs(c[i * n + j] - s) < 1e-12);
        }
}

} // TEST_SUITE
