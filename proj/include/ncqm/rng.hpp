#pragma once

#include "ncqm/cmat.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace ncqm {

// Deterministic Gaussian stream. std::normal_distribution is
// implementation-defined, so Box-Muller is spelled out here to make seeded
// runs byte-reproducible across standard libraries.
class GaussianRng {
  public:
    explicit GaussianRng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {
        // 53-bit mantissa uniform in [0,1)
        return (eng_() >> 11) * 0x1.0p-53;
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    cxd gaussian_complex() {
        const double re = gaussian();
        return {re, gaussian()};
    }

    // Random HS-normalized operator (Frobenius norm 1).
    CMat random_state(int n) {
        CMat m(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = gaussian_complex();
        m *= cxd{1.0 / m.frob_norm(), 0.0};
        return m;
    }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace ncqm
