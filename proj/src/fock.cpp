#include "ncqm/fock.hpp"

#include <cmath>
#include <sstream>

namespace ncqm::fock {

Ladder build_ladder(const Truncation& tr) {
    CMat b(tr.n);
    for (int n = 1; n < tr.n; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
    return {b, b.dagger()};
}

CMat number_operator(const Truncation& tr) {
    CMat m(tr.n);
    for (int n = 0; n < tr.n; ++n) m(n, n) = static_cast<double>(n);
    return m;
}

CVec coherent_coeffs_raw(cxd z, const Truncation& tr) {
    CVec c(tr.n);
    c[0] = std::exp(-0.5 * std::norm(z));
    for (int n = 0; n + 1 < tr.n; ++n) c[n + 1] = c[n] * z / std::sqrt(static_cast<double>(n + 1));
    return c;
}

double tail_guard_limit(const Truncation& tr) { return tr.n / 4.0; }

CVec coherent_vector(cxd z, const Truncation& tr) {
    if (std::norm(z) > tail_guard_limit(tr)) {
        std::ostringstream os;
        os << "coherent_vector: |z|^2 = " << std::norm(z) << " exceeds N/4 = "
           << tail_guard_limit(tr) << " (state not representable at this truncation)";
        throw DomainError(os.str());
    }
    CVec c = coherent_coeffs_raw(z, tr);
    const double nrm = std::sqrt(vnorm_sq(c));
    kern::active().scale(c.size(), cxd{1.0 / nrm, 0.0}, c.data());
    return c;
}

cxd coherent_overlap(cxd z, cxd w) {
    return std::exp(-0.5 * (std::norm(z) + std::norm(w)) + std::conj(z) * w);
}

} // namespace ncqm::fock
