#include "ncqm/cmat.hpp"

#include <cmath>

namespace ncqm {

double CMat::sqrt_(double v) { return std::sqrt(v); }

double CMat::frob_norm() const { return std::sqrt(frob_norm_sq()); }

CMat outer(const CVec& u, const CVec& w) {
    if (u.size() != w.size()) throw DimensionMismatch("outer: size mismatch");
    const int n = static_cast<int>(u.size());
    CMat m(n);
    for (int i = 0; i < n; ++i) {
        const cxd ui = u[i];
        for (int j = 0; j < n; ++j) m(i, j) = ui * std::conj(w[j]);
    }
    return m;
}

} // namespace ncqm
