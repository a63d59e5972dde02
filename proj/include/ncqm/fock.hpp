#pragma once

#include "ncqm/cmat.hpp"
#include "ncqm/errors.hpp"

namespace ncqm::fock {

// Dimension of the retained number basis |0>..|N-1>.
struct Truncation {
    int n;
    explicit Truncation(int n_) : n(n_) {
        if (n < 2) throw DomainError("Truncation: N must be >= 2");
    }
};

struct Ladder {
    CMat b;     // b|n> = sqrt(n)|n-1>
    CMat b_dag; // conjugate transpose of b
};

Ladder build_ladder(const Truncation& tr);

// b^dagger b  (diagonal 0..N-1)
CMat number_operator(const Truncation& tr);

// Truncated coherent coefficients c_n = e^{-|z|^2/2} z^n / sqrt(n!), computed
// by the running recurrence c_{n+1} = c_n z / sqrt(n+1). No guard, no
// renormalization: the first N entries are exact for any z, which is what the
// wide-grid quadratures need.
CVec coherent_coeffs_raw(cxd z, const Truncation& tr);

// Guarded (|z|^2 <= N/4) and renormalized to unit norm after truncation.
CVec coherent_vector(cxd z, const Truncation& tr);

// Closed-form overlap <z|w> of exact (untruncated) coherent states.
cxd coherent_overlap(cxd z, cxd w);

double tail_guard_limit(const Truncation& tr); // N/4

} // namespace ncqm::fock
