#pragma once

#include "ncqm/overlap.hpp"
#include "ncqm/qspace.hpp"
#include "ncqm/quadrature.hpp"

namespace ncqm::states {

using fock::Truncation;
using qspace::HSOperator;
using qspace::ModelParams;
using qspace::SuperOp;
using quad::QuadratureGrid;

struct PointZ {
    cxd z;
};

struct PointZV {
    cxd z;
    cxd v;
};

void check_guard(const PointZ& pt, const Truncation& tr);   // |z|^2 <= N/4
void check_guard(const PointZV& pt, const Truncation& tr);  // |z|^2 + |z+v|^2 <= N/2

// |z) = |z><z|
HSOperator state_z(const PointZ& pt, const Truncation& tr);

// |z,v) = e^{(zbar v - vbar z)/2} |z><z+v|; reduces to state_z at v = 0.
HSOperator state_zv(const PointZV& pt, const Truncation& tr);

// Translation as displacement conjugation, psi -> D(z) psi D(z)^dag, applied
// through scaling-and-squaring + Taylor on the factored commutator generator
//   G = z (B_L^dd - B_R^dd) - zbar (B_L - B_R).
// Closed forms are used for production states; this exists for the N <= 32
// cross-check against the dense superoperator exponential.
HSOperator translate_apply(cxd z, const HSOperator& psi, const Truncation& tr);

// Same exponential through the dense N^2 x N^2 matrix (oracle route).
HSOperator translate_apply_dense(cxd z, const HSOperator& psi, const Truncation& tr);

// P(z,v) = (1/pi^2) |(z,v|psi)|^2
double povm_prob_zv(const HSOperator& psi, const PointZV& pt);

struct MarginalResult {
    double value;        // P(z) = int (dv dvbar/pi) P(z,v)
    double tail_estimate;
    bool tail_warning;   // estimated quadrature tail beyond 1e-8
};

// v-integral of P(z,v) by Gauss-Hermite quadrature in the shifted variable
// w = z + v, which centres the rule on the Gaussian forced by the
// constraints. Exact for coefficients with index < order.
MarginalResult marginal_prob_z(const HSOperator& psi, const PointZ& pt,
                               const QuadratureGrid& gh);

// Same quantity by materializing pi_z = int (dv dvbar/pi) pi_{z,v} node by
// node as an operator and taking (psi| pi_z |psi). Dual-method oracle for
// marginal_prob_z.
double marginal_prob_z_operator_route(const HSOperator& psi, const PointZ& pt,
                                      const QuadratureGrid& gh);

// Star-product (nonlocal) evaluation: partial sums of
//   (1/pi^2) sum_n (1/n!) dzbar^n (psi|z) dz^n (z|psi)
// with exact Wirtinger derivatives on the polynomial-times-Gaussian form.
// Cross-check only; order 6 by default.
double marginal_prob_z_star_series(const HSOperator& psi, const PointZ& pt, int order);

// Dimensionful densities: values such that integrating against dx dy
// (resp. dx dy d2v) gives total probability 1.
double to_dimensionful_pz(double pz_dimensionless, const ModelParams& p);
double to_dimensionful_pzv(double pzv_dimensionless, const ModelParams& p);

struct IdentityCheckConfig {
    int n_check;           // matrix-unit indices 0..n_check
    QuadratureGrid z_grid; // uniform disc
    int gh_order;          // v-rule order per axis

    static IdentityCheckConfig for_truncation(const Truncation& tr);
};

// Max over matrix-unit pairs (|i><j|, |k><l|), i,j,k,l <= n_check, of the
// deviation of the quadrature of int (dz dzbar/pi)(dv dvbar/pi)|z,v)(z,v|
// from the Kronecker expectation.
double identity_resolution_check(const Truncation& tr, const IdentityCheckConfig& cfg);

struct UncertaintyXY {
    double dx, dy;
};

// Delta_X, Delta_Y on a normalized state.
UncertaintyXY uncertainty_xy(const HSOperator& psi, const ModelParams& p, const Truncation& tr);

// int d2z d2v P(z,v) over a product grid (uniform disc in z, Gauss-Hermite in
// the shifted v variable); ~1 for normalized states inside the truncation.
double total_probability(const HSOperator& psi, const QuadratureGrid& z_grid, int gh_order);

} // namespace ncqm::states
