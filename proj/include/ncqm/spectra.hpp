#pragma once

#include "ncqm/qspace.hpp"

#include <vector>

namespace ncqm::spectra {

using fock::Truncation;
using qspace::HSOperator;
using qspace::ModelParams;
using qspace::SuperOp;

// ---- angular momentum ----

// L = hbar (B_R B_R^dd - B_L^dd B_L): psi -> hbar (psi b^dag b - b^dag b psi)
SuperOp angular_momentum_superop(const ModelParams& p, const Truncation& tr);

// The composite form X_L P_y - Y_L P_x + (theta/2 hbar) P P^dd built from the
// position/momentum bundle; agrees with the ladder form away from the
// truncation edge.
SuperOp angular_momentum_composite(const ModelParams& p, const Truncation& tr);

struct AngularState {
    int l;                   // eigenvalue hbar*l, l >= 0
    CVec alpha;              // coefficients of sum_n alpha_n |n><n+l|, normalized
};

AngularState make_angular_state(int l, CVec alpha);
HSOperator angular_state_matrix(const AngularState& s, const Truncation& tr);

struct SeriesResult {
    cxd value;
    double truncation_tail; // magnitude estimate of dropped terms
    bool tail_warning;      // tail > 1e-10
};

// Closed-form overlap (z,v|l) as the explicit series
//   e^{(vbar z - zbar v)/2} e^{-(|z|^2+|z+v|^2)/2}
//     sum_n alpha_n [zbar(z+v)]^n/n! (z+v)^l sqrt(n!/(n+l)!)
SeriesResult angular_overlap_closed(cxd z, cxd v, const AngularState& s);

// ---- free particle ----

// H_free = P^dd P / 2m = -(hbar^2/m theta)(B_L^dd - B_R^dd)(B_R - B_L)
SuperOp free_hamiltonian(const ModelParams& p, const Truncation& tr);

struct MomentumLabel {
    cxd k;
};

// psi_k = sqrt(theta/2 pi hbar^2) e^{-theta|k|^2/4 hbar^2}
//         e^{(i/hbar) sqrt(theta/2) k b^dag} e^{(i/hbar) sqrt(theta/2) kbar b}
// Delta-normalized in k (the paper's prefactor is kept verbatim), not
// HS-normalized.
HSOperator momentum_state(const MomentumLabel& k, const ModelParams& p, const Truncation& tr);

// Closed-form overlap (z,v|psi_k).
cxd momentum_overlap_closed(const MomentumLabel& k, cxd z, cxd v, const ModelParams& p);

// P(z,v) for psi_k, eq-literal normalization (|overlap|^2, a density in k):
//   (theta/2 pi hbar^2) e^{-theta|k|^2/2 hbar^2}
//     e^{(i/hbar) sqrt(theta/2)(kbar v - vbar k)} e^{-|v|^2}
double free_pzv_closed(const MomentumLabel& k, cxd z, cxd v, const ModelParams& p);

// ---- generalized harmonic oscillator ----

struct BogoliubovData {
    double phi;    // rotation parameter, phi = -arctanh(Gamma)
    double gamma_; // Gamma, |Gamma| < 1
    double k1, k2; // mode energies
    double alpha, beta, gamma_coef; // coefficients of the B-form Hamiltonian
};

// H = alpha B_L^dd B_L + beta B_R^dd B_R - gamma (B_L^dd B_R + B_R^dd B_L)
//     - m theta omega_R^2
SuperOp ho_hamiltonian(const ModelParams& p, const Truncation& tr);

BogoliubovData bogoliubov(const ModelParams& p);

// E_{n1,n2} = n1 K1 + (n2+1) K2 - m theta omega_R^2
double ho_spectrum(int n1, int n2, const BogoliubovData& bog, const ModelParams& p);

// psi_0 = sqrt(1-Gamma^2) sum_n Gamma^n |n><n|, renormalized after truncation.
HSOperator ho_ground_state(const BogoliubovData& bog, const Truncation& tr);

// Normalized (A_1^dd)^{n1} (A_2)^{n2} psi_0 with
//   A_1 = cosh(phi) B_L + sinh(phi) B_R,  A_2 = sinh(phi) B_L + cosh(phi) B_R.
HSOperator ho_excited(int n1, int n2, const BogoliubovData& bog, const ModelParams& p,
                      const Truncation& tr);

// Closed-form ground overlap (z,v|psi_0) and distribution
//   P(z,v) = (1-Gamma^2) e^{-|v|^2} e^{-2(1-Gamma)|z|^2} e^{-(1-Gamma)(zbar v + vbar z)}
cxd ho_ground_overlap_closed(cxd z, cxd v, double gamma);
double ho_ground_pzv_closed(cxd z, cxd v, double gamma);

// ---- eigenvalue oracles ----

// Lowest `count` eigenvalues of the dense N^2 x N^2 materialization of the
// oscillator superoperator, evaluated on the block where every matrix element
// agrees with the untruncated algebra (built one level larger and compressed
// back, which removes the spurious corner modes of the raw product form).
// Capped at N <= 32.
std::vector<double> ho_dense_eigenvalues(const ModelParams& p, const Truncation& tr, int count);

// Same spectrum through the conserved-angular-momentum block decomposition:
// sector l is a real tridiagonal matrix. Cheap at any N; independent of the
// kron route.
std::vector<double> ho_sector_eigenvalues(const ModelParams& p, const Truncation& tr, int count);

// Measured angular momentum <psi|L|psi> of an excited state (the quantum
// number is not asserted by formula; it is measured).
double ho_excited_l_measured(int n1, int n2, const BogoliubovData& bog, const ModelParams& p,
                             const Truncation& tr);

} // namespace ncqm::spectra
