#pragma once

#include "ncqm/errors.hpp"
#include "ncqm/qspace.hpp"

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace ncqm::classical {

using qspace::ModelParams;
using cxd = std::complex<double>;

// Real polynomial V(zbar, z) = sum c_{ab} z^a zbar^b with the hermiticity
// constraint c_{ab} = conj(c_{ba}). Partial derivatives are exact coefficient
// shifts. The caller supplies the already-normal-ordered classical symbol;
// for a normal-ordered monomial (b^dag)^p b^q the coherent expectation is
// zbar^p z^q, so theta-dependent corrections live in the coefficients.
class PolynomialPotential {
  public:
    PolynomialPotential() = default;

    // adds c * z^a zbar^b together with its hermitian partner when a != b
    PolynomialPotential& add_term(int a, int b, cxd c);
    static PolynomialPotential from_normal_ordered(int bdag_pow, int b_pow, cxd coeff);
    static PolynomialPotential harmonic(double c);        // c |z|^2
    static PolynomialPotential quartic(double c);         // c |z|^4
    static PolynomialPotential anisotropic(double c, double b); // c|z|^2 + b(z^2 + zbar^2)

    void validate() const; // throws DomainError if not hermitian

    double value(cxd z) const;
    cxd d_z(cxd z) const;
    cxd d_zb(cxd z) const;
    cxd d_zz(cxd z) const;

    bool empty() const { return terms_.empty(); }
    const std::map<std::pair<int, int>, cxd>& terms() const { return terms_; }

  private:
    cxd eval_shifted(cxd z, int da, int db, bool second_a) const;
    std::map<std::pair<int, int>, cxd> terms_;
};

struct ClassicalState {
    double t = 0.0;
    cxd z{0.0, 0.0};
    cxd v{0.0, 0.0};
};

// vdot = (i/hbar) V_zbar,  zdot = (i hbar / m theta) v - vdot
std::pair<cxd, cxd> eom_rhs(const ClassicalState& s, const PolynomialPotential& V,
                            const ModelParams& p);

// Residuals of the four first-order equations of motion at a state.
std::array<cxd, 4> eom_residuals(const ClassicalState& s, const PolynomialPotential& V,
                                 const ModelParams& p);

struct Sample {
    double t;
    cxd z, v;
    double i_energy;  // accumulated nonlocal-energy correction
    double i_angular; // accumulated i int (z V_z - c.c.) dt (real)
};

struct Trajectory {
    std::vector<Sample> samples;
    double dt = 0.0;
};

// Classic explicit RK4; the two time primitives ride along as extra
// quadrature variables integrated with the same stages. Throws StepSizeError
// if the local-energy jump across a step exceeds 1e-8 (relative).
Trajectory integrate(const ClassicalState& s0, const PolynomialPotential& V,
                     const ModelParams& p, double t_end, double dt);

// E = (hbar^2 / m theta) |v|^2 + V(zbar, z)
double energy_local(const ClassicalState& s, const PolynomialPotential& V,
                    const ModelParams& p);

// Expanded form (m/2)|zdot_dim|^2 + V - m theta |vdot|^2 + i hbar (v vbardot - vdot vbar)
double energy_local_expanded(const ClassicalState& s, const PolynomialPotential& V,
                             const ModelParams& p);

// E_nl(t) = m theta |zdot|^2 + V + I(t); the correction accumulates
// i T (conj(zdot^2 V_zz) - zdot^2 V_zz), the orientation fixed by demanding
// conservation along the equations of motion.
std::vector<double> energy_nonlocal(const Trajectory& traj, const PolynomialPotential& V,
                                    const ModelParams& p);

// Angular momentum series -i m theta (zbar zdot - z zbardot) - i int(z V_z - c.c.)
// - T (V - z V_z - zbar V_zbar); constant for rotationally invariant V (where
// the integral term vanishes identically), generically drifting otherwise.
std::vector<double> angular_momentum_general(const Trajectory& traj,
                                             const PolynomialPotential& V,
                                             const ModelParams& p);

struct RadialPotential {
    std::function<double(double)> value;  // V(rho), dimensionful rho
    std::function<double(double)> deriv;  // V'(rho)
};

struct PolarInvariants {
    double energy;
    double angular_momentum;
};

// Rotationally invariant form, dimensionful polar coordinates:
//   L = m rho^2 phidot - T (V - rho V'),
//   E = (1/2) m rhodot^2 + V + (L + T V)^2 / (2 m rho^2).
PolarInvariants invariants_polar(double rho, double rho_dot, double phi_dot,
                                 const RadialPotential& V, const ModelParams& p);

struct PolarSample {
    double rho, rho_dot, phi_dot;
};
PolarSample to_polar(const ClassicalState& s, const PolynomialPotential& V,
                     const ModelParams& p);

// Max |zddot + (1/ m theta) V_zbar + vddot| along the trajectory with the
// second derivatives taken by central differences (the Eq.-of-motion
// redundancy check in second-order form).
double second_order_residual(const Trajectory& traj, const PolynomialPotential& V,
                             const ModelParams& p);

// CSV columns: t, Re z, Im z, Re v, Im v, E_local, E_nonlocal, L
void write_trajectory_csv(const Trajectory& traj, const PolynomialPotential& V,
                          const ModelParams& p, const std::string& path);

} // namespace ncqm::classical
