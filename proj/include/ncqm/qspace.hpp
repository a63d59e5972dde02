#pragma once

#include "ncqm/cmat.hpp"
#include "ncqm/errors.hpp"
#include "ncqm/fock.hpp"

#include <memory>
#include <vector>

namespace ncqm::qspace {

using fock::Truncation;

// A state psi(x^,y^) in the quantum Hilbert space is an N x N matrix; the
// inner product is tr(phi^dagger psi).
using HSOperator = CMat;

struct ModelParams {
    double mass = 1.0;
    double hbar = 1.0;
    double theta = 1.0;   // length^2
    double omega_l = 0.0; // left oscillator frequency
    double omega_r = 0.0; // right oscillator frequency

    ModelParams() = default;
    ModelParams(double m, double hb, double th, double wl = 0.0, double wr = 0.0)
        : mass(m), hbar(hb), theta(th), omega_l(wl), omega_r(wr) {
        if (mass <= 0 || hbar <= 0 || theta <= 0)
            throw DomainError("ModelParams: m, hbar, theta must be positive");
        if (omega_l < 0 || omega_r < 0)
            throw DomainError("ModelParams: omega_L, omega_R must be >= 0");
    }

    double time_scale() const { return mass * theta / hbar; } // T = m theta / hbar
};

cxd hs_inner(const HSOperator& phi, const HSOperator& psi);

// Linear combination of products of left/right multiplications, kept in
// factored form. Application is O(terms * factors * N^3); the N^2 x N^2 dense
// matrix is materialized only for small-N oracles.
class SuperOp {
  public:
    struct Factor {
        bool left;
        std::shared_ptr<const CMat> m;
    };
    struct Term {
        cxd coeff;
        std::vector<Factor> factors; // applied back-to-front: psi' = f0(f1(...(psi)))
    };

    SuperOp() = default;

    static SuperOp identity();
    static SuperOp left(CMat m);
    static SuperOp right(CMat m);

    SuperOp& operator+=(const SuperOp& o);
    SuperOp& operator-=(const SuperOp& o);
    SuperOp& operator*=(cxd s);
    friend SuperOp operator+(SuperOp a, const SuperOp& b) { return a += b; }
    friend SuperOp operator-(SuperOp a, const SuperOp& b) { return a -= b; }
    friend SuperOp operator*(cxd s, SuperOp a) { return a *= s; }

    // composition: (a * b)(psi) = a(b(psi))
    friend SuperOp operator*(const SuperOp& a, const SuperOp& b);

    HSOperator apply(const HSOperator& psi) const;

    // ddagger-adjoint w.r.t. hs_inner: Left(A) -> Left(A^dag), Right(C) ->
    // Right(C^dag), factor order reversed within each term.
    SuperOp adjoint() const;

    // Dense N^2 x N^2 materialization; coordinate of |i><j| is i*N+j.
    CMat dense(const Truncation& tr) const;

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

  private:
    std::vector<Term> terms_;
};

// Schroedinger-type representation on the quantum Hilbert space:
//   X psi = x^ psi,  Y psi = y^ psi (left multiplication)
//   Px psi = (hbar/theta)[y^, psi],  Py psi = -(hbar/theta)[x^, psi]
//   P = Px + i Py = -i hbar sqrt(2/theta) [b, .]
//   B_L/B_R: left/right multiplication by b, similarly the daggers.
struct OperatorBundle {
    SuperOp X, Y, Px, Py;
    SuperOp B_L, B_Ldag, B_R, B_Rdag;
    SuperOp P, Pdag;
    CMat b, b_dag; // underlying truncated ladder matrices
};

OperatorBundle position_momentum_ops(const ModelParams& p, const Truncation& tr);

inline HSOperator apply(const SuperOp& op, const HSOperator& psi) { return op.apply(psi); }

} // namespace ncqm::qspace
