#pragma once

#include "ncqm/fock.hpp"
#include "ncqm/qspace.hpp"

#include <array>
#include <functional>

namespace ncqm::overlap {

using fock::Truncation;
using qspace::HSOperator;
using qspace::ModelParams;
using qspace::SuperOp;

// (z,v|psi) = e^{(vbar z - zbar v)/2} <z|psi|z+v>
cxd overlap_zv(const HSOperator& psi, cxd z, cxd v);

// Central differences, 2nd order, with one Richardson level (O(h^4)).
struct FDStencil {
    double h = 1e-3;
};

// A scalar field of (z, v), for finite differencing. Constraint checks accept
// arbitrary fields so that non-physical negative controls can be fed in.
using Field = std::function<cxd(cxd z, cxd v)>;

Field field_of(const HSOperator& psi);

struct Wirtinger {
    cxd f;        // field value
    cxd fz, fzb;  // d/dz, d/dzbar
    cxd fv, fvb;  // d/dv, d/dvbar
};

Wirtinger wirtinger_derivs(const Field& f, cxd z, cxd v, const FDStencil& st);

// d^2/dz dzbar = (1/4)(d^2/dRe z^2 + d^2/dIm z^2)
cxd d2_dz_dzb(const Field& f, cxd z, cxd v, const FDStencil& st);

// Residuals of the ladder -> differential-operator dictionary, one per line:
//   B_L^dd  <->  zbar .
//   B_L     <->  (d_zbar + z + v)
//   B_R     <->  (z + v) .
//   B_R^dd  <->  (d_v + zbar + vbar/2)   and equivalently   (d_z + zbar)
struct DictionaryResiduals {
    double bldag;
    double bl;
    double br;
    double brdag_dv;
    double brdag_dz;
    double brdag_form_gap; // |(d_v + zbar + vbar/2)f - (d_z + zbar)f|
};

DictionaryResiduals ladder_dictionary_check(const HSOperator& psi, cxd z, cxd v,
                                            const FDStencil& st);

// r1 = (d_vbar + v/2) f,  r2 = (d_z - d_v - vbar/2) f. Zero (to FD accuracy)
// exactly on overlaps of genuine states; that is the physical subspace.
std::pair<cxd, cxd> constraint_residuals(const HSOperator& psi, cxd z, cxd v,
                                         const FDStencil& st);
std::pair<cxd, cxd> constraint_residuals_field(const Field& f, cxd z, cxd v,
                                               const FDStencil& st);

enum class DiffOp { FreeH, AngularL, HoH };

// |differential form applied to (z,v|psi)  -  (z,v|Op psi)| where Op is the
// corresponding superoperator. For AngularL both the raw ladder-derived form
// and the hermitian (orbital + intrinsic) form are evaluated; the returned
// residual is the worse of the two.
double diffop_check(const HSOperator& psi, cxd z, cxd v, DiffOp which,
                    const ModelParams& p, const FDStencil& st);

// The two angular momentum differential forms individually (physical fields
// only for the hermitian one).
cxd angular_diff_raw(const Field& f, cxd z, cxd v, const FDStencil& st, double hbar);
cxd angular_diff_hermitian(const Field& f, cxd z, cxd v, const FDStencil& st, double hbar);

// Intrinsic part alone, hbar(v d_v - vbar d_vbar); does NOT preserve the
// physical subspace -- used as a negative control.
Field apply_lv_field(const Field& f, const FDStencil& st, double hbar);

} // namespace ncqm::overlap
