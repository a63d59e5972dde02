#include "ncqm/overlap.hpp"
#include "ncqm/spectra.hpp"

#include <cmath>

namespace ncqm::overlap {

cxd overlap_zv(const HSOperator& psi, cxd z, cxd v) {
    const Truncation tr(psi.n());
    const CVec u = fock::coherent_coeffs_raw(z, tr);
    const CVec w = fock::coherent_coeffs_raw(z + v, tr);
    const cxd phase = std::exp(0.5 * (std::conj(v) * z - std::conj(z) * v));
    // <z| psi |z+v> = u^dag (psi w)
    const CVec pw = psi.mul_vec(w);
    return phase * vdot(u, pw);
}

Field field_of(const HSOperator& psi) {
    return [psi](cxd z, cxd v) { return overlap_zv(psi, z, v); };
}

namespace {

// one Richardson level on the 2nd-order central difference
cxd central1(const std::function<cxd(double)>& g, double h) {
    const cxd d_h = (g(h) - g(-h)) / (2.0 * h);
    const cxd d_h2 = (g(0.5 * h) - g(-0.5 * h)) / h;
    return (4.0 * d_h2 - d_h) / 3.0;
}

cxd central2(const std::function<cxd(double)>& g, double h) {
    const cxd f0 = g(0.0);
    const cxd d_h = (g(h) - 2.0 * f0 + g(-h)) / (h * h);
    const cxd d_h2 = (g(0.5 * h) - 2.0 * f0 + g(-0.5 * h)) / (0.25 * h * h);
    return (4.0 * d_h2 - d_h) / 3.0;
}

} // namespace

Wirtinger wirtinger_derivs(const Field& f, cxd z, cxd v, const FDStencil& st) {
    const cxd i{0.0, 1.0};
    const double h = st.h;
    const cxd dzr = central1([&](double e) { return f(z + e, v); }, h);
    const cxd dzi = central1([&](double e) { return f(z + i * e, v); }, h);
    const cxd dvr = central1([&](double e) { return f(z, v + e); }, h);
    const cxd dvi = central1([&](double e) { return f(z, v + i * e); }, h);
    Wirtinger w;
    w.f = f(z, v);
    w.fz = 0.5 * (dzr - i * dzi);
    w.fzb = 0.5 * (dzr + i * dzi);
    w.fv = 0.5 * (dvr - i * dvi);
    w.fvb = 0.5 * (dvr + i * dvi);
    return w;
}

cxd d2_dz_dzb(const Field& f, cxd z, cxd v, const FDStencil& st) {
    const cxd i{0.0, 1.0};
    const cxd d2r = central2([&](double e) { return f(z + e, v); }, st.h);
    const cxd d2i = central2([&](double e) { return f(z + i * e, v); }, st.h);
    return 0.25 * (d2r + d2i);
}

DictionaryResiduals ladder_dictionary_check(const HSOperator& psi, cxd z, cxd v,
                                            const FDStencil& st) {
    const Truncation tr(psi.n());
    const auto lad = fock::build_ladder(tr);
    const Field f = field_of(psi);
    const Wirtinger w = wirtinger_derivs(f, z, v, st);

    const cxd lhs_bldag = overlap_zv(lad.b_dag * psi, z, v);
    const cxd lhs_bl = overlap_zv(lad.b * psi, z, v);
    const cxd lhs_br = overlap_zv(psi * lad.b, z, v);
    const cxd lhs_brdag = overlap_zv(psi * lad.b_dag, z, v);

    const cxd rhs_brdag_dv = w.fv + (std::conj(z) + 0.5 * std::conj(v)) * w.f;
    const cxd rhs_brdag_dz = w.fz + std::conj(z) * w.f;

    DictionaryResiduals r;
    r.bldag = std::abs(lhs_bldag - std::conj(z) * w.f);
    r.bl = std::abs(lhs_bl - (w.fzb + (z + v) * w.f));
    r.br = std::abs(lhs_br - (z + v) * w.f);
    r.brdag_dv = std::abs(lhs_brdag - rhs_brdag_dv);
    r.brdag_dz = std::abs(lhs_brdag - rhs_brdag_dz);
    r.brdag_form_gap = std::abs(rhs_brdag_dv - rhs_brdag_dz);
    return r;
}

std::pair<cxd, cxd> constraint_residuals_field(const Field& f, cxd z, cxd v,
                                               const FDStencil& st) {
    const Wirtinger w = wirtinger_derivs(f, z, v, st);
    const cxd r1 = w.fvb + 0.5 * v * w.f;
    const cxd r2 = w.fz - w.fv - 0.5 * std::conj(v) * w.f;
    return {r1, r2};
}

std::pair<cxd, cxd> constraint_residuals(const HSOperator& psi, cxd z, cxd v,
                                         const FDStencil& st) {
    return constraint_residuals_field(field_of(psi), z, v, st);
}

cxd angular_diff_raw(const Field& f, cxd z, cxd v, const FDStencil& st, double hbar) {
    // hbar [ v d_v + z d_v + |v|^2/2 + vbar z/2 - zbar d_zbar ]
    const Wirtinger w = wirtinger_derivs(f, z, v, st);
    return hbar * ((v + z) * w.fv +
                   (0.5 * std::norm(v) + 0.5 * std::conj(v) * z) * w.f -
                   std::conj(z) * w.fzb);
}

cxd angular_diff_hermitian(const Field& f, cxd z, cxd v, const FDStencil& st, double hbar) {
    // hbar [ z d_z - zbar d_zbar + v d_v - vbar d_vbar ]; valid on the
    // constrained physical subspace only.
    const Wirtinger w = wirtinger_derivs(f, z, v, st);
    return hbar * (z * w.fz - std::conj(z) * w.fzb + v * w.fv - std::conj(v) * w.fvb);
}

Field apply_lv_field(const Field& f, const FDStencil& st, double hbar) {
    return [f, st, hbar](cxd z, cxd v) {
        const Wirtinger w = wirtinger_derivs(f, z, v, st);
        return hbar * (v * w.fv - std::conj(v) * w.fvb);
    };
}

double diffop_check(const HSOperator& psi, cxd z, cxd v, DiffOp which,
                    const ModelParams& p, const FDStencil& st) {
    const Truncation tr(psi.n());
    const Field f = field_of(psi);
    switch (which) {
    case DiffOp::FreeH: {
        const cxd lhs = overlap_zv(spectra::free_hamiltonian(p, tr).apply(psi), z, v);
        const double c = p.hbar * p.hbar / (p.mass * p.theta);
        const cxd rhs = -c * d2_dz_dzb(f, z, v, st);
        return std::abs(lhs - rhs);
    }
    case DiffOp::AngularL: {
        const cxd lhs = overlap_zv(spectra::angular_momentum_superop(p, tr).apply(psi), z, v);
        const double r1 = std::abs(lhs - angular_diff_raw(f, z, v, st, p.hbar));
        const double r2 = std::abs(lhs - angular_diff_hermitian(f, z, v, st, p.hbar));
        return std::max(r1, r2);
    }
    case DiffOp::HoH: {
        // raw (non-hermitian) oscillator form:
        //   -(hbar^2/m theta) d2/dz dzbar
        //   + m theta wL^2 zbar (d_zbar + z + v)
        //   + m theta wR^2 (z+v)(d_v + zbar + vbar/2)
        const cxd lhs = overlap_zv(spectra::ho_hamiltonian(p, tr).apply(psi), z, v);
        const Wirtinger w = wirtinger_derivs(f, z, v, st);
        const double c = p.hbar * p.hbar / (p.mass * p.theta);
        const double cl = p.mass * p.theta * p.omega_l * p.omega_l;
        const double cr = p.mass * p.theta * p.omega_r * p.omega_r;
        cxd rhs = -c * d2_dz_dzb(f, z, v, st);
        rhs += cl * std::conj(z) * (w.fzb + (z + v) * w.f);
        rhs += cr * (z + v) * (w.fv + (std::conj(z) + 0.5 * std::conj(v)) * w.f);
        return std::abs(lhs - rhs);
    }
    }
    throw DomainError("diffop_check: unknown operator");
}

} // namespace ncqm::overlap
