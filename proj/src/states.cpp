#include "ncqm/states.hpp"

#include <cmath>
#include <sstream>

namespace ncqm::states {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void check_guard(const PointZ& pt, const Truncation& tr) {
    if (std::norm(pt.z) > tr.n / 4.0)
        throw DomainError("PointZ: |z|^2 exceeds N/4 tail guard");
}

void check_guard(const PointZV& pt, const Truncation& tr) {
    if (std::norm(pt.z) + std::norm(pt.z + pt.v) > tr.n / 2.0)
        throw DomainError("PointZV: |z|^2 + |z+v|^2 exceeds N/2 tail guard");
}

HSOperator state_z(const PointZ& pt, const Truncation& tr) {
    check_guard(pt, tr);
    const CVec u = fock::coherent_vector(pt.z, tr);
    return outer(u, u);
}

HSOperator state_zv(const PointZV& pt, const Truncation& tr) {
    check_guard(pt, tr);
    const CVec u = fock::coherent_vector(pt.z, tr);
    const CVec w = fock::coherent_vector(pt.z + pt.v, tr);
    HSOperator m = outer(u, w);
    m *= std::exp(0.5 * (std::conj(pt.z) * pt.v - std::conj(pt.v) * pt.z));
    return m;
}

namespace {

// ||G||_1-ish bound for the commutator generator: 2(|z|) * ||b|| + h.c.
double generator_norm_bound(cxd z, const Truncation& tr) {
    return 4.0 * std::abs(z) * std::sqrt(static_cast<double>(tr.n));
}

} // namespace

HSOperator translate_apply(cxd z, const HSOperator& psi, const Truncation& tr) {
    if (tr.n > 32)
        throw DomainError("translate_apply: superoperator exponential capped at N = 32");
    const auto lad = fock::build_ladder(tr);
    SuperOp gen = z * (SuperOp::left(lad.b_dag) - SuperOp::right(lad.b_dag)) -
                  std::conj(z) * (SuperOp::left(lad.b) - SuperOp::right(lad.b));
    // scaling and squaring with a Taylor kernel
    int s = 0;
    double bound = generator_norm_bound(z, tr);
    while (bound > 0.5) {
        bound *= 0.5;
        ++s;
    }
    const cxd scale{std::pow(0.5, s), 0.0};
    gen *= scale;
    auto exp_apply = [&](HSOperator x) {
        HSOperator acc = x;
        for (int k = 1; k <= 24; ++k) {
            x = gen.apply(x);
            x *= cxd{1.0 / k, 0.0};
            acc += x;
            if (x.frob_norm() < 1e-18 * acc.frob_norm()) break;
        }
        return acc;
    };
    // exp(G) = (exp(G/2^s))^{2^s}
    HSOperator out = psi;
    const long reps = 1L << s;
    for (long j = 0; j < reps; ++j) out = exp_apply(out);
    return out;
}

HSOperator translate_apply_dense(cxd z, const HSOperator& psi, const Truncation& tr) {
    if (tr.n > 32)
        throw DomainError("translate_apply_dense: dense exponential capped at N = 32");
    const auto lad = fock::build_ladder(tr);
    SuperOp gen = z * (SuperOp::left(lad.b_dag) - SuperOp::right(lad.b_dag)) -
                  std::conj(z) * (SuperOp::left(lad.b) - SuperOp::right(lad.b));
    const CMat g = gen.dense(tr);
    const int nn = tr.n * tr.n;
    CVec x(nn);
    for (int i = 0; i < tr.n; ++i)
        for (int j = 0; j < tr.n; ++j) x[i * tr.n + j] = psi(i, j);
    int s = 0;
    double bound = generator_norm_bound(z, tr);
    while (bound > 0.5) {
        bound *= 0.5;
        ++s;
    }
    const double sc = std::pow(0.5, s);
    auto exp_vec = [&](CVec y) {
        CVec acc = y;
        for (int k = 1; k <= 24; ++k) {
            y = g.mul_vec(y);
            kern::active().scale(y.size(), cxd{sc / k, 0.0}, y.data());
            kern::active().axpy(acc.size(), cxd{1.0, 0.0}, y.data(), acc.data());
            if (std::sqrt(vnorm_sq(y)) < 1e-18 * std::sqrt(vnorm_sq(acc))) break;
        }
        return acc;
    };
    const long reps = 1L << s;
    for (long j = 0; j < reps; ++j) x = exp_vec(x);
    HSOperator out(tr.n);
    for (int i = 0; i < tr.n; ++i)
        for (int j = 0; j < tr.n; ++j) out(i, j) = x[i * tr.n + j];
    return out;
}

double povm_prob_zv(const HSOperator& psi, const PointZV& pt) {
    const cxd ov = overlap::overlap_zv(psi, pt.z, pt.v);
    return std::norm(ov) / (kPi * kPi);
}

namespace {

// coefficients a_j = (u(z)^dag psi)_j of the row the v-integral sees
CVec row_coeffs(const HSOperator& psi, cxd z) {
    const Truncation tr(psi.n());
    const CVec u = fock::coherent_coeffs_raw(z, tr);
    return psi.left_mul_conj(u);
}

} // namespace

MarginalResult marginal_prob_z(const HSOperator& psi, const PointZ& pt,
                               const QuadratureGrid& gh) {
    if (gh.scheme != quad::Scheme::GaussHermite)
        throw DomainError("marginal_prob_z: v-integration requires a Gauss-Hermite grid");
    const Truncation tr(psi.n());
    const CVec a = row_coeffs(psi, pt.z);
    const quad::Rule1D rule = gh.axis_rule();
    const int q = gh.order;

    // sum over w = z+v nodes of (wt/pi) |sum_j a_j w^j/sqrt(j!)|^2; the
    // e^{-|w|^2} in |c_j(w)|^2 is the Gauss-Hermite weight.
    double s = 0.0;
    CVec mono(tr.n);
    for (int ix = 0; ix < q; ++ix) {
        for (int iy = 0; iy < q; ++iy) {
            const cxd w{rule.nodes[ix], rule.nodes[iy]};
            mono[0] = cxd{1.0, 0.0};
            for (int n = 0; n + 1 < tr.n; ++n)
                mono[n + 1] = mono[n] * w / std::sqrt(static_cast<double>(n + 1));
            const cxd val = kern::active().cdotu(mono.size(), a.data(), mono.data());
            s += rule.weights[ix] * rule.weights[iy] * std::norm(val);
        }
    }
    MarginalResult r;
    r.value = s / (kPi * kPi * kPi);
    // the rule is exact for coefficient indices < order; estimate what sits above
    double tail_mass = 0.0;
    for (int j = q; j < tr.n; ++j) tail_mass += std::norm(a[j]);
    const double total = vnorm_sq(a);
    r.tail_estimate = (2.0 * std::sqrt(tail_mass * total) + tail_mass) / (kPi * kPi);
    r.tail_warning = r.tail_estimate > 1e-8;
    return r;
}

double marginal_prob_z_operator_route(const HSOperator& psi, const PointZ& pt,
                                      const QuadratureGrid& gh) {
    const Truncation tr(psi.n());
    const quad::Rule1D rule = gh.axis_rule();
    const int q = gh.order;
    // pi_z psi = sum_nodes (wt/pi) pi_{z,v} psi with pi_{z,v} psi =
    // (1/pi^2) |z,v)(z,v|psi); nodes taken in w = z+v. The coherent factors
    // e^{-|.|^2/2} are split between weight and state so the Gauss-Hermite
    // weight absorbs e^{-|w|^2} exactly.
    const CVec u = fock::coherent_coeffs_raw(pt.z, tr);
    HSOperator acc(tr.n);
    CVec mono(tr.n);
    for (int ix = 0; ix < q; ++ix) {
        for (int iy = 0; iy < q; ++iy) {
            const cxd w{rule.nodes[ix], rule.nodes[iy]};
            const cxd v = w - pt.z;
            mono[0] = cxd{1.0, 0.0};
            for (int n = 0; n + 1 < tr.n; ++n)
                mono[n + 1] = mono[n] * w / std::sqrt(static_cast<double>(n + 1));
            // (z,v|psi) with the w-Gaussian pulled out: phase* u^dag psi mono
            const cxd phase = std::exp(0.5 * (std::conj(v) * pt.z - std::conj(pt.z) * v));
            const CVec pm = psi.mul_vec(mono);
            const cxd ov = phase * vdot(u, pm);
            // |z,v) with the same factor pulled out: phase^* ... outer(u, mono)
            const cxd coeff = std::conj(phase) * ov * rule.weights[ix] * rule.weights[iy] /
                              (kPi * kPi * kPi);
            // accumulate coeff * u * mono^dagger
            for (int r = 0; r < tr.n; ++r) {
                const cxd cu = coeff * u[r];
                for (int c = 0; c < tr.n; ++c) acc(r, c) += cu * std::conj(mono[c]);
            }
        }
    }
    return qspace::hs_inner(psi, acc).real();
}

double marginal_prob_z_star_series(const HSOperator& psi, const PointZ& pt, int order) {
    const int n = psi.n();
    const int dim = n + order + 1;
    // (z|psi) = e^{-z zbar} Q(z, zbar), Q[a][b] coeff of z^a zbar^b
    std::vector<cxd> q(static_cast<std::size_t>(dim) * dim, cxd{0.0, 0.0});
    auto at = [&](std::vector<cxd>& m, int a, int b) -> cxd& {
        return m[static_cast<std::size_t>(a) * dim + b];
    };
    double logfact = 0.0;
    std::vector<double> inv_sqrt_fact(n);
    for (int i = 0; i < n; ++i) {
        if (i > 0) logfact += std::log(static_cast<double>(i));
        inv_sqrt_fact[i] = std::exp(-0.5 * logfact);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            at(q, j, i) += psi(i, j) * inv_sqrt_fact[i] * inv_sqrt_fact[j];

    // d/dz of P(z,zbar) e^{-z zbar}: coefficient shift plus -zbar P
    auto dz = [&](const std::vector<cxd>& m) {
        std::vector<cxd> out(m.size(), cxd{0.0, 0.0});
        for (int a = 1; a < dim; ++a)
            for (int b = 0; b < dim; ++b)
                out[static_cast<std::size_t>(a - 1) * dim + b] +=
                    static_cast<double>(a) * m[static_cast<std::size_t>(a) * dim + b];
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b + 1 < dim; ++b)
                out[static_cast<std::size_t>(a) * dim + b + 1] -=
                    m[static_cast<std::size_t>(a) * dim + b];
        return out;
    };
    auto eval = [&](const std::vector<cxd>& m) {
        const cxd z = pt.z, zb = std::conj(pt.z);
        std::vector<cxd> zp(dim), zbp(dim);
        zp[0] = zbp[0] = cxd{1.0, 0.0};
        for (int a = 1; a < dim; ++a) {
            zp[a] = zp[a - 1] * z;
            zbp[a] = zbp[a - 1] * zb;
        }
        cxd val{0.0, 0.0};
        for (int a = 0; a < dim; ++a) {
            cxd row{0.0, 0.0};
            for (int b = 0; b < dim; ++b) row += m[static_cast<std::size_t>(a) * dim + b] * zbp[b];
            val += zp[a] * row;
        }
        return val * std::exp(-std::norm(pt.z));
    };

    // (psi|z) = conj((z|psi)) pointwise, so dzbar^n (psi|z) = conj(dz^n (z|psi)).
    cxd total{0.0, 0.0};
    std::vector<cxd> cur = q;
    double fact = 1.0;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) {
            fact *= k;
            cur = dz(cur);
        }
        const cxd fn = eval(cur);
        total += std::conj(fn) * fn / fact;
    }
    return total.real() / (kPi * kPi);
}

double to_dimensionful_pz(double pz, const ModelParams& p) {
    // P(z) integrates to 1 against pi d2z; dx dy = 2 theta d2z
    return pz * kPi / (2.0 * p.theta);
}

double to_dimensionful_pzv(double pzv, const ModelParams& p) {
    // P(z,v) integrates to 1 against d2z d2v
    return pzv / (2.0 * p.theta);
}

IdentityCheckConfig IdentityCheckConfig::for_truncation(const Truncation& tr) {
    IdentityCheckConfig cfg;
    cfg.n_check = std::max(1, tr.n / 8);
    cfg.gh_order = 40;
    // disc radius: push the coherent-monomial tail below 1e-9 for the largest
    // index sum, on the 0.25 lattice
    double r = std::sqrt(tr.n) / 2.0;
    while (quad::radial_tail(2 * cfg.n_check, r) > 1e-9) r += 0.25;
    cfg.z_grid = QuadratureGrid::uniform_disc(r, 0.25);
    return cfg;
}

double identity_resolution_check(const Truncation& tr, const IdentityCheckConfig& cfg) {
    const int m = cfg.n_check + 1;
    if (cfg.n_check > tr.n / 8)
        throw DomainError("identity_resolution_check: n_check above N/8");

    // For matrix units the product-measure quadrature factorizes exactly:
    //   S_{(ij),(kl)} = A_ik B_jl,
    //   A_ik = int (d2z/pi) c_i(z) conj(c_k(z)),
    //   B_jl = int (d2w/pi) conj(c_j(w)) c_l(w),  w = z + v.
    // Raw (non-renormalized) coherent coefficients keep the integrand exact
    // far outside the state guards.
    std::vector<cxd> A(static_cast<std::size_t>(m) * m, cxd{0.0, 0.0});
    std::vector<cxd> B(static_cast<std::size_t>(m) * m, cxd{0.0, 0.0});

    const quad::Rule1D zr = cfg.z_grid.axis_rule();
    const double rad2 = cfg.z_grid.extent * cfg.z_grid.extent;
    std::vector<cxd> mono(m);
    for (std::size_t ix = 0; ix < zr.nodes.size(); ++ix) {
        for (std::size_t iy = 0; iy < zr.nodes.size(); ++iy) {
            const double x = zr.nodes[ix], y = zr.nodes[iy];
            if (x * x + y * y > rad2) continue;
            const cxd z{x, y};
            const double wq = zr.weights[ix] * zr.weights[iy] / kPi;
            mono[0] = cxd{std::exp(-0.5 * std::norm(z)), 0.0};
            for (int n = 0; n + 1 < m; ++n)
                mono[n + 1] = mono[n] * z / std::sqrt(static_cast<double>(n + 1));
            for (int i = 0; i < m; ++i)
                for (int k = 0; k < m; ++k)
                    A[static_cast<std::size_t>(i) * m + k] += wq * mono[i] * std::conj(mono[k]);
        }
    }

    const quad::Rule1D gh = quad::gauss_hermite(cfg.gh_order);
    for (int ix = 0; ix < cfg.gh_order; ++ix) {
        for (int iy = 0; iy < cfg.gh_order; ++iy) {
            const cxd w{gh.nodes[ix], gh.nodes[iy]};
            const double wq = gh.weights[ix] * gh.weights[iy] / kPi;
            mono[0] = cxd{1.0, 0.0}; // e^{-|w|^2} supplied by the weight
            for (int n = 0; n + 1 < m; ++n)
                mono[n + 1] = mono[n] * w / std::sqrt(static_cast<double>(n + 1));
            for (int j = 0; j < m; ++j)
                for (int l = 0; l < m; ++l)
                    B[static_cast<std::size_t>(j) * m + l] += wq * std::conj(mono[j]) * mono[l];
        }
    }

    double worst = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    const cxd s = A[static_cast<std::size_t>(i) * m + k] *
                                  B[static_cast<std::size_t>(j) * m + l];
                    const double expect = (i == k && j == l) ? 1.0 : 0.0;
                    worst = std::max(worst, std::abs(s - expect));
                }
    return worst;
}

UncertaintyXY uncertainty_xy(const HSOperator& psi, const ModelParams& p, const Truncation& tr) {
    const auto ops = qspace::position_momentum_ops(p, tr);
    const HSOperator xpsi = ops.X.apply(psi);
    const HSOperator ypsi = ops.Y.apply(psi);
    const double ex = qspace::hs_inner(psi, xpsi).real();
    const double ey = qspace::hs_inner(psi, ypsi).real();
    const double ex2 = qspace::hs_inner(xpsi, xpsi).real(); // X ddagger-hermitian
    const double ey2 = qspace::hs_inner(ypsi, ypsi).real();
    return {std::sqrt(ex2 - ex * ex), std::sqrt(ey2 - ey * ey)};
}

double total_probability(const HSOperator& psi, const QuadratureGrid& z_grid, int gh_order) {
    const Truncation tr(psi.n());
    const quad::Rule1D zr = z_grid.axis_rule();
    const double rad2 = z_grid.extent * z_grid.extent;
    const QuadratureGrid gh = QuadratureGrid::gauss_hermite_default(gh_order);
    double total = 0.0;
    for (std::size_t ix = 0; ix < zr.nodes.size(); ++ix) {
        for (std::size_t iy = 0; iy < zr.nodes.size(); ++iy) {
            const double x = zr.nodes[ix], y = zr.nodes[iy];
            if (x * x + y * y > rad2) continue;
            const MarginalResult mr = marginal_prob_z(psi, {cxd{x, y}}, gh);
            // int d2z d2v P = int d2z * pi * P(z)
            total += zr.weights[ix] * zr.weights[iy] * kPi * mr.value;
        }
    }
    return total;
}

} // namespace ncqm::states
