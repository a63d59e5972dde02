#include "ncqm/spectra.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace ncqm::spectra {

SuperOp angular_momentum_superop(const ModelParams& p, const Truncation& tr) {
    const auto lad = fock::build_ladder(tr);
    const CMat nb = lad.b_dag * lad.b;
    return cxd{p.hbar, 0.0} * (SuperOp::right(nb) - SuperOp::left(nb));
}

SuperOp angular_momentum_composite(const ModelParams& p, const Truncation& tr) {
    const auto ops = qspace::position_momentum_ops(p, tr);
    SuperOp l = ops.X * ops.Py - ops.Y * ops.Px;
    l += cxd{p.theta / (2.0 * p.hbar), 0.0} * (ops.P * ops.Pdag);
    return l;
}

AngularState make_angular_state(int l, CVec alpha) {
    if (l < 0) throw DomainError("AngularState: l must be >= 0");
    const double nrm = std::sqrt(vnorm_sq(alpha));
    if (nrm == 0.0) throw DomainError("AngularState: zero coefficient vector");
    kern::active().scale(alpha.size(), cxd{1.0 / nrm, 0.0}, alpha.data());
    return {l, std::move(alpha)};
}

HSOperator angular_state_matrix(const AngularState& s, const Truncation& tr) {
    HSOperator m(tr.n);
    for (int n = 0; n < static_cast<int>(s.alpha.size()); ++n) {
        if (n + s.l >= tr.n)
            throw DomainError("angular_state_matrix: coefficients exceed truncation");
        m(n, n + s.l) = s.alpha[n];
    }
    return m;
}

SeriesResult angular_overlap_closed(cxd z, cxd v, const AngularState& s) {
    const cxd w = z + v;
    const cxd pref = std::exp(0.5 * (std::conj(v) * z - std::conj(z) * v)) *
                     std::exp(-0.5 * (std::norm(z) + std::norm(w)));
    const cxd x = std::conj(z) * w;
    cxd sum{0.0, 0.0};
    // term_n = alpha_n x^n/n! w^l sqrt(n!/(n+l)!)
    cxd xn{1.0, 0.0};       // x^n / n!
    double ratio = 1.0;     // n! / (n+l)!
    for (int j = 1; j <= s.l; ++j) ratio /= j;
    double last = 0.0;
    for (int n = 0; n < static_cast<int>(s.alpha.size()); ++n) {
        if (n > 0) {
            xn *= x / static_cast<double>(n);
            ratio *= static_cast<double>(n) / static_cast<double>(n + s.l);
        }
        const cxd term = s.alpha[n] * xn * std::sqrt(ratio);
        sum += term;
        last = std::abs(term);
    }
    cxd wl{1.0, 0.0};
    for (int j = 0; j < s.l; ++j) wl *= w;
    // dropped-tail estimate: continue the coefficient sequence geometrically
    // from its last two entries; a fully stored sequence (length 1 or a
    // negligible final coefficient) contributes nothing
    const int nmax = static_cast<int>(s.alpha.size());
    double tail = 0.0;
    if (nmax >= 2) {
        const double a_last = std::abs(s.alpha[nmax - 1]);
        const double a_prev = std::abs(s.alpha[nmax - 2]);
        const double r_alpha = (a_prev > 0.0) ? std::min(1.0, a_last / a_prev) : 1.0;
        const double q = r_alpha * std::abs(x) / nmax;
        const double first_dropped = last * r_alpha * std::abs(x) / nmax;
        tail = (q < 1.0) ? std::abs(pref * wl) * first_dropped / (1.0 - q)
                         : std::abs(pref * wl) * first_dropped;
    }
    return {pref * wl * sum, tail, tail > 1e-10};
}

SuperOp free_hamiltonian(const ModelParams& p, const Truncation& tr) {
    const auto lad = fock::build_ladder(tr);
    const double c = p.hbar * p.hbar / (p.mass * p.theta);
    SuperOp left_d = SuperOp::left(lad.b_dag) - SuperOp::right(lad.b_dag);
    SuperOp right_d = SuperOp::right(lad.b) - SuperOp::left(lad.b);
    return cxd{-c, 0.0} * (left_d * right_d);
}

HSOperator momentum_state(const MomentumLabel& k, const ModelParams& p, const Truncation& tr) {
    const double disp_sq = p.theta * std::norm(k.k) / (2.0 * p.hbar * p.hbar);
    if (disp_sq > tr.n / 4.0)
        throw DomainError("momentum_state: theta|k|^2/(2 hbar^2) exceeds N/4, not representable");
    const cxd i{0.0, 1.0};
    const cxd a = i / p.hbar * std::sqrt(p.theta / 2.0) * k.k;           // exp(a b^dag)
    const cxd ap = i / p.hbar * std::sqrt(p.theta / 2.0) * std::conj(k.k); // exp(ap b)

    const int n = tr.n;
    // exp(a b^dag): lower triangular, entry (r,c) = a^{r-c} sqrt(r!/c!)/(r-c)!
    CMat e1(n), e2(n);
    for (int c = 0; c < n; ++c) {
        cxd val{1.0, 0.0};
        e1(c, c) = val;
        for (int r = c + 1; r < n; ++r) {
            val *= a * std::sqrt(static_cast<double>(r)) / static_cast<double>(r - c);
            e1(r, c) = val;
        }
    }
    // exp(ap b): upper triangular, entry (r,c) = ap^{c-r} sqrt(c!/r!)/(c-r)!
    for (int r = 0; r < n; ++r) {
        cxd val{1.0, 0.0};
        e2(r, r) = val;
        for (int c = r + 1; c < n; ++c) {
            val *= ap * std::sqrt(static_cast<double>(c)) / static_cast<double>(c - r);
            e2(r, c) = val;
        }
    }
    HSOperator psi = e1 * e2;
    const double pref = std::sqrt(p.theta / (2.0 * 3.14159265358979323846 * p.hbar * p.hbar)) *
                        std::exp(-p.theta * std::norm(k.k) / (4.0 * p.hbar * p.hbar));
    psi *= cxd{pref, 0.0};
    return psi;
}

cxd momentum_overlap_closed(const MomentumLabel& k, cxd z, cxd v, const ModelParams& p) {
    const cxd i{0.0, 1.0};
    const double pref = std::sqrt(p.theta / (2.0 * 3.14159265358979323846 * p.hbar * p.hbar));
    const cxd arg = i / p.hbar * std::sqrt(p.theta / 2.0) *
                    (k.k * std::conj(z) + std::conj(k.k) * (z + v));
    return pref * std::exp(-p.theta * std::norm(k.k) / (4.0 * p.hbar * p.hbar)) * std::exp(arg) *
           std::exp(-0.5 * std::norm(v));
}

double free_pzv_closed(const MomentumLabel& k, cxd /*z*/, cxd v, const ModelParams& p) {
    const cxd i{0.0, 1.0};
    const double pref = p.theta / (2.0 * 3.14159265358979323846 * p.hbar * p.hbar);
    const cxd stretch = i / p.hbar * std::sqrt(p.theta / 2.0) *
                        (std::conj(k.k) * v - std::conj(v) * k.k); // purely real exponent
    return pref * std::exp(-p.theta * std::norm(k.k) / (2.0 * p.hbar * p.hbar)) *
           std::exp(stretch.real()) * std::exp(-std::norm(v));
}

namespace {
struct AbgCoeffs {
    double alpha, beta, gamma;
};
AbgCoeffs abg(const ModelParams& p) {
    const double c = p.hbar * p.hbar / (p.mass * p.theta);
    return {c + p.mass * p.theta * p.omega_l * p.omega_l,
            c + p.mass * p.theta * p.omega_r * p.omega_r, c};
}
} // namespace

SuperOp ho_hamiltonian(const ModelParams& p, const Truncation& tr) {
    const auto lad = fock::build_ladder(tr);
    const auto [alpha, beta, gamma] = abg(p);
    SuperOp h = cxd{alpha, 0.0} * (SuperOp::left(lad.b_dag) * SuperOp::left(lad.b));
    h += cxd{beta, 0.0} * (SuperOp::right(lad.b_dag) * SuperOp::right(lad.b));
    h -= cxd{gamma, 0.0} * (SuperOp::left(lad.b_dag) * SuperOp::right(lad.b) +
                            SuperOp::right(lad.b_dag) * SuperOp::left(lad.b));
    const double shift = p.mass * p.theta * p.omega_r * p.omega_r;
    if (shift != 0.0) h -= cxd{shift, 0.0} * SuperOp::identity();
    return h;
}

BogoliubovData bogoliubov(const ModelParams& p) {
    const double s = p.omega_l * p.omega_l + p.omega_r * p.omega_r;
    if (s == 0.0)
        throw DegenerateModel("bogoliubov: omega_L = omega_R = 0 (use free_hamiltonian)");
    const double mt = p.mass * p.theta;
    const double root = std::sqrt(s * (4.0 * p.hbar * p.hbar + mt * mt * s));
    const double gam = 1.0 + mt / (2.0 * p.hbar * p.hbar) * (mt * s - root);
    if (!(std::abs(gam) < 1.0))
        throw DomainError("bogoliubov: |Gamma| >= 1 (outside the model's validity)");
    // arctanh via the log form, domain asserted above
    const double phi = -0.5 * std::log((1.0 + gam) / (1.0 - gam));
    const double dl = mt * p.omega_l * p.omega_l;
    const double dr = mt * p.omega_r * p.omega_r;
    const auto [alpha, beta, gamma] = abg(p);
    BogoliubovData bog;
    bog.phi = phi;
    bog.gamma_ = gam;
    bog.k1 = 0.5 * (dl - dr + root);
    bog.k2 = 0.5 * (dr - dl + root);
    bog.alpha = alpha;
    bog.beta = beta;
    bog.gamma_coef = gamma;
    return bog;
}

double ho_spectrum(int n1, int n2, const BogoliubovData& bog, const ModelParams& p) {
    return n1 * bog.k1 + (n2 + 1) * bog.k2 - p.mass * p.theta * p.omega_r * p.omega_r;
}

HSOperator ho_ground_state(const BogoliubovData& bog, const Truncation& tr) {
    const double gam = bog.gamma_;
    // discarded squared-norm tail of the geometric series
    const double tail = std::pow(gam * gam, tr.n);
    if (tail > 1e-10)
        throw DomainError("ho_ground_state: Gamma tail beyond truncation too large (increase N)");
    HSOperator psi(tr.n);
    double g = 1.0;
    for (int n = 0; n < tr.n; ++n) {
        psi(n, n) = g;
        g *= gam;
    }
    psi *= cxd{std::sqrt(1.0 - gam * gam), 0.0};
    psi *= cxd{1.0 / psi.frob_norm(), 0.0};
    return psi;
}

namespace {
SuperOp a1_dag_op(const BogoliubovData& bog, const Truncation& tr) {
    const auto lad = fock::build_ladder(tr);
    return cxd{std::cosh(bog.phi), 0.0} * SuperOp::left(lad.b_dag) +
           cxd{std::sinh(bog.phi), 0.0} * SuperOp::right(lad.b_dag);
}
SuperOp a2_op(const BogoliubovData& bog, const Truncation& tr) {
    const auto lad = fock::build_ladder(tr);
    return cxd{std::sinh(bog.phi), 0.0} * SuperOp::left(lad.b) +
           cxd{std::cosh(bog.phi), 0.0} * SuperOp::right(lad.b);
}
} // namespace

HSOperator ho_excited(int n1, int n2, const BogoliubovData& bog, const ModelParams& /*p*/,
                      const Truncation& tr) {
    if (n1 < 0 || n2 < 0) throw DomainError("ho_excited: n1, n2 must be >= 0");
    // margin for the ladder applications pushing support toward the edge
    const double tail = std::pow(bog.gamma_ * bog.gamma_, tr.n - n1 - n2);
    if (tail > 1e-10)
        throw DomainError("ho_excited: Gamma tail with ladder margin too large (increase N)");
    HSOperator psi = ho_ground_state(bog, tr);
    const SuperOp a2 = a2_op(bog, tr);
    for (int j = 0; j < n2; ++j) psi = a2.apply(psi);
    const SuperOp a1d = a1_dag_op(bog, tr);
    for (int j = 0; j < n1; ++j) psi = a1d.apply(psi);
    // ladder-built states are renormalized rather than carrying analytic
    // factors; the right sector's indefinite metric makes those error-prone
    psi *= cxd{1.0 / psi.frob_norm(), 0.0};
    return psi;
}

cxd ho_ground_overlap_closed(cxd z, cxd v, double gamma) {
    const cxd w = z + v;
    return std::sqrt(1.0 - gamma * gamma) *
           std::exp(0.5 * (std::conj(v) * z - std::conj(z) * v)) *
           std::exp(gamma * std::conj(z) * w) * std::exp(-0.5 * (std::norm(z) + std::norm(w)));
}

double ho_ground_pzv_closed(cxd z, cxd v, double gamma) {
    const double zv = (std::conj(z) * v + std::conj(v) * z).real();
    return (1.0 - gamma * gamma) * std::exp(-std::norm(v)) *
           std::exp(-2.0 * (1.0 - gamma) * std::norm(z)) * std::exp(-(1.0 - gamma) * zv);
}

std::vector<double> ho_dense_eigenvalues(const ModelParams& p, const Truncation& tr, int count) {
    if (tr.n > 32)
        throw DomainError("ho_dense_eigenvalues: dense oracle capped at N = 32");
    // Materialize one level larger and compress back to the N-block: the raw
    // truncated product psi b b^dag has a corner defect that injects spurious
    // low modes; every matrix element of the (N+1)-materialization between
    // states with indices < N agrees with the untruncated algebra.
    const Truncation big(tr.n + 1);
    const CMat dense_big = ho_hamiltonian(p, big).dense(big);
    const int n = tr.n, nn = n * n, nb = big.n;
    Eigen::MatrixXcd h(nn, nn);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    h(i * n + j, k * n + l) = dense_big(i * nb + j, k * nb + l);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + nn);
    std::sort(ev.begin(), ev.end());
    ev.resize(std::min<std::size_t>(ev.size(), count));
    return ev;
}

std::vector<double> ho_sector_eigenvalues(const ModelParams& p, const Truncation& tr, int count) {
    // [L, H] = 0: H preserves psi = sum_n c_n |n><n+l| (and mirrors), where it
    // is real tridiagonal. Matrix elements here are those of the untruncated
    // operator compressed to n < N - |l|.
    const auto [alpha, beta, gamma] = abg(p);
    const double shift = p.mass * p.theta * p.omega_r * p.omega_r;
    std::vector<double> all;
    for (int l = -(tr.n - 1); l < tr.n; ++l) {
        const int la = std::abs(l);
        const int m = tr.n - la;
        Eigen::VectorXd diag(m), off(std::max(0, m - 1));
        for (int n = 0; n < m; ++n) {
            const int row = (l >= 0) ? n : n + la;     // left index
            const int col = (l >= 0) ? n + la : n;     // right index
            diag(n) = alpha * row + beta * (col + 1) - shift;
            if (n + 1 < m)
                off(n) = -gamma * std::sqrt(static_cast<double>(row + 1) *
                                            static_cast<double>(col + 1));
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
        for (int j = 0; j < m; ++j) all.push_back(es.eigenvalues()(j));
    }
    std::sort(all.begin(), all.end());
    all.resize(std::min<std::size_t>(all.size(), count));
    return all;
}

double ho_excited_l_measured(int n1, int n2, const BogoliubovData& bog, const ModelParams& p,
                             const Truncation& tr) {
    const HSOperator psi = ho_excited(n1, n2, bog, p, tr);
    const SuperOp l = angular_momentum_superop(p, tr);
    return qspace::hs_inner(psi, l.apply(psi)).real();
}

} // namespace ncqm::spectra
