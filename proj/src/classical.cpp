#include "ncqm/classical.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace ncqm::classical {

PolynomialPotential& PolynomialPotential::add_term(int a, int b, cxd c) {
    if (a < 0 || b < 0) throw DomainError("PolynomialPotential: negative powers");
    terms_[{a, b}] += c;
    if (a != b) terms_[{b, a}] += std::conj(c);
    // drop exact zeros to keep derivative loops tight
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == cxd{0.0, 0.0}) it = terms_.erase(it);
        else ++it;
    }
    return *this;
}

PolynomialPotential PolynomialPotential::from_normal_ordered(int bdag_pow, int b_pow, cxd coeff) {
    // <z| coeff (b^dag)^p b^q + h.c. |z> = coeff zbar^p z^q + c.c.
    // (exact for normal order; the hermitian partner is implied, as in add_term)
    PolynomialPotential v;
    v.add_term(b_pow, bdag_pow, coeff);
    return v;
}

PolynomialPotential PolynomialPotential::harmonic(double c) {
    PolynomialPotential v;
    v.add_term(1, 1, c);
    return v;
}

PolynomialPotential PolynomialPotential::quartic(double c) {
    PolynomialPotential v;
    v.add_term(2, 2, c);
    return v;
}

PolynomialPotential PolynomialPotential::anisotropic(double c, double b) {
    PolynomialPotential v;
    v.add_term(1, 1, c);
    v.add_term(2, 0, b);
    return v;
}

void PolynomialPotential::validate() const {
    for (const auto& [ab, c] : terms_) {
        const auto it = terms_.find({ab.second, ab.first});
        const cxd partner = (it == terms_.end()) ? cxd{0.0, 0.0} : it->second;
        if (std::abs(c - std::conj(partner)) > 1e-14 * (1.0 + std::abs(c)))
            throw DomainError("PolynomialPotential: coefficients violate V = conj(V)");
    }
}

namespace {
cxd ipow(cxd z, int p) {
    cxd r{1.0, 0.0};
    for (int i = 0; i < p; ++i) r *= z;
    return r;
}
} // namespace

double PolynomialPotential::value(cxd z) const {
    cxd s{0.0, 0.0};
    const cxd zb = std::conj(z);
    for (const auto& [ab, c] : terms_) s += c * ipow(z, ab.first) * ipow(zb, ab.second);
    return s.real();
}

cxd PolynomialPotential::d_z(cxd z) const {
    cxd s{0.0, 0.0};
    const cxd zb = std::conj(z);
    for (const auto& [ab, c] : terms_)
        if (ab.first >= 1)
            s += c * static_cast<double>(ab.first) * ipow(z, ab.first - 1) * ipow(zb, ab.second);
    return s;
}

cxd PolynomialPotential::d_zb(cxd z) const {
    cxd s{0.0, 0.0};
    const cxd zb = std::conj(z);
    for (const auto& [ab, c] : terms_)
        if (ab.second >= 1)
            s += c * static_cast<double>(ab.second) * ipow(z, ab.first) * ipow(zb, ab.second - 1);
    return s;
}

cxd PolynomialPotential::d_zz(cxd z) const {
    cxd s{0.0, 0.0};
    const cxd zb = std::conj(z);
    for (const auto& [ab, c] : terms_)
        if (ab.first >= 2)
            s += c * static_cast<double>(ab.first) * static_cast<double>(ab.first - 1) *
                 ipow(z, ab.first - 2) * ipow(zb, ab.second);
    return s;
}

std::pair<cxd, cxd> eom_rhs(const ClassicalState& s, const PolynomialPotential& V,
                            const ModelParams& p) {
    const cxd i{0.0, 1.0};
    const cxd vdot = i / p.hbar * V.d_zb(s.z);
    const cxd zdot = i * p.hbar / (p.mass * p.theta) * s.v - vdot;
    return {zdot, vdot};
}

std::array<cxd, 4> eom_residuals(const ClassicalState& s, const PolynomialPotential& V,
                                 const ModelParams& p) {
    const cxd i{0.0, 1.0};
    const auto [zdot, vdot] = eom_rhs(s, V, p);
    const cxd vbdot = std::conj(vdot);
    const cxd zbdot = std::conj(zdot);
    const double c = p.hbar * p.hbar / (p.mass * p.theta);
    return {
        i * p.hbar * vbdot - V.d_z(s.z),
        -i * p.hbar * vdot - V.d_zb(s.z),
        i * p.hbar * (zbdot + vbdot) - c * std::conj(s.v),
        -i * p.hbar * (zdot + vdot) - c * s.v,
    };
}

namespace {

struct Deriv {
    cxd zdot, vdot;
    double de;  // nonlocal-energy correction integrand
    double dl;  // angular integrand
};

Deriv derivs(const ClassicalState& s, const PolynomialPotential& V, const ModelParams& p) {
    const auto [zdot, vdot] = eom_rhs(s, V, p);
    const double T = p.time_scale();
    const cxd a = zdot * zdot * V.d_zz(s.z);
    const cxd b = s.z * V.d_z(s.z);
    Deriv d;
    d.zdot = zdot;
    d.vdot = vdot;
    // i T (conj(a) - a) and -i (b - conj(b)), both real
    d.de = (cxd{0.0, T} * (std::conj(a) - a)).real();
    d.dl = (cxd{0.0, -1.0} * (b - std::conj(b))).real();
    return d;
}

} // namespace

Trajectory integrate(const ClassicalState& s0, const PolynomialPotential& V,
                     const ModelParams& p, double t_end, double dt) {
    if (dt <= 0.0 || t_end <= s0.t) throw DomainError("integrate: need dt > 0 and t_end > t0");
    V.validate();
    Trajectory traj;
    traj.dt = dt;
    const long nsteps = std::lround((t_end - s0.t) / dt);
    traj.samples.reserve(nsteps + 1);

    ClassicalState s = s0;
    double ie = 0.0, il = 0.0;
    traj.samples.push_back({s.t, s.z, s.v, ie, il});
    double e_prev = energy_local(s, V, p);
    const double e_scale = std::max(1.0, std::abs(e_prev));

    for (long step = 0; step < nsteps; ++step) {
        const Deriv k1 = derivs(s, V, p);
        ClassicalState s2{s.t + 0.5 * dt, s.z + 0.5 * dt * k1.zdot, s.v + 0.5 * dt * k1.vdot};
        const Deriv k2 = derivs(s2, V, p);
        ClassicalState s3{s.t + 0.5 * dt, s.z + 0.5 * dt * k2.zdot, s.v + 0.5 * dt * k2.vdot};
        const Deriv k3 = derivs(s3, V, p);
        ClassicalState s4{s.t + dt, s.z + dt * k3.zdot, s.v + dt * k3.vdot};
        const Deriv k4 = derivs(s4, V, p);

        s.z += dt / 6.0 * (k1.zdot + 2.0 * k2.zdot + 2.0 * k3.zdot + k4.zdot);
        s.v += dt / 6.0 * (k1.vdot + 2.0 * k2.vdot + 2.0 * k3.vdot + k4.vdot);
        ie += dt / 6.0 * (k1.de + 2.0 * k2.de + 2.0 * k3.de + k4.de);
        il += dt / 6.0 * (k1.dl + 2.0 * k2.dl + 2.0 * k3.dl + k4.dl);
        s.t += dt;

        const double e_now = energy_local(s, V, p);
        if (std::abs(e_now - e_prev) > 1e-8 * e_scale)
            throw StepSizeError("integrate: per-step energy drift above 1e-8 (reduce dt)");
        e_prev = e_now;
        traj.samples.push_back({s.t, s.z, s.v, ie, il});
    }
    return traj;
}

double energy_local(const ClassicalState& s, const PolynomialPotential& V,
                    const ModelParams& p) {
    const double c = p.hbar * p.hbar / (p.mass * p.theta);
    return c * std::norm(s.v) + V.value(s.z);
}

double energy_local_expanded(const ClassicalState& s, const PolynomialPotential& V,
                             const ModelParams& p) {
    const auto [zdot, vdot] = eom_rhs(s, V, p);
    const cxd i{0.0, 1.0};
    // dimensionful zdot carries sqrt(2 theta)
    const double kin = 0.5 * p.mass * 2.0 * p.theta * std::norm(zdot);
    const cxd rot = i * p.hbar * (s.v * std::conj(vdot) - vdot * std::conj(s.v));
    return kin + V.value(s.z) - p.mass * p.theta * std::norm(vdot) + rot.real();
}

std::vector<double> energy_nonlocal(const Trajectory& traj, const PolynomialPotential& V,
                                    const ModelParams& p) {
    std::vector<double> out;
    out.reserve(traj.samples.size());
    for (const Sample& s : traj.samples) {
        const auto [zdot, vdot] = eom_rhs({s.t, s.z, s.v}, V, p);
        (void)vdot;
        out.push_back(p.mass * p.theta * std::norm(zdot) + V.value(s.z) + s.i_energy);
    }
    return out;
}

std::vector<double> angular_momentum_general(const Trajectory& traj,
                                             const PolynomialPotential& V,
                                             const ModelParams& p) {
    const double T = p.time_scale();
    const cxd i{0.0, 1.0};
    std::vector<double> out;
    out.reserve(traj.samples.size());
    for (const Sample& s : traj.samples) {
        const auto [zdot, vdot] = eom_rhs({s.t, s.z, s.v}, V, p);
        (void)vdot;
        const cxd kin = -i * p.mass * p.theta * (std::conj(s.z) * zdot - s.z * std::conj(zdot));
        const double pot = (V.value(s.z) - (s.z * V.d_z(s.z) + std::conj(s.z) * V.d_zb(s.z)).real());
        out.push_back(kin.real() + s.i_angular - T * pot);
    }
    return out;
}

PolarInvariants invariants_polar(double rho, double rho_dot, double phi_dot,
                                 const RadialPotential& V, const ModelParams& p) {
    if (rho <= 0.0) throw DomainError("invariants_polar: rho must be positive");
    const double T = p.time_scale();
    const double v = V.value(rho);
    const double l = p.mass * rho * rho * phi_dot - T * (v - rho * V.deriv(rho));
    const double e = 0.5 * p.mass * rho_dot * rho_dot + v +
                     (l + T * v) * (l + T * v) / (2.0 * p.mass * rho * rho);
    return {e, l};
}

PolarSample to_polar(const ClassicalState& s, const PolynomialPotential& V,
                     const ModelParams& p) {
    const auto [zdot, vdot] = eom_rhs(s, V, p);
    (void)vdot;
    const double az = std::abs(s.z);
    if (az == 0.0) throw DomainError("to_polar: rho = 0");
    const double rho = std::sqrt(2.0 * p.theta) * az;
    const cxd zb_zdot = std::conj(s.z) * zdot;
    const double rho_dot = std::sqrt(2.0 * p.theta) * zb_zdot.real() / az;
    const double phi_dot = zb_zdot.imag() / (az * az);
    return {rho, rho_dot, phi_dot};
}

double second_order_residual(const Trajectory& traj, const PolynomialPotential& V,
                             const ModelParams& p) {
    // zddot = -(1/m theta) V_zbar - vddot, dimensionless variables; second
    // derivatives by central differences on the stored samples.
    const double dt = traj.dt;
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < traj.samples.size(); ++k) {
        const Sample& a = traj.samples[k - 1];
        const Sample& b = traj.samples[k];
        const Sample& c = traj.samples[k + 1];
        const cxd zdd = (a.z - 2.0 * b.z + c.z) / (dt * dt);
        const cxd vdd = (a.v - 2.0 * b.v + c.v) / (dt * dt);
        const cxd res = zdd + V.d_zb(b.z) / (p.mass * p.theta) + vdd;
        worst = std::max(worst, std::abs(res));
    }
    return worst;
}

void write_trajectory_csv(const Trajectory& traj, const PolynomialPotential& V,
                          const ModelParams& p, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw DomainError("write_trajectory_csv: cannot open " + path);
    const std::vector<double> enl = energy_nonlocal(traj, V, p);
    const std::vector<double> lg = angular_momentum_general(traj, V, p);
    os << "t,re_z,im_z,re_v,im_v,e_local,e_nonlocal,l\n";
    char buf[512];
    for (std::size_t k = 0; k < traj.samples.size(); ++k) {
        const Sample& s = traj.samples[k];
        const double el = energy_local({s.t, s.z, s.v}, V, p);
        std::snprintf(buf, sizeof buf,
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t,
                      s.z.real(), s.z.imag(), s.v.real(), s.v.imag(), el, enl[k], lg[k]);
        os << buf;
    }
}

} // namespace ncqm::classical
