#include "ncqm/classical.hpp"
#include "ncqm/overlap.hpp"
#include "ncqm/rng.hpp"
#include "ncqm/spectra.hpp"
#include "ncqm/states.hpp"

#include "potential_parse.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <unistd.h>
#include <vector>

using namespace ncqm;
using json = nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct CommonOpts {
    double theta = 0.2;
    double mass = 1.0;
    double hbar = 1.0;
    double omega_l = 1.0;
    double omega_r = 0.0;
    int trunc = 64;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";

    void attach(CLI::App* app) {
        app->fallthrough();
        app->add_option("--theta", theta, "noncommutativity parameter (length^2)");
        app->add_option("--mass", mass, "particle mass");
        app->add_option("--hbar", hbar, "Planck constant");
        app->add_option("--omega-l", omega_l, "left oscillator frequency");
        app->add_option("--omega-r", omega_r, "right oscillator frequency");
        app->add_option("--trunc", trunc, "Fock truncation N");
        app->add_option("--seed", seed, "seed for randomized checks");
        app->add_option("--out", out, "output file path");
        app->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
    }

    qspace::ModelParams params() const {
        if (trunc < 8 || trunc > 256) throw ConfigError("trunc must lie in [8, 256]");
        return {mass, hbar, theta, omega_l, omega_r};
    }
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct CheckLine {
    std::string name;
    double residual;
    double threshold;
    bool pass() const { return residual < threshold; }
};

// temp-then-rename so concurrent invocations with distinct outputs are safe
void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.parent_path() /
                         (target.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw ConfigError("cannot open output file " + tmp.string());
        os << content;
    }
    fs::rename(tmp, target);
}

std::string render_csv(const Table& t) {
    std::string s;
    for (std::size_t i = 0; i < t.header.size(); ++i)
        s += t.header[i] + (i + 1 < t.header.size() ? "," : "\n");
    for (const auto& row : t.rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            s += row[i] + (i + 1 < row.size() ? "," : "\n");
    return s;
}

json config_json(const CommonOpts& o) {
    return json{{"theta", o.theta},   {"mass", o.mass},       {"hbar", o.hbar},
                {"omega_l", o.omega_l}, {"omega_r", o.omega_r}, {"trunc", o.trunc},
                {"seed", o.seed}};
}

void emit(const CommonOpts& o, const Table& t, const std::vector<CheckLine>& checks,
          const json& extra_config = {}, bool table_to_stdout = true) {
    json cfg = config_json(o);
    for (auto it = extra_config.begin(); it != extra_config.end(); ++it) cfg[it.key()] = it.value();
    if (o.out.empty() || o.format == "csv") {
        const std::string body = render_csv(t);
        if (o.out.empty()) {
            if (table_to_stdout) std::cout << body;
        } else {
            atomic_write(o.out, body);
        }
    }
    if (!o.out.empty() && o.format == "json") {
        json results = json::array();
        for (const auto& row : t.rows) {
            json r = json::object();
            for (std::size_t i = 0; i < row.size(); ++i) r[t.header[i]] = row[i];
            results.push_back(r);
        }
        json jchecks = json::array();
        for (const auto& c : checks)
            jchecks.push_back(json{{"name", c.name},
                                   {"residual", fmt(c.residual)},
                                   {"threshold", fmt(c.threshold)},
                                   {"pass", c.pass()}});
        const json doc{{"config", cfg}, {"results", results}, {"checks", jchecks}};
        atomic_write(o.out, doc.dump(2) + "\n");
    }
    for (const auto& c : checks)
        std::cout << (c.pass() ? "PASS " : "FAIL ") << c.name << "  residual=" << fmt(c.residual)
                  << "  threshold=" << fmt(c.threshold) << "\n";
}

// ---- spectrum ----

int cmd_spectrum(const CommonOpts& o, int levels) {
    const auto p = o.params();
    const fock::Truncation tr(o.trunc);
    const auto bog = spectra::bogoliubov(p);

    struct Row {
        int n1, n2;
        double e;
    };
    std::vector<Row> rows;
    for (int n1 = 0; n1 < levels; ++n1)
        for (int n2 = 0; n2 < levels; ++n2)
            rows.push_back({n1, n2, spectra::ho_spectrum(n1, n2, bog, p)});
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.e < b.e; });

    std::vector<double> dense;
    if (o.trunc <= 32)
        dense = spectra::ho_dense_eigenvalues(p, tr, static_cast<int>(rows.size()));

    Table t;
    t.header = {"n1", "n2", "e_formula", "e_dense", "abs_delta"};
    bool all_ok = true;
    double worst = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<std::string> r{std::to_string(rows[i].n1), std::to_string(rows[i].n2),
                                   fmt(rows[i].e)};
        if (i < dense.size()) {
            const double d = std::abs(dense[i] - rows[i].e);
            worst = std::max(worst, d);
            if (d >= 1e-6) all_ok = false;
            r.push_back(fmt(dense[i]));
            r.push_back(fmt(d));
        } else {
            r.push_back("");
            r.push_back("");
        }
        t.rows.push_back(std::move(r));
    }
    std::vector<CheckLine> checks;
    if (!dense.empty()) checks.push_back({"spectrum_formula_vs_dense_max_delta", worst, 1e-6});
    emit(o, t, checks, json{{"levels", levels}});
    return (dense.empty() || all_ok) ? 0 : 1;
}

// ---- pzv ----

int cmd_pzv(const CommonOpts& o, const std::string& model, double k_re, double k_im,
            double extent, double step) {
    const auto p = o.params();
    const fock::Truncation tr(o.trunc);

    qspace::HSOperator psi(o.trunc);
    double gamma = 0.0;
    spectra::MomentumLabel k{cxd{k_re, k_im}};
    if (model == "free") {
        psi = spectra::momentum_state(k, p, tr);
    } else if (model == "oscillator") {
        const auto bog = spectra::bogoliubov(p);
        gamma = bog.gamma_;
        psi = spectra::ho_ground_state(bog, tr);
    } else {
        throw ConfigError("pzv: model must be free or oscillator");
    }

    Table t;
    t.header = {"re_z", "im_z", "re_v", "im_v", "p_closed", "p_numeric", "abs_delta"};
    double worst = 0.0;
    for (double zx = -extent; zx <= extent + 1e-12; zx += step)
        for (double zy = -extent; zy <= extent + 1e-12; zy += step)
            for (double vx = -extent; vx <= extent + 1e-12; vx += step)
                for (double vy = -extent; vy <= extent + 1e-12; vy += step) {
                    const cxd z{zx, zy}, v{vx, vy};
                    const double closed = (model == "free")
                                              ? spectra::free_pzv_closed(k, z, v, p)
                                              : spectra::ho_ground_pzv_closed(z, v, gamma);
                    const double numeric = std::norm(overlap::overlap_zv(psi, z, v));
                    const double d = std::abs(closed - numeric);
                    worst = std::max(worst, d);
                    t.rows.push_back({fmt(zx), fmt(zy), fmt(vx), fmt(vy), fmt(closed),
                                      fmt(numeric), fmt(d)});
                }
    std::vector<CheckLine> checks{{"pzv_closed_vs_numeric_max_delta", worst, 1e-8}};
    emit(o, t, checks, json{{"model", model}, {"k_re", k_re}, {"k_im", k_im}});
    return worst < 1e-8 ? 0 : 1;
}

// ---- classical ----

int cmd_classical(const CommonOpts& o, const std::string& potential, double z0r, double z0i,
                  double v0r, double v0i, double t_end, double dt, bool expect_l_drift) {
    const auto p = o.params();
    const auto V = cli::parse_potential(potential);
    const classical::ClassicalState s0{0.0, cxd{z0r, z0i}, cxd{v0r, v0i}};
    const auto traj = classical::integrate(s0, V, p, t_end, dt);

    const auto enl = classical::energy_nonlocal(traj, V, p);
    const auto lg = classical::angular_momentum_general(traj, V, p);
    double e0 = classical::energy_local({0.0, s0.z, s0.v}, V, p);
    double emin = e0, emax = e0;
    for (const auto& s : traj.samples) {
        const double e = classical::energy_local({s.t, s.z, s.v}, V, p);
        emin = std::min(emin, e);
        emax = std::max(emax, e);
    }
    const double escale = std::max(1e-300, std::abs(e0));
    const double e_drift = (emax - emin) / escale;
    const auto [enl_min, enl_max] = std::minmax_element(enl.begin(), enl.end());
    const double enl_drift = (*enl_max - *enl_min) / std::max(1e-300, std::abs(enl.front()));
    const auto [l_min, l_max] = std::minmax_element(lg.begin(), lg.end());
    const double l_scale = std::max(1.0, std::abs(lg.front()));
    const double l_drift = (*l_max - *l_min) / l_scale;

    if (!o.out.empty() && o.format == "csv") {
        // trajectory CSV is the primary artifact of this command
        classical::write_trajectory_csv(traj, V, p, o.out);
    } else if (!o.out.empty()) {
        json samples = json::array();
        for (std::size_t i = 0; i < traj.samples.size(); ++i) {
            const auto& s = traj.samples[i];
            samples.push_back(json{{"t", fmt(s.t)},
                                   {"re_z", fmt(s.z.real())},
                                   {"im_z", fmt(s.z.imag())},
                                   {"re_v", fmt(s.v.real())},
                                   {"im_v", fmt(s.v.imag())},
                                   {"e_local", fmt(classical::energy_local({s.t, s.z, s.v}, V, p))},
                                   {"e_nonlocal", fmt(enl[i])},
                                   {"l", fmt(lg[i])}});
        }
        json cfg = config_json(o);
        cfg["potential"] = potential;
        const json doc{{"config", cfg},
                       {"results", samples},
                       {"checks",
                        json::array({json{{"name", "e_local_drift"}, {"residual", fmt(e_drift)}},
                                     json{{"name", "e_nonlocal_drift"}, {"residual", fmt(enl_drift)}},
                                     json{{"name", "l_drift"}, {"residual", fmt(l_drift)}}})}};
        atomic_write(o.out, doc.dump(2) + "\n");
    }

    std::cout << "samples=" << traj.samples.size() << "\n"
              << "e_local_drift=" << fmt(e_drift) << "\n"
              << "e_nonlocal_drift=" << fmt(enl_drift) << "\n"
              << "l_drift=" << fmt(l_drift) << (expect_l_drift ? "  (drift expected)" : "")
              << "\n";

    const bool ok = e_drift < 1e-6 && enl_drift < 1e-6 && (expect_l_drift || l_drift < 1e-6);
    return ok ? 0 : 1;
}

// ---- checks ----

int cmd_checks(const CommonOpts& o, bool extended) {
    const auto p = o.params();
    const fock::Truncation tr(o.trunc);
    GaussianRng rng(o.seed);
    std::vector<CheckLine> checks;
    const auto ops = qspace::position_momentum_ops(p, tr);
    const cxd ii{0.0, 1.0};

    // sampled (z,v) points shrink with the truncation so coherent tails stay
    // controlled; thresholds for the nominally exact identities widen by the
    // corresponding tail bound a^{N-1}/sqrt((N-1)!)
    const double pt_scale = 0.5 * std::sqrt(tr.n / 64.0);
    double max_abs_pt = 0.0;
    auto draw_pt = [&]() {
        const cxd g = pt_scale * rng.gaussian_complex();
        max_abs_pt = std::max(max_abs_pt, std::abs(g));
        return g;
    };
    auto tail_bound = [&](double a) {
        if (a <= 0.0) return 0.0;
        return std::exp(-0.5 * a * a + (tr.n - 1) * std::log(a) - 0.5 * std::lgamma(tr.n));
    };

    // edge-supported random state: zero coefficients in the top 4 rows/cols
    auto random_edge_state = [&](int margin) {
        CMat m(tr.n);
        for (int i = 0; i < tr.n - margin; ++i)
            for (int j = 0; j < tr.n - margin; ++j) m(i, j) = rng.gaussian_complex();
        m *= cxd{1.0 / m.frob_norm(), 0.0};
        return m;
    };

    {
        const auto lad = fock::build_ladder(tr);
        const CMat comm = lad.b * lad.b_dag - lad.b_dag * lad.b;
        double worst = 0.0;
        for (int n = 0; n <= tr.n - 2; ++n) worst = std::max(worst, std::abs(comm(n, n) - 1.0));
        checks.push_back({"fock_ladder_commutator_bulk", worst, 2e-14});
    }
    {
        const CMat psi = random_edge_state(4);
        const CMat r1 = ops.X.apply(ops.Px.apply(psi)) - ops.Px.apply(ops.X.apply(psi)) -
                        (ii * p.hbar) * psi;
        const CMat r2 = ops.Y.apply(ops.Py.apply(psi)) - ops.Py.apply(ops.Y.apply(psi)) -
                        (ii * p.hbar) * psi;
        const CMat r3 = ops.X.apply(ops.Y.apply(psi)) - ops.Y.apply(ops.X.apply(psi)) -
                        (ii * p.theta) * psi;
        checks.push_back({"heisenberg_x_px", r1.edge_norm(0), 1e-12});
        checks.push_back({"heisenberg_y_py", r2.edge_norm(0), 1e-12});
        checks.push_back({"xy_noncommutativity", r3.edge_norm(0), 1e-12});
    }
    {
        const CMat psi = random_edge_state(4);
        const CMat a = ops.Px.apply(ops.Px.apply(psi)) + ops.Py.apply(ops.Py.apply(psi));
        const CMat b1 = ops.Pdag.apply(ops.P.apply(psi));
        const CMat b2 = ops.P.apply(ops.Pdag.apply(psi));
        checks.push_back({"p_squared_pdag_p", (a - b1).edge_norm(4), 1e-10});
        checks.push_back({"p_squared_p_pdag", (a - b2).edge_norm(4), 1e-10});
    }
    {
        const CMat phi = random_edge_state(4);
        const CMat psi = random_edge_state(4);
        const cxd lhs = qspace::hs_inner(ops.X.apply(phi), psi);
        const cxd rhs = qspace::hs_inner(phi, ops.X.apply(psi));
        checks.push_back({"x_hermiticity", std::abs(lhs - rhs), 1e-12});
    }
    {
        double worst = 0.0;
        max_abs_pt = 0.0;
        for (int trial = 0; trial < 3; ++trial) {
            const cxd z = draw_pt();
            const cxd v = draw_pt();
            const auto st = states::state_zv({z, v}, tr);
            const auto u = states::uncertainty_xy(st, p, tr);
            worst = std::max(worst, std::abs(u.dx * u.dy - p.theta / 2.0));
        }
        checks.push_back({"minimal_uncertainty_dx_dy", worst,
                          std::max(1e-8, 100.0 * tail_bound(2.0 * max_abs_pt))});
    }
    {
        const overlap::FDStencil st{1e-3};
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            const CMat psi = rng.random_state(tr.n);
            const cxd z = draw_pt();
            const cxd v = draw_pt();
            const auto [r1, r2] = overlap::constraint_residuals(psi, z, v, st);
            worst = std::max({worst, std::abs(r1), std::abs(r2)});
        }
        checks.push_back({"physical_constraints_fd", worst, 1e-6});
    }
    {
        const overlap::FDStencil st{1e-3};
        const CMat psi = rng.random_state(tr.n);
        const cxd z = pt_scale * cxd{0.6, -0.4};
        const cxd v = pt_scale * cxd{0.2, 0.5};
        const double exact_floor =
            std::max(1e-12, 50.0 * tail_bound(std::max(std::abs(z), std::abs(z + v))));
        const auto d = overlap::ladder_dictionary_check(psi, z, v, st);
        checks.push_back({"dictionary_bldag", d.bldag, exact_floor});
        checks.push_back({"dictionary_bl", d.bl, 1e-6});
        checks.push_back({"dictionary_br", d.br, exact_floor});
        checks.push_back({"dictionary_brdag", std::max(d.brdag_dv, d.brdag_dz), 1e-6});
    }
    {
        const auto cfg = states::IdentityCheckConfig::for_truncation(tr);
        checks.push_back(
            {"identity_resolution", states::identity_resolution_check(tr, cfg), 1e-6});
    }
    {
        const CMat psi = random_edge_state(4);
        const auto l1 = spectra::angular_momentum_superop(p, tr);
        const auto l2 = spectra::angular_momentum_composite(p, tr);
        checks.push_back({"angular_two_forms", (l1.apply(psi) - l2.apply(psi)).edge_norm(0), 1e-10});
    }
    if (p.omega_l > 0.0 || p.omega_r > 0.0) {
        const CMat psi = random_edge_state(6);
        const auto l = spectra::angular_momentum_superop(p, tr);
        const auto h = spectra::ho_hamiltonian(p, tr);
        const CMat comm = l.apply(h.apply(psi)) - h.apply(l.apply(psi));
        checks.push_back({"l_h_commutator", comm.edge_norm(6), 1e-9});
    }
    {
        const CMat psi = rng.random_state(tr.n);
        const states::PointZ pz{cxd{0.2, -0.1}};
        const auto gh = quad::QuadratureGrid::gauss_hermite_default(std::max(40, tr.n));
        const double a = states::marginal_prob_z(psi, pz, gh).value;
        const double b = states::marginal_prob_z_operator_route(psi, pz, gh);
        checks.push_back({"marginal_dual_route", std::abs(a - b), 1e-8});
    }
    if (extended) {
        const overlap::FDStencil st{1e-3};
        const CMat psi = rng.random_state(tr.n);
        const cxd z{0.25, 0.15}, v{-0.2, 0.1};
        const double r =
            overlap::diffop_check(psi, z, v, overlap::DiffOp::HoH, p, st);
        checks.push_back({"oscillator_diffop_form", r, 1e-4});
    }

    Table t;
    t.header = {"check", "residual", "threshold", "pass"};
    bool all = true;
    for (const auto& c : checks) {
        t.rows.push_back({c.name, fmt(c.residual), fmt(c.threshold), c.pass() ? "1" : "0"});
        all = all && c.pass();
    }
    emit(o, t, checks, json{{"extended", extended}}, /*table_to_stdout=*/false);
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum mechanics on the noncommutative plane, Hilbert-Schmidt formulation"};
    app.set_config("--config", "",
                   "key-value config file, [subcommand] sections; command-line flags win");
    app.fallthrough();
    app.require_subcommand(1);

    CommonOpts o_spec, o_pzv, o_cls, o_chk;
    int levels = 3;
    auto* spectrum = app.add_subcommand("spectrum", "oscillator spectrum, formula vs dense oracle");
    o_spec.attach(spectrum);
    spectrum->add_option("--levels", levels, "n1, n2 range per side");

    std::string model = "oscillator";
    double k_re = 0.0, k_im = 0.0, extent = 0.5, step = 0.5;
    auto* pzv = app.add_subcommand("pzv", "P(z,v): closed form vs overlap route on a grid");
    o_pzv.attach(pzv);
    pzv->add_option("--model", model, "free | oscillator");
    pzv->add_option("--k-re", k_re, "free-particle momentum, real part");
    pzv->add_option("--k-im", k_im, "free-particle momentum, imaginary part");
    pzv->add_option("--grid-extent", extent, "grid half-width per axis");
    pzv->add_option("--grid-step", step, "grid spacing");

    std::string potential = "harmonic:0.2";
    double z0r = 0.7, z0i = 0.3, v0r = 0.2, v0i = -0.1, t_end = 10.0, dt = 1e-3;
    bool expect_l_drift = false;
    auto* cls = app.add_subcommand("classical", "integrate the constrained classical dynamics");
    o_cls.attach(cls);
    cls->add_option("--potential", potential,
                    "none | harmonic:C | quartic:C | aniso:C,B | monomial sum");
    cls->add_option("--z0-re", z0r);
    cls->add_option("--z0-im", z0i);
    cls->add_option("--v0-re", v0r);
    cls->add_option("--v0-im", v0i);
    cls->add_option("--t-end", t_end);
    cls->add_option("--dt", dt);
    cls->add_flag("--expect-l-drift", expect_l_drift,
                  "report L drift without failing on it (anisotropic potentials)");

    bool extended = false;
    auto* chk = app.add_subcommand("checks", "run the residual check report");
    o_chk.attach(chk);
    chk->add_flag("--extended", extended, "include the oscillator differential-form check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (spectrum->parsed()) return cmd_spectrum(o_spec, levels);
        if (pzv->parsed()) return cmd_pzv(o_pzv, model, k_re, k_im, extent, step);
        if (cls->parsed())
            return cmd_classical(o_cls, potential, z0r, z0i, v0r, v0i, t_end, dt, expect_l_drift);
        if (chk->parsed()) return cmd_checks(o_chk, extended);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
