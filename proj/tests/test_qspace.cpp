#include <doctest.h>

#include "ncqm/fock.hpp"
#include "ncqm/qspace.hpp"
#include "ncqm/rng.hpp"

#include <cmath>

using namespace ncqm;
using fock::Truncation;
using qspace::HSOperator;
using qspace::ModelParams;
using qspace::SuperOp;

namespace {

CMat unit(int n, int i, int j) {
    CMat m(n);
    m(i, j) = 1.0;
    return m;
}

CMat edge_supported(GaussianRng& rng, int n, int margin) {
    CMat m(n);
    for (int i = 0; i < n - margin; ++i)
        for (int j = 0; j < n - margin; ++j) m(i, j) = rng.gaussian_complex();
    m *= cxd{1.0 / m.frob_norm(), 0.0};
    return m;
}

} // namespace

TEST_SUITE("qspace") {

TEST_CASE("hs_inner on matrix units") {
    const int n = 8;
    CHECK(qspace::hs_inner(unit(n, 0, 0), unit(n, 0, 0)) == cxd{1.0, 0.0});
    CHECK(qspace::hs_inner(unit(n, 0, 1), unit(n, 1, 0)) == cxd{0.0, 0.0});
}

TEST_CASE("hs_inner of coherent projectors reproduces |<z|z'>|^2") {
    const Truncation tr(64);
    const cxd z{0.3, 0.0}, w{0.3, 0.2};
    const CVec cz = fock::coherent_vector(z, tr);
    const CVec cw = fock::coherent_vector(w, tr);
    const HSOperator pz = outer(cz, cz);
    const HSOperator pw = outer(cw, cw);
    const double expect = std::norm(fock::coherent_overlap(z, w));
    CHECK(std::abs(qspace::hs_inner(pz, pw) - cxd{expect, 0.0}) < 1e-10);
}

TEST_CASE("hs_inner is conjugate-symmetric and positive") {
    GaussianRng rng(5);
    const CMat a = rng.random_state(12);
    const CMat b = rng.random_state(12);
    CHECK(std::abs(qspace::hs_inner(a, b) - std::conj(qspace::hs_inner(b, a))) < 1e-15);
    CHECK(qspace::hs_inner(a, a).real() > 0.0);
}

TEST_CASE("apply: LeftMult identity, right multiplication on |0><0|") {
    const Truncation tr(6);
    const auto lad = fock::build_ladder(tr);
    const HSOperator vac = unit(6, 0, 0);
    CHECK((SuperOp::left(CMat::identity(6)).apply(vac) - vac).frob_norm() == 0.0);
    // (|0><0|) b = |0><1| since <0|b = <1|; the b^dag direction annihilates
    const HSOperator r = SuperOp::right(lad.b).apply(vac);
    CHECK((r - unit(6, 0, 1)).frob_norm() < 1e-15);
    CHECK(SuperOp::right(lad.b_dag).apply(vac).frob_norm() == 0.0);
}

TEST_CASE("left and right actions compose and commute") {
    GaussianRng rng(11);
    const Truncation tr(10);
    const auto lad = fock::build_ladder(tr);
    const CMat psi = rng.random_state(10);
    const SuperOp lb = SuperOp::left(lad.b);
    const SuperOp rb = SuperOp::right(lad.b);
    // (Left(b) o Right(b)) psi = b psi b, exactly
    const HSOperator via_super = (lb * rb).apply(psi);
    const HSOperator direct = lad.b * psi * lad.b;
    CHECK((via_super - direct).frob_norm() < 1e-14); // reassociation roundoff only
    // commutativity
    const HSOperator other = (rb * lb).apply(psi);
    CHECK((via_super - other).frob_norm() < 1e-14);
}

TEST_CASE("P on |0><0| equals its definition unrolled") {
    const Truncation tr(8);
    const ModelParams p(1.0, 1.0, 0.2);
    const auto ops = qspace::position_momentum_ops(p, tr);
    const HSOperator vac = unit(8, 0, 0);
    const cxd c = cxd{0.0, -1.0} * p.hbar * std::sqrt(2.0 / p.theta);
    const HSOperator expect = c * (ops.b * vac - vac * ops.b);
    CHECK((ops.P.apply(vac) - expect).frob_norm() == 0.0);
}

TEST_CASE("Heisenberg algebra on edge-supported states") {
    GaussianRng rng(3);
    const Truncation tr(24);
    const ModelParams p(1.0, 1.0, 0.2);
    const auto ops = qspace::position_momentum_ops(p, tr);
    const CMat psi = edge_supported(rng, 24, 4);
    const cxd ih{0.0, 1.0};
    const CMat r1 =
        ops.X.apply(ops.Px.apply(psi)) - ops.Px.apply(ops.X.apply(psi)) - (ih * p.hbar) * psi;
    const CMat r2 =
        ops.Y.apply(ops.Py.apply(psi)) - ops.Py.apply(ops.Y.apply(psi)) - (ih * p.hbar) * psi;
    const CMat rxy =
        ops.X.apply(ops.Y.apply(psi)) - ops.Y.apply(ops.X.apply(psi)) - (ih * p.theta) * psi;
    CHECK(r1.frob_norm() < 1e-12);
    CHECK(r2.frob_norm() < 1e-12);
    CHECK(rxy.frob_norm() < 1e-12);
}

TEST_CASE("P^2 = Pdag P = P Pdag away from the edge") {
    GaussianRng rng(9);
    const Truncation tr(24);
    const ModelParams p(1.0, 1.0, 0.3);
    const auto ops = qspace::position_momentum_ops(p, tr);
    const CMat psi = edge_supported(rng, 24, 4);
    const CMat p2 = ops.Px.apply(ops.Px.apply(psi)) + ops.Py.apply(ops.Py.apply(psi));
    CHECK((p2 - ops.Pdag.apply(ops.P.apply(psi))).edge_norm(4) < 1e-10);
    CHECK((p2 - ops.P.apply(ops.Pdag.apply(psi))).edge_norm(4) < 1e-10);
}

TEST_CASE("X, Y, Px, Py are ddagger-hermitian on edge-supported pairs") {
    GaussianRng rng(13);
    const Truncation tr(20);
    const ModelParams p(1.0, 1.0, 0.2);
    const auto ops = qspace::position_momentum_ops(p, tr);
    const CMat phi = edge_supported(rng, 20, 4);
    const CMat psi = edge_supported(rng, 20, 4);
    for (const SuperOp* op : {&ops.X, &ops.Y, &ops.Px, &ops.Py}) {
        const cxd lhs = qspace::hs_inner(op->apply(phi), psi);
        const cxd rhs = qspace::hs_inner(phi, op->apply(psi));
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("adjoint() matches hs_inner pairing exactly") {
    GaussianRng rng(17);
    const Truncation tr(12);
    const auto lad = fock::build_ladder(tr);
    SuperOp op = cxd{0.3, 0.7} * (SuperOp::left(lad.b) * SuperOp::right(lad.b_dag));
    op += cxd{-1.0, 0.2} * SuperOp::right(lad.b);
    const SuperOp adj = op.adjoint();
    const CMat phi = rng.random_state(12);
    const CMat psi = rng.random_state(12);
    const cxd lhs = qspace::hs_inner(op.apply(phi), psi);
    const cxd rhs = qspace::hs_inner(phi, adj.apply(psi));
    CHECK(std::abs(lhs - rhs) < 1e-14);
}

TEST_CASE("dense materialization agrees with factored application") {
    GaussianRng rng(23);
    const Truncation tr(6);
    const auto lad = fock::build_ladder(tr);
    SuperOp op = cxd{0.5, -0.25} * (SuperOp::left(lad.b_dag) * SuperOp::right(lad.b));
    op += cxd{1.5, 0.0} * SuperOp::left(lad.b * lad.b);
    op -= cxd{0.0, 2.0} * SuperOp::identity();
    const CMat d = op.dense(tr);
    const CMat psi = rng.random_state(6);
    CVec v(36);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) v[i * 6 + j] = psi(i, j);
    const CVec dv = d.mul_vec(v);
    const CMat expect = op.apply(psi);
    double worst = 0.0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) worst = std::max(worst, std::abs(dv[i * 6 + j] - expect(i, j)));
    CHECK(worst < 1e-14);
}

TEST_CASE("dimension mismatch raises") {
    const Truncation tr(4);
    const auto lad = fock::build_ladder(tr);
    CHECK_THROWS_AS(SuperOp::left(lad.b).apply(CMat(6)), DimensionMismatch);
    CHECK_THROWS_AS(qspace::hs_inner(CMat(3), CMat(5)), DimensionMismatch);
}

TEST_CASE("ModelParams validation and time scale") {
    CHECK_THROWS_AS(ModelParams(1.0, 1.0, -0.1), DomainError);
    CHECK_THROWS_AS(ModelParams(0.0, 1.0, 0.1), DomainError);
    const ModelParams p(2.0, 0.5, 0.2);
    CHECK(p.time_scale() == doctest::Approx(2.0 * 0.2 / 0.5));
}

} // TEST_SUITE
