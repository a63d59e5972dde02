#include "ncqm/qspace.hpp"

#include <cmath>

namespace ncqm::qspace {

cxd hs_inner(const HSOperator& phi, const HSOperator& psi) {
    return phi.frob_inner(psi);
}

SuperOp SuperOp::identity() {
    SuperOp op;
    op.terms_.push_back({cxd{1.0, 0.0}, {}});
    return op;
}

SuperOp SuperOp::left(CMat m) {
    SuperOp op;
    op.terms_.push_back({cxd{1.0, 0.0}, {{true, std::make_shared<CMat>(std::move(m))}}});
    return op;
}

SuperOp SuperOp::right(CMat m) {
    SuperOp op;
    op.terms_.push_back({cxd{1.0, 0.0}, {{false, std::make_shared<CMat>(std::move(m))}}});
    return op;
}

SuperOp& SuperOp::operator+=(const SuperOp& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    return *this;
}

SuperOp& SuperOp::operator-=(const SuperOp& o) {
    for (Term t : o.terms_) {
        t.coeff = -t.coeff;
        terms_.push_back(std::move(t));
    }
    return *this;
}

SuperOp& SuperOp::operator*=(cxd s) {
    for (Term& t : terms_) t.coeff *= s;
    return *this;
}

SuperOp operator*(const SuperOp& a, const SuperOp& b) {
    SuperOp c;
    for (const SuperOp::Term& ta : a.terms_) {
        for (const SuperOp::Term& tb : b.terms_) {
            SuperOp::Term t;
            t.coeff = ta.coeff * tb.coeff;
            t.factors = ta.factors;
            t.factors.insert(t.factors.end(), tb.factors.begin(), tb.factors.end());
            c.terms_.push_back(std::move(t));
        }
    }
    return c;
}

HSOperator SuperOp::apply(const HSOperator& psi) const {
    HSOperator acc(psi.n());
    for (const Term& t : terms_) {
        HSOperator cur = psi;
        for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) {
            if (it->m->n() != cur.n())
                throw DimensionMismatch("SuperOp::apply: factor size mismatch");
            cur = it->left ? (*it->m) * cur : cur * (*it->m);
        }
        cur *= t.coeff;
        acc += cur;
    }
    return acc;
}

SuperOp SuperOp::adjoint() const {
    SuperOp a;
    for (const Term& t : terms_) {
        Term s;
        s.coeff = std::conj(t.coeff);
        for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it)
            s.factors.push_back({it->left, std::make_shared<CMat>(it->m->dagger())});
        a.terms_.push_back(std::move(s));
    }
    return a;
}

CMat SuperOp::dense(const Truncation& tr) const {
    const int n = tr.n;
    const int nn = n * n;
    // Left(A) = A (x) I, Right(C) = I (x) C^T on vec(psi) with index i*n+j.
    auto dense_factor = [&](const Factor& f) {
        CMat d(nn);
        const CMat& m = *f.m;
        if (f.left) {
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k) {
                    const cxd v = m(i, k);
                    if (v == cxd{0.0, 0.0}) continue;
                    for (int j = 0; j < n; ++j) d(i * n + j, k * n + j) = v;
                }
        } else {
            for (int l = 0; l < n; ++l)
                for (int j = 0; j < n; ++j) {
                    const cxd v = m(l, j);
                    if (v == cxd{0.0, 0.0}) continue;
                    for (int i = 0; i < n; ++i) d(i * n + j, i * n + l) = v;
                }
        }
        return d;
    };

    CMat total(nn);
    for (const Term& t : terms_) {
        CMat cur = CMat::identity(nn);
        bool first = true;
        for (const Factor& f : t.factors) {
            CMat fd = dense_factor(f);
            cur = first ? std::move(fd) : cur * fd;
            first = false;
        }
        cur *= t.coeff;
        total += cur;
    }
    return total;
}

OperatorBundle position_momentum_ops(const ModelParams& p, const Truncation& tr) {
    const auto lad = fock::build_ladder(tr);
    const double s = std::sqrt(p.theta / 2.0);
    const cxd i{0.0, 1.0};

    OperatorBundle ops;
    ops.b = lad.b;
    ops.b_dag = lad.b_dag;
    ops.B_L = SuperOp::left(lad.b);
    ops.B_Ldag = SuperOp::left(lad.b_dag);
    ops.B_R = SuperOp::right(lad.b);
    ops.B_Rdag = SuperOp::right(lad.b_dag);

    // x^ = sqrt(theta/2)(b + b^dag), y^ = -i sqrt(theta/2)(b - b^dag)
    CMat xm = lad.b + lad.b_dag;
    xm *= cxd{s, 0.0};
    CMat ym = lad.b - lad.b_dag;
    ym *= -i * s;

    ops.X = SuperOp::left(xm);
    ops.Y = SuperOp::left(ym);
    // Px = (hbar/theta)[y^, .], Py = -(hbar/theta)[x^, .]
    const double ht = p.hbar / p.theta;
    ops.Px = cxd{ht, 0.0} * (SuperOp::left(ym) - SuperOp::right(ym));
    ops.Py = cxd{-ht, 0.0} * (SuperOp::left(xm) - SuperOp::right(xm));
    // P = -i hbar sqrt(2/theta)[b, .], Pdag = +i hbar sqrt(2/theta)[b^dag, .]
    const double c = p.hbar * std::sqrt(2.0 / p.theta);
    ops.P = (-i * c) * (SuperOp::left(lad.b) - SuperOp::right(lad.b));
    ops.Pdag = (i * c) * (SuperOp::left(lad.b_dag) - SuperOp::right(lad.b_dag));
    return ops;
}

} // namespace ncqm::qspace
