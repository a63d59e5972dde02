#pragma once

#include "ncqm/errors.hpp"
#include "ncqm/kernels.hpp"

#include <complex>
#include <vector>

namespace ncqm {

using cxd = std::complex<double>;
using CVec = std::vector<cxd>;

// Dense square complex matrix, row-major, value semantics. Arithmetic routes
// through the kern:: dispatch.
class CMat {
  public:
    CMat() = default;
    explicit CMat(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, cxd{0.0, 0.0}) {}

    static CMat identity(int n) {
        CMat m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int n() const { return n_; }
    cxd& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const cxd& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    cxd* data() { return a_.data(); }
    const cxd* data() const { return a_.data(); }
    std::size_t size() const { return a_.size(); }

    CMat& operator+=(const CMat& o) {
        check_same(o);
        kern::active().axpy(size(), cxd{1.0, 0.0}, o.data(), data());
        return *this;
    }
    CMat& operator-=(const CMat& o) {
        check_same(o);
        kern::active().axpy(size(), cxd{-1.0, 0.0}, o.data(), data());
        return *this;
    }
    CMat& operator*=(cxd s) {
        kern::active().scale(size(), s, data());
        return *this;
    }

    friend CMat operator+(CMat a, const CMat& b) { return a += b; }
    friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
    friend CMat operator*(cxd s, CMat a) { return a *= s; }

    friend CMat operator*(const CMat& a, const CMat& b) {
        a.check_same(b);
        CMat c(a.n_);
        kern::active().matmul(static_cast<std::size_t>(a.n_), a.data(), b.data(), c.data());
        return c;
    }

    CMat dagger() const {
        CMat d(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) d(j, i) = std::conj((*this)(i, j));
        return d;
    }

    // tr(this^dagger * other) -- the Frobenius / Hilbert-Schmidt pairing.
    cxd frob_inner(const CMat& o) const {
        check_same(o);
        return kern::active().cdotc(size(), data(), o.data());
    }

    double frob_norm_sq() const { return kern::active().nrm2sq(size(), data()); }
    double frob_norm() const;

    // Frobenius norm with the top `margin` rows and columns excluded; used to
    // quarantine the Fock-truncation boundary when asserting operator
    // identities that only hold in the untruncated algebra.
    double edge_norm(int margin) const {
        double s = 0.0;
        const int lim = n_ - margin;
        for (int i = 0; i < lim; ++i)
            for (int j = 0; j < lim; ++j) s += std::norm((*this)(i, j));
        return sqrt_(s);
    }

    // y = this * x
    CVec mul_vec(const CVec& x) const {
        if (static_cast<int>(x.size()) != n_)
            throw DimensionMismatch("CMat::mul_vec: size mismatch");
        CVec y(n_);
        for (int i = 0; i < n_; ++i)
            y[i] = kern::active().cdotu(static_cast<std::size_t>(n_), data() + static_cast<std::size_t>(i) * n_, x.data());
        return y;
    }

    // row vector a with a_j = sum_i conj(u_i) * this(i,j), i.e. u^dagger * this
    CVec left_mul_conj(const CVec& u) const {
        if (static_cast<int>(u.size()) != n_)
            throw DimensionMismatch("CMat::left_mul_conj: size mismatch");
        CVec a(n_, cxd{0.0, 0.0});
        for (int i = 0; i < n_; ++i)
            kern::active().axpy(static_cast<std::size_t>(n_), std::conj(u[i]),
                                data() + static_cast<std::size_t>(i) * n_, a.data());
        return a;
    }

  private:
    static double sqrt_(double v);
    void check_same(const CMat& o) const {
        if (n_ != o.n_) throw DimensionMismatch("CMat: mismatched dimensions");
    }

    int n_ = 0;
    CVec a_;
};

inline cxd vdot(const CVec& x, const CVec& y) {
    if (x.size() != y.size()) throw DimensionMismatch("vdot: size mismatch");
    return kern::active().cdotc(x.size(), x.data(), y.data());
}

inline double vnorm_sq(const CVec& x) { return kern::active().nrm2sq(x.size(), x.data()); }

// rank-1 outer product u * w^dagger
CMat outer(const CVec& u, const CVec& w);

} // namespace ncqm
