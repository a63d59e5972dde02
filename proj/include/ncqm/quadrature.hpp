#pragma once

#include "ncqm/errors.hpp"

#include <vector>

namespace ncqm::quad {

struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Hermite rule for the weight e^{-x^2} on (-inf, inf), physicists'
// convention (sum w_i = sqrt(pi)). Golub-Welsch on the Jacobi matrix.
Rule1D gauss_hermite(int order);

// Midpoint rule on [-radius, radius] with the given spacing; nodes symmetric
// about 0, weights = spacing.
Rule1D uniform_segment(double radius, double spacing);

// Fraction of int |w|^{2n} e^{-|w|^2} d2w / (pi n!) lying beyond |w| = R,
// i.e. the regularized upper incomplete gamma Q(n+1, R^2). Used to size
// quadrature discs against coherent-monomial tails.
double radial_tail(int n, double radius);

enum class Scheme { GaussHermite, Uniform };

// A product grid over one complex variable (two real axes).
struct QuadratureGrid {
    Scheme scheme = Scheme::GaussHermite;
    int order = 40;        // nodes per real axis (Gauss-Hermite)
    double extent = 0.0;   // disc radius (uniform)
    double spacing = 0.25; // uniform spacing

    static QuadratureGrid gauss_hermite_default(int order = 40) {
        QuadratureGrid g;
        g.scheme = Scheme::GaussHermite;
        g.order = order;
        return g;
    }
    static QuadratureGrid uniform_disc(double radius, double spacing = 0.25) {
        QuadratureGrid g;
        g.scheme = Scheme::Uniform;
        g.extent = radius;
        g.spacing = spacing;
        return g;
    }

    Rule1D axis_rule() const {
        if (scheme == Scheme::GaussHermite) return gauss_hermite(order);
        return uniform_segment(extent, spacing);
    }
};

} // namespace ncqm::quad
