#include "ncqm/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace ncqm::quad {

namespace {

// orthonormal Hermite values p_0..p_{n} at x (weight e^{-x^2});
// p_{k+1} = (x p_k - sqrt(k/2) p_{k-1}) / sqrt((k+1)/2)
void orthonormal_hermite(int n, double x, std::vector<double>& p) {
    p.resize(n + 1);
    p[0] = 0.75112554446494248286; // pi^{-1/4}
    if (n == 0) return;
    p[1] = std::sqrt(2.0) * x * p[0];
    for (int k = 1; k < n; ++k)
        p[k + 1] = (x * p[k] - std::sqrt(k / 2.0) * p[k - 1]) / std::sqrt((k + 1) / 2.0);
}

} // namespace

Rule1D gauss_hermite(int order) {
    if (order < 1) throw DomainError("gauss_hermite: order must be >= 1");
    // Nodes from the Jacobi matrix (absolutely accurate); weights from the
    // Christoffel sum 1/sum_k p_k(x)^2, which keeps full relative accuracy
    // even for the exponentially small outer weights. Eigenvector-based
    // weights only carry absolute eps^2 accuracy, which poisons integrands
    // that grow like e^{|x|^2} before weighting.
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        const double off = std::sqrt(k / 2.0);
        J(k, k - 1) = off;
        J(k - 1, k) = off;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
    Rule1D r;
    r.nodes.resize(order);
    r.weights.resize(order);
    std::vector<double> p;
    for (int k = 0; k < order; ++k) {
        double x = es.eigenvalues()(k);
        // one Newton polish: f = p_order, f' via the derivative identity
        for (int it = 0; it < 2; ++it) {
            orthonormal_hermite(order, x, p);
            const double deriv = std::sqrt(2.0 * order) * p[order - 1];
            if (deriv != 0.0) x -= p[order] / deriv;
        }
        orthonormal_hermite(order - 1, x, p);
        double s = 0.0;
        for (int j = 0; j < order; ++j) s += p[j] * p[j];
        r.nodes[k] = x;
        r.weights[k] = 1.0 / s;
    }
    return r;
}

Rule1D uniform_segment(double radius, double spacing) {
    if (radius <= 0 || spacing <= 0)
        throw DomainError("uniform_segment: radius and spacing must be positive");
    const int half = static_cast<int>(std::floor(radius / spacing + 1e-12));
    Rule1D r;
    for (int k = -half; k <= half; ++k) {
        r.nodes.push_back(k * spacing);
        r.weights.push_back(spacing);
    }
    return r;
}

double radial_tail(int n, double radius) {
    // Q(n+1, x) = e^{-x} sum_{k=0}^{n} x^k/k!
    const double x = radius * radius;
    double term = std::exp(-x);
    double sum = term;
    for (int k = 1; k <= n; ++k) {
        term *= x / k;
        sum += term;
    }
    return sum;
}

} // namespace ncqm::quad
