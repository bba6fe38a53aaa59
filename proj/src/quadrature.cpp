#include "telefid/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>

namespace telefid::quad {

namespace {

Rule1D compute_legendre(int n)
{
    Rule1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

// Golub-Welsch on the Hermite Jacobi matrix, then Newton polish of each node
// with the orthonormal recurrence.
Rule1D compute_hermite(int n)
{
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        J(k, k - 1) = std::sqrt(k / 2.0);
        J(k - 1, k) = std::sqrt(k / 2.0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    Rule1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pi_quarter = std::pow(M_PI, -0.25);
    for (int i = 0; i < n; ++i) {
        double z = es.eigenvalues()(i);
        double pn = 0.0, pn1 = 0.0;
        for (int it = 0; it < 20; ++it) {
            // orthonormal Hermite functions without the Gaussian factor
            double h0 = pi_quarter, h1 = 0.0;
            double prev = 0.0;
            for (int k = 1; k <= n; ++k) {
                h1 = z * std::sqrt(2.0 / k) * h0 - std::sqrt((k - 1.0) / k) * prev;
                prev = h0;
                h0 = h1;
            }
            pn = h0;      // h_n
            pn1 = prev;   // h_{n-1}
            const double deriv = std::sqrt(2.0 * n) * pn1;
            const double dz = pn / deriv;
            z -= dz;
            if (std::abs(dz) < 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        double h0 = pi_quarter, prev = 0.0;
        for (int k = 1; k < n; ++k) {
            const double h1 = z * std::sqrt(2.0 / k) * h0 - std::sqrt((k - 1.0) / k) * prev;
            prev = h0;
            h0 = h1;
        }
        rule.nodes[i] = z;
        rule.weights[i] = 1.0 / (n * h0 * h0);
    }
    return rule;
}

}  // namespace

Rule1D gauss_legendre(int n)
{
    if (n < 1) throw ParameterError("Gauss-Legendre order must be positive");
    static const Rule1D gl16 = compute_legendre(16);
    if (n == 16) return gl16;
    return compute_legendre(n);
}

Rule1D gauss_hermite(int n)
{
    if (n < 1) throw ParameterError("Gauss-Hermite order must be positive");
    static const Rule1D gh60 = compute_hermite(60);
    if (n == 60) return gh60;
    return compute_hermite(n);
}

Rule1D composite_legendre(double a, double b, int panels, int order)
{
    if (panels < 1) throw ParameterError("panel count must be positive");
    const Rule1D base = gauss_legendre(order);
    Rule1D out;
    out.nodes.reserve(std::size_t(panels) * order);
    out.weights.reserve(std::size_t(panels) * order);
    const double h = (b - a) / panels;
    for (int k = 0; k < panels; ++k) {
        const double mid = a + (k + 0.5) * h;
        for (int i = 0; i < order; ++i) {
            out.nodes.push_back(mid + 0.5 * h * base.nodes[i]);
            out.weights.push_back(0.5 * h * base.weights[i]);
        }
    }
    return out;
}

}  // namespace telefid::quad
