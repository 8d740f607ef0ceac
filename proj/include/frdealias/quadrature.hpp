#ifndef FRDEALIAS_QUADRATURE_HPP
#define FRDEALIAS_QUADRATURE_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

namespace frdealias {

enum class NodeFamily { GaussLegendre, GaussLobatto };

/// Legendre polynomial P_n(x) and its derivative, by three-term recurrence.
inline std::pair<double, double> legendre_with_deriv(int n, double x) {
    if (n == 0) return {1.0, 0.0};
    double pm1 = 1.0, p = x;
    for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p - (k - 1.0) * pm1) / k;
        pm1 = p;
        p = pk;
    }
    // P'_n = n (x P_n - P_{n-1}) / (x^2 - 1), rewritten to avoid the poles
    // only where needed; nodes of interest are interior so |x| < 1.
    const double dp = n * (x * p - pm1) / (x * x - 1.0);
    return {p, dp};
}

inline double legendre(int n, double x) {
    if (n == 0) return 1.0;
    double pm1 = 1.0, p = x;
    for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p - (k - 1.0) * pm1) / k;
        pm1 = p;
        p = pk;
    }
    return p;
}

struct QuadratureRule {
    NodeFamily kind;
    int n = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule: roots of P_n by Newton iteration from Chebyshev
/// initial guesses. Exact for polynomials of degree <= 2n-1.
inline QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    QuadratureRule rule{NodeFamily::GaussLegendre, n, std::vector<double>(n), std::vector<double>(n)};
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = -std::cos(M_PI * (4.0 * i + 3.0) / (4.0 * n + 2.0));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            const auto [p, d] = legendre_with_deriv(n, x);
            dp = d;
            const double dx = p / d;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                dp = legendre_with_deriv(n, x).second;
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = x;
        rule.weights[i] = w;
        rule.nodes[n - 1 - i] = -x;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

/// Gauss-Lobatto rule: endpoints +-1 plus interior roots of P'_{n-1}.
/// Exact for polynomials of degree <= 2n-3.
inline QuadratureRule gauss_lobatto(int n) {
    if (n < 2) throw std::invalid_argument("gauss_lobatto: n must be >= 2");
    QuadratureRule rule{NodeFamily::GaussLobatto, n, std::vector<double>(n), std::vector<double>(n)};
    const int m = n - 1;
    rule.nodes.front() = -1.0;
    rule.nodes.back() = 1.0;
    const int half = (n + 1) / 2;
    for (int i = 1; i < half; ++i) {
        // Interlacing initial guess between Chebyshev-Lobatto points.
        double x = -std::cos(M_PI * i / m);
        for (int it = 0; it < 100; ++it) {
            // Newton on q(x) = P'_m(x); q' from the Legendre ODE:
            // (1-x^2) P''_m = 2x P'_m - m(m+1) P_m.
            const auto [p, dp] = legendre_with_deriv(m, x);
            const double d2p = (2.0 * x * dp - m * (m + 1.0) * p) / (1.0 - x * x);
            const double dx = dp / d2p;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = x;
        rule.nodes[n - 1 - i] = -x;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    for (int i = 0; i < n; ++i) {
        const double p = legendre(m, rule.nodes[i]);
        rule.weights[i] = 2.0 / (m * (m + 1.0) * p * p);
    }
    return rule;
}

inline QuadratureRule make_rule(NodeFamily kind, int n) {
    return kind == NodeFamily::GaussLegendre ? gauss_legendre(n) : gauss_lobatto(n);
}

} // namespace frdealias

#endif
