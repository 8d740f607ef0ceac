#ifndef FRDEALIAS_BASIS_HPP
#define FRDEALIAS_BASIS_HPP

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "linalg.hpp"
#include "quadrature.hpp"

namespace frdealias {

/// P'_n(x), valid at the endpoints as well.
inline double legendre_deriv(int n, double x) {
    if (n == 0) return 0.0;
    if (std::abs(std::abs(x) - 1.0) < 1e-14) {
        const double sign = (x > 0.0) ? 1.0 : ((n % 2 == 0) ? -1.0 : 1.0);
        return sign * 0.5 * n * (n + 1.0);
    }
    return legendre_with_deriv(n, x).second;
}

/// Orthonormal Legendre basis on [-1,1]: psi_k = sqrt(k + 1/2) P_k.
inline double ortho_legendre(int k, double x) {
    return std::sqrt(k + 0.5) * legendre(k, x);
}

/// Barycentric weights of a 1D node set.
inline std::vector<double> barycentric_weights(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<double> w(n, 1.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            if (k != j) w[j] /= (x[j] - x[k]);
    return w;
}

/// Values of all Lagrange cardinal functions of the node set x at point y.
inline std::vector<double> lagrange_at(const std::vector<double>& x,
                                       const std::vector<double>& w, double y) {
    const std::size_t n = x.size();
    std::vector<double> l(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(y - x[j]) < 1e-14) {
            l[j] = 1.0;
            return l;
        }
    }
    double denom = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        l[j] = w[j] / (y - x[j]);
        denom += l[j];
    }
    for (auto& v : l) v /= denom;
    return l;
}

/// Row-per-target interpolation matrix from nodes x to points y.
inline Matrix interpolation_matrix(const std::vector<double>& x,
                                   const std::vector<double>& y) {
    const auto w = barycentric_weights(x);
    Matrix m(y.size(), x.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const auto l = lagrange_at(x, w, y[i]);
        for (std::size_t j = 0; j < x.size(); ++j) m(i, j) = l[j];
    }
    return m;
}

/// Nodal differentiation matrix of the node set x (barycentric form).
inline Matrix differentiation_matrix(const std::vector<double>& x) {
    const std::size_t n = x.size();
    const auto w = barycentric_weights(x);
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        double diag = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            d(i, j) = (w[j] / w[i]) / (x[i] - x[j]);
            diag -= d(i, j);
        }
        d(i, i) = diag;
    }
    return d;
}

/// Tensor application of 1D operators (possibly rectangular) to a 2D field
/// stored row-major with the xi index fastest: out = (Ay kron Ax) in.
inline std::vector<double> kron_apply(const Matrix& ax, const Matrix& ay,
                                      std::span<const double> in, int nx, int ny) {
    if (static_cast<int>(ax.cols()) != nx || static_cast<int>(ay.cols()) != ny)
        throw std::invalid_argument("kron_apply: shape mismatch");
    const int mx = static_cast<int>(ax.rows());
    const int my = static_cast<int>(ay.rows());
    std::vector<double> tmp(static_cast<std::size_t>(mx) * ny, 0.0);
    for (int j = 0; j < ny; ++j)
        for (int i2 = 0; i2 < mx; ++i2) {
            double s = 0.0;
            for (int i = 0; i < nx; ++i) s += ax(i2, i) * in[j * nx + i];
            tmp[j * mx + i2] = s;
        }
    std::vector<double> out(static_cast<std::size_t>(mx) * my, 0.0);
    for (int i2 = 0; i2 < mx; ++i2)
        for (int j2 = 0; j2 < my; ++j2) {
            double s = 0.0;
            for (int j = 0; j < ny; ++j) s += ay(j2, j) * tmp[j * mx + i2];
            out[j2 * mx + i2] = s;
        }
    return out;
}

enum class CorrectionScheme { DG };

/// Left DG (right-Radau based) correction function g_L and derivative;
/// g_L(-1) = 1, g_L(+1) = 0, g_R(xi) = g_L(-xi).
inline double dg_correction_left(int p, double xi) {
    const double sign = (p % 2 == 0) ? 1.0 : -1.0;
    return 0.5 * sign * (legendre(p, xi) - legendre(p + 1, xi));
}

inline double dg_correction_left_deriv(int p, double xi) {
    const double sign = (p % 2 == 0) ? 1.0 : -1.0;
    return 0.5 * sign * (legendre_deriv(p, xi) - legendre_deriv(p + 1, xi));
}

/// All per-order polynomial operators for a tensor-product reference element
/// on [-1,1]^dim. Immutable after construction.
class ReferenceElement {
public:
    ReferenceElement(int p, int dim, NodeFamily family,
                     CorrectionScheme scheme = CorrectionScheme::DG)
        : p_(p), dim_(dim), family_(family) {
        if (p < 0) throw std::invalid_argument("ReferenceElement: p must be >= 0");
        if (dim < 1 || dim > 2) throw std::invalid_argument("ReferenceElement: dim must be 1 or 2");
        if (scheme != CorrectionScheme::DG)
            throw std::invalid_argument("ReferenceElement: unsupported correction scheme");
        const int n = p + 1;
        // Lobatto needs >= 2 points; p = 0 falls back to the midpoint rule.
        rule_ = (family == NodeFamily::GaussLobatto && n >= 2) ? gauss_lobatto(n)
                                                               : gauss_legendre(n);
        vandermonde_ = Matrix(n, n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                vandermonde_(i, k) = ortho_legendre(k, rule_.nodes[i]);
        inv_vandermonde_ = vandermonde_.inverse();
        diff_ = differentiation_matrix(rule_.nodes);

        corr_left_.resize(n);
        corr_right_.resize(n);
        corr_deriv_left_.resize(n);
        corr_deriv_right_.resize(n);
        for (int i = 0; i < n; ++i) {
            const double xi = rule_.nodes[i];
            corr_left_[i] = dg_correction_left(p, xi);
            corr_right_[i] = dg_correction_left(p, -xi);
            corr_deriv_left_[i] = dg_correction_left_deriv(p, xi);
            corr_deriv_right_[i] = -dg_correction_left_deriv(p, -xi);
        }

        const auto bw = barycentric_weights(rule_.nodes);
        face_left_ = lagrange_at(rule_.nodes, bw, -1.0);
        face_right_ = lagrange_at(rule_.nodes, bw, 1.0);

        mode_orders_.resize(num_modes());
        for (int m = 0; m < num_modes(); ++m) {
            if (dim == 1) {
                mode_orders_[m] = m;
            } else {
                mode_orders_[m] = std::max(m % n, m / n);
            }
        }
    }

    int order() const { return p_; }
    int dim() const { return dim_; }
    NodeFamily family() const { return family_; }
    const QuadratureRule& solution_rule() const { return rule_; }
    int nodes_per_dir() const { return p_ + 1; }
    int num_nodes() const { return dim_ == 1 ? p_ + 1 : (p_ + 1) * (p_ + 1); }
    int num_modes() const { return num_nodes(); }
    int face_points() const { return dim_ == 1 ? 1 : p_ + 1; }

    const Matrix& vandermonde_1d() const { return vandermonde_; }
    const Matrix& inv_vandermonde_1d() const { return inv_vandermonde_; }
    const Matrix& diff_matrix_1d() const { return diff_; }

    /// Correction-function values/derivatives at the 1D solution nodes.
    const std::vector<double>& corr_left() const { return corr_left_; }
    const std::vector<double>& corr_right() const { return corr_right_; }
    const std::vector<double>& corr_deriv_left() const { return corr_deriv_left_; }
    const std::vector<double>& corr_deriv_right() const { return corr_deriv_right_; }

    /// Lagrange cardinal values at xi = -1 / xi = +1.
    const std::vector<double>& face_interp_left() const { return face_left_; }
    const std::vector<double>& face_interp_right() const { return face_right_; }

    /// Maximal per-direction degree of each (flattened) modal basis function.
    const std::vector<int>& mode_orders() const { return mode_orders_; }

    /// Flattened node index; i runs along xi, j along eta.
    int node_index(int i, int j = 0) const { return j * nodes_per_dir() + i; }

    /// Nodal values -> orthonormal-Legendre modal coefficients.
    std::vector<double> modal_transform(std::span<const double> nodal) const {
        if (static_cast<int>(nodal.size()) != num_nodes())
            throw std::invalid_argument("modal_transform: size mismatch");
        return apply_tensor(inv_vandermonde_, nodal);
    }

    /// Modal coefficients -> nodal values.
    std::vector<double> nodal_from_modal(std::span<const double> modal) const {
        if (static_cast<int>(modal.size()) != num_nodes())
            throw std::invalid_argument("nodal_from_modal: size mismatch");
        return apply_tensor(vandermonde_, modal);
    }

    /// Apply a square 1D operator along every tensor direction.
    std::vector<double> apply_tensor(const Matrix& op, std::span<const double> in) const {
        const int n = nodes_per_dir();
        std::vector<double> out(in.begin(), in.end());
        if (dim_ == 1) return op.apply(out);
        std::vector<double> line(n), res(n);
        // along xi
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) line[i] = out[node_index(i, j)];
            res = op.apply(line);
            for (int i = 0; i < n; ++i) out[node_index(i, j)] = res[i];
        }
        // along eta
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) line[j] = out[node_index(i, j)];
            res = op.apply(line);
            for (int j = 0; j < n; ++j) out[node_index(i, j)] = res[j];
        }
        return out;
    }

    /// Apply a square 1D operator along one tensor direction (0 = xi, 1 = eta).
    std::vector<double> apply_dir(const Matrix& op, std::span<const double> in, int dir) const {
        const int n = nodes_per_dir();
        std::vector<double> out(in.begin(), in.end());
        if (dim_ == 1) return op.apply(out);
        std::vector<double> line(n), res(n);
        if (dir == 0) {
            for (int j = 0; j < n; ++j) {
                for (int i = 0; i < n; ++i) line[i] = out[node_index(i, j)];
                res = op.apply(line);
                for (int i = 0; i < n; ++i) out[node_index(i, j)] = res[i];
            }
        } else {
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) line[j] = out[node_index(i, j)];
                res = op.apply(line);
                for (int j = 0; j < n; ++j) out[node_index(i, j)] = res[j];
            }
        }
        return out;
    }

private:
    int p_;
    int dim_;
    NodeFamily family_;
    QuadratureRule rule_;
    Matrix vandermonde_;
    Matrix inv_vandermonde_;
    Matrix diff_;
    std::vector<double> corr_left_, corr_right_;
    std::vector<double> corr_deriv_left_, corr_deriv_right_;
    std::vector<double> face_left_, face_right_;
    std::vector<int> mode_orders_;
};

/// Correction-derivative tables per reference face, as required for the
/// corrected-divergence assembly: the sign convention folds in the outward
/// reference normal so that div += [Fcommon_n - Fdisc_n] * table[node].
struct CorrectionDerivatives {
    std::vector<double> left;   // -g'_L at nodes
    std::vector<double> right;  // +g'_R at nodes
};

inline CorrectionDerivatives correction_derivatives(int p, CorrectionScheme scheme,
                                                    const std::vector<double>& nodes) {
    if (scheme != CorrectionScheme::DG)
        throw std::invalid_argument("correction_derivatives: unsupported scheme");
    CorrectionDerivatives cd;
    cd.left.resize(nodes.size());
    cd.right.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        cd.left[i] = -dg_correction_left_deriv(p, nodes[i]);
        cd.right[i] = -dg_correction_left_deriv(p, -nodes[i]);
    }
    return cd;
}

} // namespace frdealias

#endif
