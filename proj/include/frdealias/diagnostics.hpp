#ifndef FRDEALIAS_DIAGNOSTICS_HPP
#define FRDEALIAS_DIAGNOSTICS_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "basis.hpp"
#include "mesh.hpp"
#include "physics.hpp"
#include "state.hpp"

namespace frdealias {

/// Quadrature-weighted integral of each conserved variable over the domain,
/// using the element's own solution rule (exact for the nodal polynomial).
inline std::vector<double> conserved_totals(const SolutionState& state, const Mesh& mesh,
                                            const ReferenceElement& elem) {
    const int nv = state.nvar();
    const int n = elem.nodes_per_dir();
    const auto& w = elem.solution_rule().weights;
    std::vector<double> tot(nv, 0.0);
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const double det = mesh.geometry[e].det;
        for (int i = 0; i < elem.num_nodes(); ++i) {
            const double wi = state.dim == 1 ? w[i] : w[i % n] * w[i / n];
            for (int v = 0; v < nv; ++v) tot[v] += wi * det * state.node(e, i)[v];
        }
    }
    return tot;
}

/// Analytic field: conserved state at a physical point and time.
using AnalyticField = std::function<StateVec(Vec2, double)>;

/// Per-variable L2 norms of (u_h - analytic), integrated with a dedicated
/// Gauss-Legendre rule of p+2 points per direction (degree 2p+3).
inline std::vector<double> l2_error(const SolutionState& state, const AnalyticField& exact,
                                    const Mesh& mesh, const ReferenceElement& elem) {
    const int nv = state.nvar();
    const int n = elem.nodes_per_dir();
    const auto rule = gauss_legendre(elem.order() + 2);
    const Matrix interp = interpolation_matrix(elem.solution_rule().nodes, rule.nodes);
    const int q = static_cast<int>(rule.nodes.size());
    const int nq = state.dim == 1 ? q : q * q;
    std::vector<double> acc(nv, 0.0);
    std::vector<double> var(elem.num_nodes()), uq(static_cast<std::size_t>(nq) * nv);
    for (int e = 0; e < mesh.num_elements(); ++e) {
        for (int v = 0; v < nv; ++v) {
            for (int i = 0; i < elem.num_nodes(); ++i) var[i] = state.node(e, i)[v];
            const auto vals = state.dim == 1 ? interp.apply(var)
                                             : kron_apply(interp, interp, var, n, n);
            for (int j = 0; j < nq; ++j) uq[j * nv + v] = vals[j];
        }
        const double det = mesh.geometry[e].det;
        for (int j = 0; j < nq; ++j) {
            const double xi = rule.nodes[j % q];
            const double eta = state.dim == 1 ? 0.0 : rule.nodes[j / q];
            const double wj = state.dim == 1 ? rule.weights[j]
                                             : rule.weights[j % q] * rule.weights[j / q];
            const StateVec ue = exact(mesh.map_to_physical(e, xi, eta), state.time);
            for (int v = 0; v < nv; ++v) {
                const double d = uq[j * nv + v] - ue[v];
                acc[v] += wj * det * d * d;
            }
        }
    }
    for (auto& a : acc) a = std::sqrt(a);
    return acc;
}

struct WallForces {
    double cl = 0.0;
    double cd = 0.0;
    // Surface pressure coefficient samples: position and C_p.
    std::vector<Vec2> points;
    std::vector<double> cp;
};

/// Freestream reference quantities for force nondimensionalization.
struct ForceReference {
    double rho = 1.0;
    double speed = 1.0;
    double pressure = 1.0;
    double length = 1.0;
    double dynamic_pressure() const { return 0.5 * rho * speed * speed; }
};

/// Pressure + viscous traction integral over all boundary faces with the
/// given tag (2D). The velocity gradient is the element-local collocation
/// derivative of the nodal solution.
inline WallForces wall_forces(const SolutionState& state, const Mesh& mesh,
                              const ReferenceElement& elem, const GasModel& gas,
                              const std::string& tag, const ForceReference& ref = {}) {
    if (state.dim != 2) throw std::invalid_argument("wall_forces: 2D only");
    const int nv = state.nvar();
    const int n = elem.nodes_per_dir();
    const auto& w1 = elem.solution_rule().weights;
    WallForces out;
    double fx = 0.0, fy = 0.0;
    bool found = false;
    std::vector<double> var(elem.num_nodes());
    for (const auto& bf : mesh.boundary_faces) {
        if (bf.tag != tag) continue;
        found = true;
        const auto& g = mesh.geometry[bf.elem];
        const Vec2 nrm = g.face_normal[bf.face];
        const int ndir = bf.face / 2;
        const bool high = bf.face % 2 == 1;
        const auto& interp = high ? elem.face_interp_right() : elem.face_interp_left();
        // Element-local physical gradient of each variable.
        std::vector<double> dxi(elem.num_nodes()), deta(elem.num_nodes());
        std::vector<double> gx(static_cast<std::size_t>(elem.num_nodes()) * nv);
        std::vector<double> gy(gx.size());
        for (int v = 0; v < nv; ++v) {
            for (int i = 0; i < elem.num_nodes(); ++i) var[i] = state.node(bf.elem, i)[v];
            dxi = elem.apply_dir(elem.diff_matrix_1d(), var, 0);
            deta = elem.apply_dir(elem.diff_matrix_1d(), var, 1);
            for (int i = 0; i < elem.num_nodes(); ++i) {
                gx[i * nv + v] = g.inv_jac[0][0] * dxi[i] + g.inv_jac[1][0] * deta[i];
                gy[i * nv + v] = g.inv_jac[0][1] * dxi[i] + g.inv_jac[1][1] * deta[i];
            }
        }
        for (int k = 0; k < elem.face_points(); ++k) {
            StateVec u{};
            GradVec grad{};
            for (int m = 0; m < n; ++m) {
                const int node = ndir == 0 ? elem.node_index(m, k) : elem.node_index(k, m);
                for (int v = 0; v < nv; ++v) {
                    u[v] += interp[m] * state.node(bf.elem, node)[v];
                    grad[0][v] += interp[m] * gx[node * nv + v];
                    grad[1][v] += interp[m] * gy[node * nv + v];
                }
            }
            const double p = pressure(u, gas, 2);
            // Traction on the wall: p n + tau . n (viscous_flux stores -tau
            // in the momentum rows).
            const StateVec gvn = viscous_normal_flux(u, grad, nrm, gas, 2);
            const double tx = p * nrm.x + gvn[1];
            const double ty = p * nrm.y + gvn[2];
            const double ds = w1[k] * g.face_scale[bf.face];
            fx += tx * ds;
            fy += ty * ds;
            const double xi = ndir == 0 ? (high ? 1.0 : -1.0) : elem.solution_rule().nodes[k];
            const double eta = ndir == 0 ? elem.solution_rule().nodes[k] : (high ? 1.0 : -1.0);
            out.points.push_back(mesh.map_to_physical(bf.elem, xi, eta));
            out.cp.push_back((p - ref.pressure) / ref.dynamic_pressure());
        }
    }
    if (!found) throw std::invalid_argument("wall_forces: no boundary faces tagged '" + tag + "'");
    const double denom = ref.dynamic_pressure() * ref.length;
    out.cd = fx / denom;
    out.cl = fy / denom;
    return out;
}

/// Uniformly sampled scalar time series.
struct TimeSeries {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<double> values;

    static TimeSeries from_samples(const std::vector<double>& times,
                                   const std::vector<double>& values) {
        if (times.size() != values.size() || times.size() < 2)
            throw std::invalid_argument("TimeSeries: need >= 2 matching samples");
        TimeSeries s;
        s.t0 = times[0];
        s.dt = times[1] - times[0];
        if (s.dt <= 0.0) throw std::invalid_argument("TimeSeries: non-increasing times");
        for (std::size_t i = 1; i < times.size(); ++i) {
            const double step = times[i] - times[i - 1];
            if (std::abs(step - s.dt) > 1e-12 * std::max(1.0, std::abs(s.dt)))
                throw std::invalid_argument("TimeSeries: non-uniform spacing at sample " +
                                            std::to_string(i));
        }
        s.values = values;
        return s;
    }
};

namespace detail {

/// In-place iterative radix-2 FFT; n must be a power of two.
inline void fft_pow2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft: length must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * M_PI / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const auto u = a[i + j];
                const auto v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

} // namespace detail

struct PowerSpectrum {
    std::vector<double> frequency;
    std::vector<double> power;
};

/// Welch's averaged periodogram: Hann-windowed segments of `window` samples
/// advanced by `shift`, one-sided, normalized so that the total power of a
/// stationary signal approximates its mean square.
inline PowerSpectrum welch_psd(const std::vector<double>& x, double sample_dt, int window,
                               int shift) {
    if (window < 2 || (window & (window - 1)) != 0)
        throw std::invalid_argument("welch_psd: window must be a power of two >= 2");
    if (shift < 1) throw std::invalid_argument("welch_psd: shift must be >= 1");
    if (static_cast<int>(x.size()) < window)
        throw std::invalid_argument("welch_psd: series shorter than window");
    if (sample_dt <= 0.0) throw std::invalid_argument("welch_psd: sample_dt must be > 0");

    std::vector<double> hann(window);
    double wsq = 0.0;
    for (int i = 0; i < window; ++i) {
        hann[i] = 0.5 * (1.0 - std::cos(2.0 * M_PI * i / (window - 1)));
        wsq += hann[i] * hann[i];
    }
    const int nbins = window / 2 + 1;
    PowerSpectrum ps;
    ps.frequency.resize(nbins);
    ps.power.assign(nbins, 0.0);
    const double fs = 1.0 / sample_dt;
    for (int k = 0; k < nbins; ++k) ps.frequency[k] = fs * k / window;

    std::vector<std::complex<double>> seg(window);
    int nseg = 0;
    for (int start = 0; start + window <= static_cast<int>(x.size()); start += shift) {
        for (int i = 0; i < window; ++i) seg[i] = x[start + i] * hann[i];
        detail::fft_pow2(seg);
        for (int k = 0; k < nbins; ++k) {
            double p = std::norm(seg[k]) / (static_cast<double>(window) * wsq);
            if (k != 0 && k != window / 2) p *= 2.0;  // fold the mirrored half
            ps.power[k] += p;
        }
        ++nseg;
    }
    for (auto& p : ps.power) p /= nseg;
    return ps;
}

} // namespace frdealias

#endif
