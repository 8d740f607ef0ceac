#ifndef FRDEALIAS_ANTIALIAS_HPP
#define FRDEALIAS_ANTIALIAS_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "basis.hpp"
#include "errors.hpp"
#include "mesh.hpp"
#include "physics.hpp"
#include "state.hpp"

namespace frdealias {

enum class AntialiasMode { None, OverIntegration, ModalFilter, EntropyFilter };

struct EntropyFilterTolerances {
    double constraint_tol = 1e-12;  // relative slack on the sigma_min bound
    double bisect_tol = 1e-4;       // absolute tolerance on zeta
    double zeta_max = 50.0;
};

struct AntialiasConfig {
    AntialiasMode mode = AntialiasMode::None;
    int oi_points = 0;       // quadrature points per direction (N_q >= N_s)
    double mf_kappa = 32.0;
    double mf_eta_c = 0.0;
    int mf_s = 8;
    int mf_every = 20;       // modal filter cadence in time steps
    EntropyFilterTolerances ef;
    // Entropy-bound reference for the per-stage filter pass. Default: the
    // sigma_min stencil minima come from the pre-filter stage state itself,
    // so an admissible element always passes at zeta = 0 and the entropy
    // bound constrains only the filtering action (the filter is exactly
    // transparent on resolved flows). When true, the minima come from the
    // previously formed stage state instead, enforcing a discrete minimum
    // entropy principle across the stage update at the cost of activating
    // on any advecting entropy gradient.
    bool ef_prev_stage_ref = false;

    void validate(int p) const {
        switch (mode) {
            case AntialiasMode::None:
                break;
            case AntialiasMode::OverIntegration:
                if (oi_points < p + 1)
                    throw std::invalid_argument("antialias: oi_points must be >= p+1");
                break;
            case AntialiasMode::ModalFilter:
                if (mf_kappa <= 0.0) throw std::invalid_argument("antialias: kappa must be > 0");
                if (mf_s < 2 || mf_s % 2 != 0)
                    throw std::invalid_argument("antialias: s must be even and >= 2");
                if (mf_every < 1)
                    throw std::invalid_argument("antialias: apply_every_n_steps must be >= 1");
                break;
            case AntialiasMode::EntropyFilter:
                if (ef.zeta_max <= 0.0)
                    throw std::invalid_argument("antialias: zeta_max must be > 0");
                break;
        }
    }
};

/// Exponential filter kernel H(eta) with cutoff eta_c and maximal order eta_m.
inline double modal_filter_kernel(double eta, double kappa, double eta_c, int s, double eta_m) {
    if (eta <= eta_c) return 1.0;
    return std::exp(-kappa * std::pow((eta - eta_c) / (eta_m - eta_c), s));
}

/// Multiply the modal coefficients of every conserved variable by a
/// per-mode kernel, in place on the element's nodal data.
inline void apply_modal_kernel(const ReferenceElement& elem, double* data, int nvar,
                               const std::vector<double>& kernel) {
    const int ns = elem.num_nodes();
    std::vector<double> var(ns);
    for (int v = 0; v < nvar; ++v) {
        for (int i = 0; i < ns; ++i) var[i] = data[i * nvar + v];
        auto modal = elem.modal_transform(var);
        for (int m = 0; m < ns; ++m) modal[m] *= kernel[m];
        const auto nodal = elem.nodal_from_modal(modal);
        for (int i = 0; i < ns; ++i) data[i * nvar + v] = nodal[i];
    }
}

/// Exponential modal filter with eta_m = p + 1.
inline void modal_filter(const ReferenceElement& elem, double* data, int nvar,
                         double kappa, double eta_c, int s) {
    const double eta_m = elem.order() + 1.0;
    std::vector<double> kernel(elem.num_modes());
    for (int m = 0; m < elem.num_modes(); ++m)
        kernel[m] = modal_filter_kernel(elem.mode_orders()[m], kappa, eta_c, s, eta_m);
    apply_modal_kernel(elem, data, nvar, kernel);
}

/// L2 projection of the flux onto the solution space, approximated with a
/// q-point-per-direction Gauss-Legendre rule; returns nodal values of the
/// projected flux polynomial at the solution points, per direction.
class OiProjector {
public:
    OiProjector(const ReferenceElement& elem, int q) : elem_(&elem), q_(q) {
        if (q < elem.nodes_per_dir())
            throw std::invalid_argument("OiProjector: N_q must be >= N_s per direction");
        const auto rule = gauss_legendre(q);
        qnodes_ = rule.nodes;
        interp_ = interpolation_matrix(elem.solution_rule().nodes, rule.nodes);
        const int n = elem.nodes_per_dir();
        proj_ = Matrix(n, q);
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < q; ++j)
                proj_(k, j) = rule.weights[j] * ortho_legendre(k, rule.nodes[j]);
    }

    int points_per_dir() const { return q_; }

    /// `data` is the element's nodal conserved values [node][var]; outputs
    /// nodal values of the projected flux per direction, [node][var].
    void project(const double* data, int dim, const GasModel& gas,
                 const InviscidFluxHook* hook,
                 std::array<std::vector<double>, 2>& out) const {
        const int n = elem_->nodes_per_dir();
        const int nv = num_vars(dim);
        const int nq = dim == 1 ? q_ : q_ * q_;
        const int ns = elem_->num_nodes();
        // Evaluate u_h at the quadrature grid.
        std::vector<double> uq(static_cast<std::size_t>(nq) * nv);
        std::vector<double> var(ns);
        for (int v = 0; v < nv; ++v) {
            for (int i = 0; i < ns; ++i) var[i] = data[i * nv + v];
            const auto q = dim == 1 ? interp_.apply(var) : kron_apply(interp_, interp_, var, n, n);
            for (int j = 0; j < nq; ++j) uq[j * nv + v] = q[j];
        }
        // Flux at quadrature points, then project each component.
        std::vector<double> fq(static_cast<std::size_t>(nq) * nv * dim);
        for (int j = 0; j < nq; ++j) {
            StateVec u{};
            for (int v = 0; v < nv; ++v) u[v] = uq[j * nv + v];
            const FluxVec f = hook ? hook->flux(u, dim) : inviscid_flux(u, gas, dim);
            for (int d = 0; d < dim; ++d)
                for (int v = 0; v < nv; ++v) fq[(d * nq + j) * nv + v] = f[d][v];
        }
        std::vector<double> comp(nq);
        for (int d = 0; d < dim; ++d) {
            out[d].assign(static_cast<std::size_t>(ns) * nv, 0.0);
            for (int v = 0; v < nv; ++v) {
                for (int j = 0; j < nq; ++j) comp[j] = fq[(d * nq + j) * nv + v];
                const auto modal =
                    dim == 1 ? proj_.apply(comp) : kron_apply(proj_, proj_, comp, q_, q_);
                const auto nodal = elem_->nodal_from_modal(modal);
                for (int i = 0; i < ns; ++i) out[d][i * nv + v] = nodal[i];
            }
        }
    }

private:
    const ReferenceElement* elem_;
    int q_;
    std::vector<double> qnodes_;
    Matrix interp_;  // solution nodes -> quadrature nodes, per direction
    Matrix proj_;    // quadrature values -> modal coefficients, per direction
};

/// Minimum discrete entropy over the solution nodes of an element and its
/// face-adjacent (Voronoi) neighbors.
inline double compute_sigma_min(int elem, const SolutionState& state, const Mesh& mesh,
                                const GasModel& gas) {
    double s = std::numeric_limits<double>::infinity();
    auto scan = [&](int e) {
        for (int i = 0; i < state.num_nodes; ++i)
            s = std::min(s, entropy_or_lowest(state.get(e, i), gas, state.dim));
    };
    scan(elem);
    for (int nb : mesh.voronoi_neighbors[elem]) scan(nb);
    return s;
}

struct FilterReport {
    int element = -1;
    double zeta = 0.0;
    double min_rho = 0.0;
    double min_p = 0.0;
    double min_sigma_slack = 0.0;  // min over nodes of sigma - sigma_min
    double sigma_min = 0.0;        // entropy bound the element was held to
    int iterations = 0;
};

namespace detail {

struct ConstraintCheck {
    bool ok;
    double min_rho, min_p, min_sigma_slack;
};

inline ConstraintCheck check_constraints(const double* data, int ns, int nvar, int dim,
                                         const GasModel& gas, double sigma_min, double tol_abs) {
    ConstraintCheck c{true, std::numeric_limits<double>::infinity(),
                      std::numeric_limits<double>::infinity(),
                      std::numeric_limits<double>::infinity()};
    for (int i = 0; i < ns; ++i) {
        StateVec u{};
        for (int v = 0; v < nvar; ++v) u[v] = data[i * nvar + v];
        const double rho = u[0];
        const double p = rho > 0.0 ? pressure(u, gas, dim) : -1.0;
        const double sig = (rho > 0.0 && p > 0.0) ? p * std::pow(rho, -gas.gamma)
                                                  : -std::numeric_limits<double>::infinity();
        c.min_rho = std::min(c.min_rho, rho);
        c.min_p = std::min(c.min_p, p);
        c.min_sigma_slack = std::min(c.min_sigma_slack, sig - sigma_min);
        if (!(rho > 0.0) || !(p > 0.0) || !(sig >= sigma_min - tol_abs)) c.ok = false;
    }
    return c;
}

} // namespace detail

/// Adaptive second-order exponential filter: finds the smallest zeta such
/// that exp(-zeta eta_i^2) applied to all conserved variables yields nodal
/// rho > 0, P > 0, and sigma >= sigma_min - tol; filters in place.
inline FilterReport entropy_filter_element(const ReferenceElement& elem, const GasModel& gas,
                                           double* data, double sigma_min,
                                           const EntropyFilterTolerances& tol) {
    const int dim = elem.dim();
    const int nv = num_vars(dim);
    const int ns = elem.num_nodes();
    const double tol_abs = tol.constraint_tol * std::abs(sigma_min);

    FilterReport report;
    report.sigma_min = sigma_min;
    const auto at_zero = detail::check_constraints(data, ns, nv, dim, gas, sigma_min, tol_abs);
    if (at_zero.ok) {
        report.zeta = 0.0;
        report.min_rho = at_zero.min_rho;
        report.min_p = at_zero.min_p;
        report.min_sigma_slack = at_zero.min_sigma_slack;
        return report;
    }

    // Modal coefficients per variable; the zeta -> infinity limit is the mean.
    std::vector<std::vector<double>> modal(nv);
    std::vector<double> var(ns);
    for (int v = 0; v < nv; ++v) {
        for (int i = 0; i < ns; ++i) var[i] = data[i * nv + v];
        modal[v] = elem.modal_transform(var);
    }
    const double psi0 = std::pow(std::sqrt(0.5), dim);
    StateVec mean{};
    for (int v = 0; v < nv; ++v) mean[v] = modal[v][0] * psi0;
    if (!is_admissible(mean, gas, dim))
        throw admissibility_error("entropy filter: element mean state is inadmissible");

    std::vector<double> kernel(ns), filtered(static_cast<std::size_t>(ns) * nv);
    int iters = 0;
    auto evaluate = [&](double zeta) {
        ++iters;
        for (int m = 0; m < ns; ++m) {
            const double eta = elem.mode_orders()[m];
            kernel[m] = std::exp(-zeta * eta * eta);
        }
        for (int v = 0; v < nv; ++v) {
            std::vector<double> scaled(ns);
            for (int m = 0; m < ns; ++m) scaled[m] = modal[v][m] * kernel[m];
            const auto nodal = elem.nodal_from_modal(scaled);
            for (int i = 0; i < ns; ++i) filtered[i * nv + v] = nodal[i];
        }
        return detail::check_constraints(filtered.data(), ns, nv, dim, gas, sigma_min, tol_abs);
    };

    auto at_max = evaluate(tol.zeta_max);
    if (!at_max.ok)
        throw admissibility_error("entropy filter: constraints infeasible at zeta_max");

    double lo = 0.0, hi = tol.zeta_max;
    while (hi - lo > tol.bisect_tol) {
        const double mid = 0.5 * (lo + hi);
        if (evaluate(mid).ok)
            hi = mid;
        else
            lo = mid;
    }
    const auto final_check = evaluate(hi);
    std::copy(filtered.begin(), filtered.end(), data);

    report.zeta = hi;
    report.iterations = iters;
    report.min_rho = final_check.min_rho;
    report.min_p = final_check.min_p;
    report.min_sigma_slack = final_check.min_sigma_slack;
    return report;
}

/// Filter every element independently. sigma_min per element is computed
/// from `reference` (defaults to the pre-filter input state snapshot), so
/// the pass is order-independent.
inline std::vector<FilterReport> entropy_filter_pass(SolutionState& state, const Mesh& mesh,
                                                     const ReferenceElement& elem,
                                                     const GasModel& gas,
                                                     const EntropyFilterTolerances& tol,
                                                     const SolutionState* reference = nullptr) {
    const SolutionState& ref = reference ? *reference : state;
    const int ne = mesh.num_elements();
    // Per-element nodal entropy minimum of the reference snapshot.
    std::vector<double> own_min(ne);
    for (int e = 0; e < ne; ++e) {
        double s = std::numeric_limits<double>::infinity();
        for (int i = 0; i < ref.num_nodes; ++i)
            s = std::min(s, entropy_or_lowest(ref.get(e, i), gas, ref.dim));
        own_min[e] = s;
    }
    std::vector<FilterReport> reports(ne);
    const int nv = state.nvar();
    for (int e = 0; e < ne; ++e) {
        double sigma_min = own_min[e];
        for (int nb : mesh.voronoi_neighbors[e]) sigma_min = std::min(sigma_min, own_min[nb]);
        reports[e] = entropy_filter_element(elem, gas, state.node(e, 0), sigma_min, tol);
        reports[e].element = e;
    }
    return reports;
}

} // namespace frdealias

#endif
