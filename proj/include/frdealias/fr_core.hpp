#ifndef FRDEALIAS_FR_CORE_HPP
#define FRDEALIAS_FR_CORE_HPP

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "antialias.hpp"
#include "basis.hpp"
#include "errors.hpp"
#include "mesh.hpp"
#include "physics.hpp"
#include "state.hpp"

namespace frdealias {

/// Semi-discrete flux-reconstruction residual on a fixed mesh/element pair.
/// Assembly runs in two phases: all face common fluxes first, then the
/// element-local corrected divergence, so elements can be processed
/// independently within each phase.
class FrSolver {
public:
    FrSolver(const Mesh& mesh, const ReferenceElement& elem, GasModel gas,
             std::vector<BoundaryCondition> bcs, AntialiasConfig antialias = {})
        : mesh_(&mesh), elem_(&elem), gas_(gas), aa_(antialias) {
        if (mesh.dim != elem.dim())
            throw std::invalid_argument("FrSolver: mesh/element dimension mismatch");
        aa_.validate(elem.order());
        if (aa_.mode == AntialiasMode::OverIntegration)
            oi_.emplace(elem, aa_.oi_points);
        for (auto& bc : bcs) bcs_[bc.tag] = bc;
        for (const auto& bf : mesh.boundary_faces) {
            const auto it = bcs_.find(bf.tag);
            if (it == bcs_.end())
                throw std::invalid_argument("FrSolver: no boundary condition for tag '" + bf.tag + "'");
            boundary_bc_.push_back(&it->second);
        }
        // (element, local face) -> common-flux storage slot.
        face_refs_.assign(mesh.num_elements(), {});
        for (std::size_t i = 0; i < mesh.interior_faces.size(); ++i) {
            const auto& f = mesh.interior_faces[i];
            face_refs_[f.elem_l][f.face_l] = {false, static_cast<int>(i), false, false};
            face_refs_[f.elem_r][f.face_r] = {false, static_cast<int>(i), true, f.flip};
        }
        for (std::size_t i = 0; i < mesh.boundary_faces.size(); ++i) {
            const auto& f = mesh.boundary_faces[i];
            face_refs_[f.elem][f.face] = {true, static_cast<int>(i), false, false};
        }
        const int p = elem.order();
        corr_at_face_left_ = dg_correction_left_deriv(p, -1.0);   // g'_L(-1)
        corr_at_face_right_ = -dg_correction_left_deriv(p, -1.0); // g'_R(+1)
    }

    const Mesh& mesh() const { return *mesh_; }
    const ReferenceElement& element() const { return *elem_; }
    const GasModel& gas() const { return gas_; }
    const AntialiasConfig& antialias() const { return aa_; }

    void set_flux_hook(InviscidFluxHook hook) { hook_ = std::move(hook); }
    void clear_flux_hook() { hook_.reset(); }

    SolutionState make_state() const {
        return SolutionState(mesh_->dim, mesh_->num_elements(), elem_->num_nodes());
    }

    int face_points() const { return elem_->face_points(); }
    int faces_per_element() const { return mesh_->faces_per_element(); }

    /// Traces of u_h at the face flux points of every element,
    /// layout [element][local face][face point][var].
    std::vector<double> interpolate_to_faces(const SolutionState& state) const {
        check_shape(state);
        std::vector<double> traces(trace_size());
        std::vector<double> field(elem_->num_nodes());
        for (int e = 0; e < mesh_->num_elements(); ++e)
            for (int v = 0; v < state.nvar(); ++v) {
                for (int i = 0; i < elem_->num_nodes(); ++i) field[i] = state.node(e, i)[v];
                trace_field(field, e, v, state.nvar(), traces);
            }
        return traces;
    }

    /// Corrected gradient w^C of every conserved variable at the solution
    /// nodes, layout [element][node][direction][var].
    std::vector<double> compute_gradient(const SolutionState& state) const {
        check_shape(state);
        const auto traces = interpolate_to_faces(state);
        const auto common_u = common_solutions(traces);
        return corrected_gradient(state, traces, common_u);
    }

    /// du/dt at every solution node.
    SolutionState compute_residual(const SolutionState& state) const {
        check_shape(state);
        if (!hook_) check_admissibility(state);

        const int dim = mesh_->dim;
        const int nv = state.nvar();
        const int fp = face_points();
        const auto traces = interpolate_to_faces(state);

        std::vector<double> grad, grad_traces;
        std::vector<double> common_u;
        const bool viscous = gas_.mu != 0.0 && !hook_;
        if (viscous) {
            common_u = common_solutions(traces);
            grad = corrected_gradient(state, traces, common_u);
            grad_traces = gradient_traces(grad, nv);
        }

        // Phase 1: common normal fluxes, one evaluation per face.
        std::vector<double> fbar(mesh_->interior_faces.size() * fp * nv, 0.0);
        for (std::size_t fi = 0; fi < mesh_->interior_faces.size(); ++fi) {
            const auto& f = mesh_->interior_faces[fi];
            const Vec2 n = mesh_->geometry[f.elem_l].face_normal[f.face_l];
            for (int k = 0; k < fp; ++k) {
                const int kr = f.flip ? fp - 1 - k : k;
                const StateVec uL = trace_state(traces, f.elem_l, f.face_l, k, nv);
                const StateVec uR = trace_state(traces, f.elem_r, f.face_r, kr, nv);
                StateVec flux = common_inviscid(uL, uR, n, dim);
                if (viscous) {
                    const GradVec wL = penalized_gradient(grad_traces, common_u, traces,
                                                          f.elem_l, f.face_l, k, fi, false, nv);
                    const GradVec wR = penalized_gradient(grad_traces, common_u, traces,
                                                          f.elem_r, f.face_r, kr, fi, true, nv);
                    const StateVec g = br2_viscous_interface(uL, uR, wL, wR, n, gas_, dim);
                    for (int v = 0; v < nv; ++v) flux[v] += g[v];
                }
                for (int v = 0; v < nv; ++v) fbar[(fi * fp + k) * nv + v] = flux[v];
            }
        }
        std::vector<double> fbar_b(mesh_->boundary_faces.size() * fp * nv, 0.0);
        for (std::size_t bi = 0; bi < mesh_->boundary_faces.size(); ++bi) {
            const auto& f = mesh_->boundary_faces[bi];
            const auto& bc = *boundary_bc_[bi];
            const Vec2 n = mesh_->geometry[f.elem].face_normal[f.face];
            for (int k = 0; k < fp; ++k) {
                const StateVec uin = trace_state(traces, f.elem, f.face, k, nv);
                const StateVec ug = ghost_state(uin, bc, dim);
                StateVec flux = common_inviscid(uin, ug, n, dim);
                if (viscous) {
                    const GradVec w = boundary_penalized_gradient(grad_traces, traces, uin, ug,
                                                                  f.elem, f.face, k, nv);
                    StateVec ubar{};
                    for (int v = 0; v < nv; ++v) ubar[v] = 0.5 * (uin[v] + ug[v]);
                    const bool adiabatic = bc.kind == BcKind::NoSlipAdiabaticWall;
                    const StateVec g = viscous_normal_flux(ubar, w, n, gas_, dim, adiabatic);
                    for (int v = 0; v < nv; ++v) flux[v] += g[v];
                }
                for (int v = 0; v < nv; ++v) fbar_b[(bi * fp + k) * nv + v] = flux[v];
            }
        }

        // Phase 2: element-local corrected divergence.
        SolutionState dudt = make_state();
        dudt.time = state.time;
        const int ns = elem_->num_nodes();
        const int n = elem_->nodes_per_dir();
        std::array<std::vector<double>, 2> oi_flux;
        std::vector<double> ftilde[2];
        std::vector<double> field(ns), div(ns);
        for (int e = 0; e < mesh_->num_elements(); ++e) {
            const auto& g = mesh_->geometry[e];
            for (int d = 0; d < dim; ++d)
                ftilde[d].assign(static_cast<std::size_t>(ns) * nv, 0.0);
            if (oi_) oi_->project(state.node(e, 0), dim, gas_, hook_ ? &*hook_ : nullptr, oi_flux);
            for (int i = 0; i < ns; ++i) {
                const StateVec u = state.get(e, i);
                FluxVec f{};
                if (oi_) {
                    for (int d = 0; d < dim; ++d)
                        for (int v = 0; v < nv; ++v) f[d][v] = oi_flux[d][i * nv + v];
                } else {
                    f = hook_ ? hook_->flux(u, dim) : inviscid_flux(u, gas_, dim);
                }
                if (viscous) {
                    GradVec w{};
                    for (int d = 0; d < dim; ++d)
                        for (int v = 0; v < nv; ++v)
                            w[d][v] = grad[grad_index(e, i, d, nv) + v];
                    const FluxVec fv = viscous_flux(u, w, gas_, dim);
                    for (int d = 0; d < dim; ++d)
                        for (int v = 0; v < nv; ++v) f[d][v] += fv[d][v];
                }
                // Transformed (contravariant) fluxes.
                for (int d = 0; d < dim; ++d) {
                    for (int v = 0; v < nv; ++v) {
                        double s = g.inv_jac[d][0] * f[0][v];
                        if (dim == 2) s += g.inv_jac[d][1] * f[1][v];
                        ftilde[d][i * nv + v] = g.det * s;
                    }
                }
            }
            for (int v = 0; v < nv; ++v) {
                // Reference divergence of the discontinuous flux.
                for (int i = 0; i < ns; ++i) field[i] = ftilde[0][i * nv + v];
                div = elem_->apply_dir(elem_->diff_matrix_1d(), field, 0);
                if (dim == 2) {
                    for (int i = 0; i < ns; ++i) field[i] = ftilde[1][i * nv + v];
                    const auto deta = elem_->apply_dir(elem_->diff_matrix_1d(), field, 1);
                    for (int i = 0; i < ns; ++i) div[i] += deta[i];
                }
                // Face corrections.
                for (int f = 0; f < faces_per_element(); ++f) {
                    const int ndir = f / 2;          // 0: xi faces, 1: eta faces
                    const bool high = f % 2 == 1;    // +1 side of the direction
                    const auto& interp = high ? elem_->face_interp_right() : elem_->face_interp_left();
                    const auto& cd = high ? elem_->corr_deriv_right() : elem_->corr_deriv_left();
                    const double nsign = high ? 1.0 : -1.0;
                    for (int k = 0; k < fp; ++k) {
                        // Outward reference-normal trace of the transformed flux.
                        double fn = 0.0;
                        for (int m = 0; m < n; ++m) {
                            const int node = ndir == 0 ? elem_->node_index(m, k)
                                                       : elem_->node_index(k, m);
                            fn += interp[m] * ftilde[ndir][node * nv + v];
                        }
                        fn *= nsign;
                        const double fcommon =
                            g.face_scale[f] * common_flux_value(fbar, fbar_b, e, f, k, v, nv, fp);
                        const double jump = fcommon - fn;
                        // nsign * g' is the divergence of the face correction fn.
                        for (int m = 0; m < n; ++m) {
                            const int node = ndir == 0 ? elem_->node_index(m, k)
                                                       : elem_->node_index(k, m);
                            div[node] += jump * nsign * cd[m];
                        }
                    }
                }
                for (int i = 0; i < ns; ++i) dudt.node(e, i)[v] = -div[i] / g.det;
            }
        }
        return dudt;
    }

    /// Ghost state used for the inviscid common flux at boundaries.
    StateVec ghost_state(const StateVec& uin, const BoundaryCondition& bc, int dim) const {
        switch (bc.kind) {
            case BcKind::NoSlipAdiabaticWall: {
                StateVec g = uin;
                for (int d = 0; d < dim; ++d) g[1 + d] = -uin[1 + d];
                return g;
            }
            case BcKind::Farfield: {
                StateVec g{};
                for (int v = 0; v < num_vars(dim); ++v) g[v] = bc.freestream[v];
                return g;
            }
            default:
                throw std::invalid_argument("ghost_state: periodic faces have no ghost state");
        }
    }

private:
    struct FaceRef {
        bool boundary = false;
        int id = -1;
        bool right_side = false;
        bool flip = false;
    };

    void check_shape(const SolutionState& state) const {
        if (state.dim != mesh_->dim || state.num_nodes != elem_->num_nodes() ||
            state.num_elements() != mesh_->num_elements())
            throw std::invalid_argument("FrSolver: state shape mismatch");
    }

    void check_admissibility(const SolutionState& state) const {
        for (int e = 0; e < state.num_elements(); ++e)
            for (int i = 0; i < state.num_nodes; ++i) {
                const StateVec u = state.get(e, i);
                for (int v = 0; v < state.nvar(); ++v)
                    if (!std::isfinite(u[v]))
                        throw blowup_error("non-finite state at element " + std::to_string(e) +
                                               ", node " + std::to_string(i),
                                           -1, -1, e);
                if (!is_admissible(u, gas_, state.dim))
                    throw admissibility_error("inadmissible state at element " + std::to_string(e) +
                                                  ", node " + std::to_string(i),
                                              e, i);
            }
    }

    std::size_t trace_size() const {
        return static_cast<std::size_t>(mesh_->num_elements()) * faces_per_element() *
               face_points() * num_vars(mesh_->dim);
    }

    std::size_t trace_index(int e, int f, int k, int nv) const {
        return ((static_cast<std::size_t>(e) * faces_per_element() + f) * face_points() + k) * nv;
    }

    StateVec trace_state(const std::vector<double>& traces, int e, int f, int k, int nv) const {
        StateVec s{};
        const std::size_t base = trace_index(e, f, k, nv);
        for (int v = 0; v < nv; ++v) s[v] = traces[base + v];
        return s;
    }

    std::size_t grad_index(int e, int i, int d, int nv) const {
        return ((static_cast<std::size_t>(e) * elem_->num_nodes() + i) * mesh_->dim + d) * nv;
    }

    /// Interpolate one scalar nodal field of element e to all its faces.
    void trace_field(const std::vector<double>& field, int e, int v, int nv,
                     std::vector<double>& traces) const {
        const int n = elem_->nodes_per_dir();
        const int fp = face_points();
        const auto& fl = elem_->face_interp_left();
        const auto& fr = elem_->face_interp_right();
        for (int f = 0; f < faces_per_element(); ++f) {
            const int ndir = f / 2;
            const auto& interp = (f % 2 == 1) ? fr : fl;
            for (int k = 0; k < fp; ++k) {
                double s = 0.0;
                for (int m = 0; m < n; ++m) {
                    const int node =
                        ndir == 0 ? elem_->node_index(m, k) : elem_->node_index(k, m);
                    s += interp[m] * field[node];
                }
                traces[trace_index(e, f, k, nv) + v] = s;
            }
        }
    }

    StateVec common_inviscid(const StateVec& uL, const StateVec& uR, Vec2 n, int dim) const {
        if (!hook_) return rusanov_flux(uL, uR, n, gas_, dim);
        const auto fL = flux_dot_normal(hook_->flux(uL, dim), n, dim);
        const auto fR = flux_dot_normal(hook_->flux(uR, dim), n, dim);
        const double s = std::max(hook_->wavespeed(uL, n, dim), hook_->wavespeed(uR, n, dim));
        StateVec r{};
        for (int v = 0; v < num_vars(dim); ++v)
            r[v] = 0.5 * (fL[v] + fR[v]) - 0.5 * s * (uR[v] - uL[v]);
        return r;
    }

    /// Common interface solutions (centered average; BC-defined at
    /// boundaries), same layout as the interior/boundary flux arrays.
    std::vector<double> common_solutions(const std::vector<double>& traces) const {
        const int nv = num_vars(mesh_->dim);
        const int fp = face_points();
        std::vector<double> common((mesh_->interior_faces.size() + mesh_->boundary_faces.size()) *
                                       fp * nv,
                                   0.0);
        for (std::size_t fi = 0; fi < mesh_->interior_faces.size(); ++fi) {
            const auto& f = mesh_->interior_faces[fi];
            for (int k = 0; k < fp; ++k) {
                const int kr = f.flip ? fp - 1 - k : k;
                const std::size_t l = trace_index(f.elem_l, f.face_l, k, nv);
                const std::size_t r = trace_index(f.elem_r, f.face_r, kr, nv);
                for (int v = 0; v < nv; ++v)
                    common[(fi * fp + k) * nv + v] = 0.5 * (traces[l + v] + traces[r + v]);
            }
        }
        const std::size_t boff = mesh_->interior_faces.size() * fp * nv;
        for (std::size_t bi = 0; bi < mesh_->boundary_faces.size(); ++bi) {
            const auto& f = mesh_->boundary_faces[bi];
            for (int k = 0; k < fp; ++k) {
                const StateVec uin = trace_state(traces, f.elem, f.face, k, nv);
                const StateVec ug = ghost_state(uin, *boundary_bc_[bi], mesh_->dim);
                for (int v = 0; v < nv; ++v)
                    common[boff + (bi * fp + k) * nv + v] = 0.5 * (uin[v] + ug[v]);
            }
        }
        return common;
    }

    /// Common solution seen from (element, face, point k in own ordering).
    double common_solution_value(const std::vector<double>& common, int e, int f, int k, int v,
                                 int nv, int fp) const {
        const auto& ref = face_refs_[e][f];
        if (ref.boundary) {
            const std::size_t boff = mesh_->interior_faces.size() * fp * nv;
            return common[boff + (static_cast<std::size_t>(ref.id) * fp + k) * nv + v];
        }
        const int kk = ref.flip ? fp - 1 - k : k;
        return common[(static_cast<std::size_t>(ref.id) * fp + kk) * nv + v];
    }

    /// Common physical normal flux seen from (element, face, point k); the
    /// stored value is w.r.t. the left side's outward normal.
    double common_flux_value(const std::vector<double>& fbar, const std::vector<double>& fbar_b,
                             int e, int f, int k, int v, int nv, int fp) const {
        const auto& ref = face_refs_[e][f];
        if (ref.boundary) return fbar_b[(static_cast<std::size_t>(ref.id) * fp + k) * nv + v];
        const int kk = ref.flip ? fp - 1 - k : k;
        const double val = fbar[(static_cast<std::size_t>(ref.id) * fp + kk) * nv + v];
        return ref.right_side ? -val : val;
    }

    /// Corrected gradient for all elements (reference-space corrections of
    /// the corrected-solution polynomial, mapped by the inverse Jacobian).
    std::vector<double> corrected_gradient(const SolutionState& state,
                                           const std::vector<double>& traces,
                                           const std::vector<double>& common) const {
        const int dim = mesh_->dim;
        const int nv = state.nvar();
        const int ns = elem_->num_nodes();
        const int n = elem_->nodes_per_dir();
        const int fp = face_points();
        std::vector<double> grad(static_cast<std::size_t>(mesh_->num_elements()) * ns * dim * nv,
                                 0.0);
        std::vector<double> field(ns), dxi(ns), deta(ns);
        std::vector<double> jump(fp), tang(fp);
        for (int e = 0; e < mesh_->num_elements(); ++e) {
            const auto& g = mesh_->geometry[e];
            for (int v = 0; v < nv; ++v) {
                for (int i = 0; i < ns; ++i) field[i] = state.node(e, i)[v];
                dxi = elem_->apply_dir(elem_->diff_matrix_1d(), field, 0);
                if (dim == 2)
                    deta = elem_->apply_dir(elem_->diff_matrix_1d(), field, 1);
                else
                    deta.assign(ns, 0.0);
                for (int f = 0; f < faces_per_element(); ++f) {
                    const int ndir = f / 2;
                    const bool high = f % 2 == 1;
                    const auto& corr = high ? elem_->corr_right() : elem_->corr_left();
                    const auto& corr_d = high ? elem_->corr_deriv_right() : elem_->corr_deriv_left();
                    for (int k = 0; k < fp; ++k)
                        jump[k] = common_solution_value(common, e, f, k, v, nv, fp) -
                                  traces[trace_index(e, f, k, nv) + v];
                    if (dim == 2) {
                        // Tangential derivative of the jump polynomial.
                        for (int k = 0; k < fp; ++k) {
                            double s = 0.0;
                            for (int j = 0; j < fp; ++j)
                                s += elem_->diff_matrix_1d()(k, j) * jump[j];
                            tang[k] = s;
                        }
                    }
                    for (int a = 0; a < n; ++a)
                        for (int b = 0; b < (dim == 2 ? n : 1); ++b) {
                            if (ndir == 0) {
                                const int node = elem_->node_index(a, b);
                                dxi[node] += jump[b] * corr_d[a];
                                if (dim == 2) deta[node] += corr[a] * tang[b];
                            } else {
                                const int node = elem_->node_index(b, a);
                                deta[node] += jump[b] * corr_d[a];
                                dxi[node] += corr[a] * tang[b];
                            }
                        }
                }
                for (int i = 0; i < ns; ++i) {
                    grad[grad_index(e, i, 0, nv) + v] =
                        g.inv_jac[0][0] * dxi[i] + (dim == 2 ? g.inv_jac[1][0] * deta[i] : 0.0);
                    if (dim == 2)
                        grad[grad_index(e, i, 1, nv) + v] =
                            g.inv_jac[0][1] * dxi[i] + g.inv_jac[1][1] * deta[i];
                }
            }
        }
        return grad;
    }

    /// Traces of the corrected gradient at face points,
    /// layout [element][face][point][direction][var].
    std::vector<double> gradient_traces(const std::vector<double>& grad, int nv) const {
        const int dim = mesh_->dim;
        const int ns = elem_->num_nodes();
        const int n = elem_->nodes_per_dir();
        const int fp = face_points();
        std::vector<double> gt(trace_size() * dim, 0.0);
        const auto& fl = elem_->face_interp_left();
        const auto& fr = elem_->face_interp_right();
        for (int e = 0; e < mesh_->num_elements(); ++e)
            for (int f = 0; f < faces_per_element(); ++f) {
                const int ndir = f / 2;
                const auto& interp = (f % 2 == 1) ? fr : fl;
                for (int k = 0; k < fp; ++k)
                    for (int d = 0; d < dim; ++d)
                        for (int v = 0; v < nv; ++v) {
                            double s = 0.0;
                            for (int m = 0; m < n; ++m) {
                                const int node =
                                    ndir == 0 ? elem_->node_index(m, k) : elem_->node_index(k, m);
                                s += interp[m] * grad[grad_index(e, node, d, nv) + v];
                            }
                            gt[(trace_index(e, f, k, nv) + v) * dim + d] = s;
                        }
            }
        return gt;
    }

    /// BR2 penalized gradient at one face point: trace of w^C plus
    /// eta * r, r being the face-local lifted jump; eta = number of faces.
    GradVec penalized_gradient(const std::vector<double>& grad_traces,
                               const std::vector<double>& common_u,
                               const std::vector<double>& traces, int e, int f, int k,
                               std::size_t /*face_id*/, bool /*right*/, int nv) const {
        const int dim = mesh_->dim;
        const int fp = face_points();
        std::vector<double> jump(fp);
        GradVec w{};
        for (int d = 0; d < dim; ++d)
            for (int v = 0; v < nv; ++v)
                w[d][v] = grad_traces[(trace_index(e, f, k, nv) + v) * dim + d];
        const auto& g = mesh_->geometry[e];
        const int ndir = f / 2;
        const bool high = f % 2 == 1;
        const double gprime = high ? corr_at_face_right_ : corr_at_face_left_;
        const double eta = faces_per_element();
        for (int v = 0; v < nv; ++v) {
            for (int j = 0; j < fp; ++j)
                jump[j] = common_solution_value(common_u, e, f, j, v, nv, fp) -
                          traces[trace_index(e, f, j, nv) + v];
            double r_norm = jump[k] * gprime;
            double r_tang = 0.0;
            if (dim == 2)
                for (int j = 0; j < fp; ++j) r_tang += elem_->diff_matrix_1d()(k, j) * jump[j];
            const double r_dxi = ndir == 0 ? r_norm : r_tang;
            const double r_deta = ndir == 0 ? r_tang : r_norm;
            w[0][v] += eta * (g.inv_jac[0][0] * r_dxi +
                              (dim == 2 ? g.inv_jac[1][0] * r_deta : 0.0));
            if (dim == 2) w[1][v] += eta * (g.inv_jac[0][1] * r_dxi + g.inv_jac[1][1] * r_deta);
        }
        return w;
    }

    GradVec boundary_penalized_gradient(const std::vector<double>& grad_traces,
                                        const std::vector<double>& traces, const StateVec& uin,
                                        const StateVec& ug, int e, int f, int k, int nv) const {
        // Same lift construction; the jump is against the BC common state.
        const int dim = mesh_->dim;
        const int fp = face_points();
        GradVec w{};
        for (int d = 0; d < dim; ++d)
            for (int v = 0; v < nv; ++v)
                w[d][v] = grad_traces[(trace_index(e, f, k, nv) + v) * dim + d];
        const auto& g = mesh_->geometry[e];
        const int ndir = f / 2;
        const bool high = f % 2 == 1;
        const double gprime = high ? corr_at_face_right_ : corr_at_face_left_;
        const double eta = faces_per_element();
        (void)uin;
        for (int v = 0; v < nv; ++v) {
            const StateVec ut = trace_state(traces, e, f, k, nv);
            const double jump = 0.5 * (ut[v] + ug[v]) - ut[v];
            const double r_norm = jump * gprime;
            const double r_dxi = ndir == 0 ? r_norm : 0.0;
            const double r_deta = ndir == 0 ? 0.0 : r_norm;
            w[0][v] += eta * (g.inv_jac[0][0] * r_dxi +
                              (dim == 2 ? g.inv_jac[1][0] * r_deta : 0.0));
            if (dim == 2) w[1][v] += eta * (g.inv_jac[0][1] * r_dxi + g.inv_jac[1][1] * r_deta);
        }
        return w;
    }

    const Mesh* mesh_;
    const ReferenceElement* elem_;
    GasModel gas_;
    AntialiasConfig aa_;
    std::optional<OiProjector> oi_;
    std::optional<InviscidFluxHook> hook_;
    std::map<std::string, BoundaryCondition> bcs_;
    std::vector<const BoundaryCondition*> boundary_bc_;
    std::vector<std::array<FaceRef, 4>> face_refs_;
    double corr_at_face_left_ = 0.0;
    double corr_at_face_right_ = 0.0;
};

} // namespace frdealias

#endif
