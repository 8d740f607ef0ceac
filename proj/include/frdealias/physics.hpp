#ifndef FRDEALIAS_PHYSICS_HPP
#define FRDEALIAS_PHYSICS_HPP

#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include "errors.hpp"
#include "mesh.hpp"

namespace frdealias {

/// Conserved variables [rho, rho*v..., E]; nvar = dim + 2.
using StateVec = std::array<double, 4>;
/// Flux tensor, one StateVec per spatial direction.
using FluxVec = std::array<StateVec, 2>;
/// Gradient of the conserved variables, one StateVec per direction.
using GradVec = std::array<StateVec, 2>;

struct GasModel {
    double gamma = 1.4;
    double prandtl = 0.71;
    double mu = 0.0;  // mu = 0 -> Euler
};

inline int num_vars(int dim) { return dim + 2; }

inline double kinetic_energy(const StateVec& u, int dim) {
    double k = 0.0;
    for (int d = 0; d < dim; ++d) k += u[1 + d] * u[1 + d];
    return 0.5 * k / u[0];
}

inline double pressure(const StateVec& u, const GasModel& gas, int dim) {
    return (gas.gamma - 1.0) * (u[1 + dim] - kinetic_energy(u, dim));
}

inline bool is_admissible(const StateVec& u, const GasModel& gas, int dim) {
    for (int v = 0; v < num_vars(dim); ++v)
        if (!std::isfinite(u[v])) return false;
    return u[0] > 0.0 && pressure(u, gas, dim) > 0.0;
}

/// Specific physical entropy sigma = P rho^-gamma.
inline double entropy(const StateVec& u, const GasModel& gas, int dim) {
    if (u[0] <= 0.0) throw admissibility_error("entropy: non-positive density");
    return pressure(u, gas, dim) * std::pow(u[0], -gas.gamma);
}

/// Like entropy(), but maps inadmissible states (rho <= 0 or P <= 0) to
/// -infinity instead of throwing. Used when scanning snapshots that may
/// contain nodes the entropy filter has yet to repair.
inline double entropy_or_lowest(const StateVec& u, const GasModel& gas, int dim) {
    if (!(u[0] > 0.0)) return -std::numeric_limits<double>::infinity();
    const double p = pressure(u, gas, dim);
    if (!(p > 0.0)) return -std::numeric_limits<double>::infinity();
    return p * std::pow(u[0], -gas.gamma);
}

inline double sound_speed(const StateVec& u, const GasModel& gas, int dim) {
    return std::sqrt(gas.gamma * pressure(u, gas, dim) / u[0]);
}

inline FluxVec inviscid_flux(const StateVec& u, const GasModel& gas, int dim) {
    const double p = pressure(u, gas, dim);
    FluxVec f{};
    for (int d = 0; d < dim; ++d) {
        const double vd = u[1 + d] / u[0];
        f[d][0] = u[1 + d];
        for (int i = 0; i < dim; ++i) f[d][1 + i] = u[1 + i] * vd;
        f[d][1 + d] += p;
        f[d][1 + dim] = (u[1 + dim] + p) * vd;
    }
    return f;
}

/// Viscous flux from conserved gradients; the chain rule converts them to
/// velocity and enthalpy gradients before assembling tau and q. Signed so
/// that du/dt = -div(F_I + F_V).
inline FluxVec viscous_flux(const StateVec& u, const GradVec& w, const GasModel& gas, int dim) {
    FluxVec g{};
    if (gas.mu == 0.0) return g;
    const double rho = u[0];
    const double p = pressure(u, gas, dim);
    double v[2] = {0.0, 0.0};
    for (int d = 0; d < dim; ++d) v[d] = u[1 + d] / rho;
    // dv_i/dx_j
    double dv[2][2] = {};
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i)
            dv[i][j] = (w[j][1 + i] - v[i] * w[j][0]) / rho;
    double divv = 0.0;
    for (int d = 0; d < dim; ++d) divv += dv[d][d];
    double tau[2][2] = {};
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            tau[i][j] = gas.mu * (dv[i][j] + dv[j][i]) - (i == j ? 2.0 / 3.0 * gas.mu * divv : 0.0);
    // dh/dx_j with h = (E + P) / rho
    const double h = (u[1 + dim] + p) / rho;
    for (int j = 0; j < dim; ++j) {
        double vdotdv = 0.0, vsq = 0.0;
        for (int i = 0; i < dim; ++i) {
            vdotdv += v[i] * dv[i][j];
            vsq += v[i] * v[i];
        }
        const double dp = (gas.gamma - 1.0) * (w[j][1 + dim] - 0.5 * vsq * w[j][0] - rho * vdotdv);
        const double dh = (w[j][1 + dim] + dp - h * w[j][0]) / rho;
        for (int i = 0; i < dim; ++i) g[j][1 + i] = -tau[i][j];
        double vtau = 0.0;
        for (int i = 0; i < dim; ++i) vtau += v[i] * tau[i][j];
        g[j][1 + dim] = -vtau - gas.mu / gas.prandtl * dh;
    }
    return g;
}

inline StateVec flux_dot_normal(const FluxVec& f, Vec2 n, int dim) {
    StateVec r{};
    for (int v = 0; v < num_vars(dim); ++v) {
        r[v] = f[0][v] * n.x;
        if (dim == 2) r[v] += f[1][v] * n.y;
    }
    return r;
}

/// Rusanov common inviscid flux with the Davis wavespeed estimate
/// s = max(|vL.n| + aL, |vR.n| + aR).
inline StateVec rusanov_flux(const StateVec& uL, const StateVec& uR, Vec2 n,
                             const GasModel& gas, int dim) {
    const auto fL = flux_dot_normal(inviscid_flux(uL, gas, dim), n, dim);
    const auto fR = flux_dot_normal(inviscid_flux(uR, gas, dim), n, dim);
    auto vn = [&](const StateVec& u) {
        double s = u[1] * n.x;
        if (dim == 2) s += u[2] * n.y;
        return s / u[0];
    };
    const double s = std::max(std::abs(vn(uL)) + sound_speed(uL, gas, dim),
                              std::abs(vn(uR)) + sound_speed(uR, gas, dim));
    StateVec r{};
    for (int v = 0; v < num_vars(dim); ++v)
        r[v] = 0.5 * (fL[v] + fR[v]) - 0.5 * s * (uR[v] - uL[v]);
    return r;
}

/// Viscous normal flux; adiabatic walls drop the heat-flux contribution.
inline StateVec viscous_normal_flux(const StateVec& u, const GradVec& w, Vec2 n,
                                    const GasModel& gas, int dim, bool adiabatic = false) {
    auto g = viscous_flux(u, w, gas, dim);
    if (adiabatic) {
        // Remove q from the energy row, keeping the v.tau work term.
        GasModel noheat = gas;
        noheat.prandtl = 1e300;
        const auto gq = viscous_flux(u, w, noheat, dim);
        for (int d = 0; d < dim; ++d) g[d][1 + dim] = gq[d][1 + dim];
    }
    return flux_dot_normal(g, n, dim);
}

/// BR2 common viscous interface flux: averaged one-sided fluxes evaluated
/// with penalized gradients w +- eta * r, where r is the face-local lifted
/// jump supplied by the caller.
inline StateVec br2_viscous_interface(const StateVec& uL, const StateVec& uR,
                                      const GradVec& wL_pen, const GradVec& wR_pen, Vec2 n,
                                      const GasModel& gas, int dim) {
    const auto gL = viscous_normal_flux(uL, wL_pen, n, gas, dim);
    const auto gR = viscous_normal_flux(uR, wR_pen, n, gas, dim);
    StateVec r{};
    for (int v = 0; v < num_vars(dim); ++v) r[v] = 0.5 * (gL[v] + gR[v]);
    return r;
}

/// Test hook replacing the physical inviscid flux and wavespeed in the
/// residual operator.
struct InviscidFluxHook {
    std::function<FluxVec(const StateVec&, int dim)> flux;
    std::function<double(const StateVec&, Vec2 n, int dim)> wavespeed;
};

} // namespace frdealias

#endif
