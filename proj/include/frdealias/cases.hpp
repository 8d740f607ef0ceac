#ifndef FRDEALIAS_CASES_HPP
#define FRDEALIAS_CASES_HPP

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "basis.hpp"
#include "diagnostics.hpp"
#include "mesh.hpp"
#include "physics.hpp"
#include "state.hpp"

namespace frdealias {

/// Everything needed to run one benchmark problem.
struct CaseSetup {
    int dim = 2;
    Mesh mesh;
    GasModel gas;
    std::vector<BoundaryCondition> bcs;
    std::function<StateVec(Vec2)> initial;
    AnalyticField exact;  // empty when no analytic solution is known
    double t_c = 1.0;     // convective time unit
    ForceReference force_ref;
};

/// Sample the initial condition at the mapped solution nodes.
inline SolutionState sample_initial(const CaseSetup& c, const ReferenceElement& elem) {
    SolutionState s(c.dim, c.mesh.num_elements(), elem.num_nodes());
    const auto& nodes = elem.solution_rule().nodes;
    const int n = elem.nodes_per_dir();
    for (int e = 0; e < c.mesh.num_elements(); ++e)
        for (int i = 0; i < elem.num_nodes(); ++i) {
            const double xi = nodes[c.dim == 1 ? i : i % n];
            const double eta = c.dim == 1 ? 0.0 : nodes[i / n];
            s.set(e, i, c.initial(c.mesh.map_to_physical(e, xi, eta)));
        }
    return s;
}

/// 1D advected density wave: rho = 1 + 0.1 sin(2 pi (x - t)), u = 1, P = 1
/// on the periodic unit interval.
inline CaseSetup density_wave(int nx, GasModel gas = {}) {
    CaseSetup c;
    c.dim = 1;
    c.gas = gas;
    c.mesh = build_cartesian(1, {{{0.0, 1.0}, {0.0, 1.0}}}, {nx, 1}, {true, false});
    c.exact = [gas](Vec2 p, double t) -> StateVec {
        const double rho = 1.0 + 0.1 * std::sin(2.0 * M_PI * (p.x - t));
        return {rho, rho, 1.0 / (gas.gamma - 1.0) + 0.5 * rho, 0.0};
    };
    c.initial = [exact = c.exact](Vec2 p) { return exact(p, 0.0); };
    return c;
}

/// Standard isentropic vortex (strength Gamma = 5) centered in the periodic
/// [0,10]^2 box, advected diagonally by a unit freestream; exact solution is
/// the periodically wrapped translation.
inline CaseSetup isentropic_vortex(int nx, GasModel gas = {}) {
    CaseSetup c;
    c.dim = 2;
    c.gas = gas;
    c.mesh = build_cartesian(2, {{{0.0, 10.0}, {0.0, 10.0}}}, {nx, nx}, {true, true});
    const double gamma = gas.gamma;
    c.exact = [gamma](Vec2 p, double t) -> StateVec {
        const double gam = 5.0;
        // Wrap the advected center back into the box.
        auto wrap = [](double a) { return a - 10.0 * std::floor(a / 10.0); };
        double dx = wrap(p.x - t) - 5.0;
        double dy = wrap(p.y - t) - 5.0;
        // Nearest periodic image.
        if (dx > 5.0) dx -= 10.0;
        if (dx < -5.0) dx += 10.0;
        if (dy > 5.0) dy -= 10.0;
        if (dy < -5.0) dy += 10.0;
        const double r2 = dx * dx + dy * dy;
        const double ex = std::exp(0.5 * (1.0 - r2));
        const double du = -gam / (2.0 * M_PI) * ex * dy;
        const double dv = gam / (2.0 * M_PI) * ex * dx;
        const double T = 1.0 - (gamma - 1.0) * gam * gam / (8.0 * gamma * M_PI * M_PI) * ex * ex;
        const double rho = std::pow(T, 1.0 / (gamma - 1.0));
        const double pr = rho * T;
        const double u = 1.0 + du, v = 1.0 + dv;
        return {rho, rho * u, rho * v, pr / (gamma - 1.0) + 0.5 * rho * (u * u + v * v)};
    };
    c.initial = [exact = c.exact](Vec2 p) { return exact(p, 0.0); };
    c.t_c = 10.0;
    return c;
}

/// Double shear layer on the periodic [-1,1]^2 box with a density ratio of
/// two and a seeded sinusoidal transverse perturbation. `sharpness` controls
/// the layer thickness (larger = thinner = harder to resolve).
inline CaseSetup kelvin_helmholtz(int nx, GasModel gas = {}, double sharpness = 15.0,
                                  double amplitude = 0.1, unsigned seed = 0,
                                  double contrast = 0.25) {
    CaseSetup c;
    c.dim = 2;
    c.gas = gas;
    c.mesh = build_cartesian(2, {{{-1.0, 1.0}, {-1.0, 1.0}}}, {nx, nx}, {true, true});
    std::mt19937 rng(seed);
    const double phase = std::uniform_real_distribution<double>(0.0, 2.0 * M_PI)(rng);
    const double gamma = gas.gamma;
    c.initial = [sharpness, amplitude, phase, gamma, contrast](Vec2 p) -> StateVec {
        const double b = std::tanh(sharpness * p.y + 0.5 * sharpness) -
                         std::tanh(sharpness * p.y - 0.5 * sharpness);
        const double rho = 1.0 + contrast * (b - 1.0);
        const double u = 0.5 * (b - 1.0);
        const double v = amplitude * std::sin(2.0 * M_PI * p.x + phase);
        const double pr = 1.0;
        return {rho, rho * u, rho * v,
                pr / (gamma - 1.0) + 0.5 * rho * (u * u + v * v)};
    };
    c.t_c = 2.0;
    return c;
}

/// 2D Taylor-Green vortex at Mach 0.1; the analytic field is the
/// incompressible decaying solution (density held at its mean), useful as a
/// qualitative low-Mach reference.
inline CaseSetup taylor_green_2d(int nx, GasModel gas) {
    CaseSetup c;
    c.dim = 2;
    c.gas = gas;
    const double L = 2.0 * M_PI;
    c.mesh = build_cartesian(2, {{{0.0, L}, {0.0, L}}}, {nx, nx}, {true, true});
    const double gamma = gas.gamma;
    const double mach = 0.1;
    const double p0 = 1.0 / gamma;  // unit sound speed at rho = 1
    const double nu = gas.mu;       // rho = 1
    c.exact = [gamma, mach, p0, nu](Vec2 p, double t) -> StateVec {
        const double decay = std::exp(-2.0 * nu * t);
        const double u = mach * std::sin(p.x) * std::cos(p.y) * decay;
        const double v = -mach * std::cos(p.x) * std::sin(p.y) * decay;
        const double pr =
            p0 + 0.25 * mach * mach * (std::cos(2.0 * p.x) + std::cos(2.0 * p.y)) * decay * decay;
        return {1.0, u, v, pr / (gamma - 1.0) + 0.5 * (u * u + v * v)};
    };
    c.initial = [exact = c.exact](Vec2 p) { return exact(p, 0.0); };
    c.t_c = L / mach;
    return c;
}

/// Mesh-file case: uniform freestream initial condition; boundary-condition
/// kinds are supplied by the caller per tag.
inline CaseSetup from_mesh_file(const std::string& path, GasModel gas,
                                std::vector<BoundaryCondition> bcs,
                                StateVec freestream = {1.0, 1.0, 0.0, 0.0}) {
    CaseSetup c;
    c.gas = gas;
    c.mesh = load_mesh(path);
    c.dim = c.mesh.dim;
    if (c.dim == 2 && freestream[3] == 0.0) {
        // Default freestream: rho = 1, u = 1, P = 1.
        freestream = {1.0, 1.0, 0.0, 1.0 / (gas.gamma - 1.0) + 0.5};
    }
    c.bcs = std::move(bcs);
    c.initial = [freestream](Vec2) { return freestream; };
    c.force_ref.pressure = pressure(freestream, gas, c.dim);
    c.force_ref.rho = freestream[0];
    return c;
}

} // namespace frdealias

#endif
