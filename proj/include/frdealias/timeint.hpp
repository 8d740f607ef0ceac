#ifndef FRDEALIAS_TIMEINT_HPP
#define FRDEALIAS_TIMEINT_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "antialias.hpp"
#include "errors.hpp"
#include "fr_core.hpp"
#include "state.hpp"

namespace frdealias {

/// One classic RK4 step of a scalar ODE y' = f(t, y).
template <class F>
double rk4_scalar_step(F&& f, double t, double y, double dt) {
    const double k1 = f(t, y);
    const double k2 = f(t + 0.5 * dt, y + 0.5 * dt * k1);
    const double k3 = f(t + 0.5 * dt, y + 0.5 * dt * k2);
    const double k4 = f(t + dt, y + dt * k3);
    return y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Per-step progress record emitted by the integrator.
struct StepDiagnostics {
    long step = 0;       // 1-based index of the completed step
    double t = 0.0;      // time after the step
    double dt = 0.0;
    double min_rho = 0.0;
    double min_p = 0.0;
    double max_zeta = 0.0;  // largest entropy-filter strength used this step
};

/// Fixed-step classic RK4 driver. The anti-aliasing strategy configured on
/// the solver is applied at its prescribed cadence: the entropy filter after
/// every formed RK stage state, the modal filter after every Nth completed
/// step.
class TimeIntegrator {
public:
    explicit TimeIntegrator(const FrSolver& solver) : solver_(&solver) {}

    /// Called after each completed step.
    std::function<void(const StepDiagnostics&, const SolutionState&)> on_step;
    /// Called after each entropy-filter pass (step, RK stage 1-4, reports).
    std::function<void(long, int, const std::vector<FilterReport>&)> on_filter;

    /// Advance `state` by fixed steps of size dt until t_end (the final step
    /// is shortened to land on t_end exactly). Returns completed step count.
    long run(SolutionState& state, double dt, double t_end) {
        if (dt <= 0.0) throw std::invalid_argument("TimeIntegrator: dt must be > 0");
        long step = 0;
        // Tolerate roundoff accumulation in the clock.
        while (state.time < t_end - 1e-12 * std::max(1.0, std::abs(t_end))) {
            const double h = std::min(dt, t_end - state.time);
            advance(state, h, step + 1);
            ++step;
        }
        return step;
    }

    /// One RK4 step of size dt; `step_index` is 1-based and used for error
    /// reporting and filter cadence.
    void advance(SolutionState& state, double dt, long step_index) {
        const auto& aa = solver_->antialias();
        const bool ef = aa.mode == AntialiasMode::EntropyFilter;
        double max_zeta = 0.0;

        SolutionState k1 = residual(state, step_index, 1);
        SolutionState u = axpy(state, 0.5 * dt, k1, state.time + 0.5 * dt);
        post_stage(u, &state, step_index, 1, ef, max_zeta);

        SolutionState k2 = residual(u, step_index, 2);
        SolutionState prev = std::move(u);
        u = axpy(state, 0.5 * dt, k2, state.time + 0.5 * dt);
        post_stage(u, &prev, step_index, 2, ef, max_zeta);

        SolutionState k3 = residual(u, step_index, 3);
        prev = std::move(u);
        u = axpy(state, dt, k3, state.time + dt);
        post_stage(u, &prev, step_index, 3, ef, max_zeta);

        SolutionState k4 = residual(u, step_index, 4);
        prev = std::move(u);
        SolutionState next = state;
        next.time = state.time + dt;
        for (std::size_t i = 0; i < next.u.size(); ++i)
            next.u[i] += dt / 6.0 * (k1.u[i] + 2.0 * k2.u[i] + 2.0 * k3.u[i] + k4.u[i]);
        post_stage(next, &prev, step_index, 4, ef, max_zeta);

        if (aa.mode == AntialiasMode::ModalFilter && step_index % aa.mf_every == 0) {
            const auto& elem = solver_->element();
            for (int e = 0; e < next.num_elements(); ++e)
                modal_filter(elem, next.node(e, 0), next.nvar(), aa.mf_kappa, aa.mf_eta_c,
                             aa.mf_s);
            check_finite(next, step_index, 4);
        }

        state = std::move(next);
        if (on_step) on_step(diagnostics(state, dt, step_index, max_zeta), state);
    }

    StepDiagnostics diagnostics(const SolutionState& state, double dt, long step,
                                double max_zeta) const {
        StepDiagnostics d;
        d.step = step;
        d.t = state.time;
        d.dt = dt;
        d.max_zeta = max_zeta;
        d.min_rho = std::numeric_limits<double>::infinity();
        d.min_p = std::numeric_limits<double>::infinity();
        const auto& gas = solver_->gas();
        for (int e = 0; e < state.num_elements(); ++e)
            for (int i = 0; i < state.num_nodes; ++i) {
                const StateVec s = state.get(e, i);
                d.min_rho = std::min(d.min_rho, s[0]);
                d.min_p = std::min(d.min_p, pressure(s, gas, state.dim));
            }
        return d;
    }

private:
    SolutionState residual(const SolutionState& s, long step, int stage) const {
        try {
            return solver_->compute_residual(s);
        } catch (const admissibility_error& e) {
            // During time stepping an inadmissible stage state is a blowup.
            throw blowup_error(e.what(), step, stage, e.element);
        }
    }

    static SolutionState axpy(const SolutionState& base, double a, const SolutionState& k,
                              double t) {
        SolutionState out = base;
        for (std::size_t i = 0; i < out.u.size(); ++i) out.u[i] += a * k.u[i];
        out.time = t;
        return out;
    }

    void check_finite(const SolutionState& s, long step, int stage) const {
        if (!s.all_finite())
            throw blowup_error("non-finite state after step " + std::to_string(step) +
                                   ", stage " + std::to_string(stage),
                               step, stage, s.first_non_finite());
    }

    /// Blowup check plus the per-stage entropy filter. `prev` is the
    /// previously formed stage state; it supplies the entropy-bound stencil
    /// minima when ef_prev_stage_ref is set, otherwise the snapshot is the
    /// freshly formed stage state itself.
    void post_stage(SolutionState& s, const SolutionState* prev, long step, int stage, bool ef,
                    double& max_zeta) {
        check_finite(s, step, stage);
        if (!ef) return;
        try {
            const auto& aa = solver_->antialias();
            const auto reports =
                entropy_filter_pass(s, solver_->mesh(), solver_->element(), solver_->gas(),
                                    aa.ef, aa.ef_prev_stage_ref ? prev : nullptr);
            for (const auto& r : reports) max_zeta = std::max(max_zeta, r.zeta);
            if (on_filter) on_filter(step, stage, reports);
        } catch (const admissibility_error& e) {
            throw blowup_error(e.what(), step, stage, e.element);
        }
    }

    const FrSolver* solver_;
};

} // namespace frdealias

#endif
