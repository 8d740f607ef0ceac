#ifndef FRDEALIAS_DRIVER_HPP
#define FRDEALIAS_DRIVER_HPP

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "cases.hpp"
#include "config.hpp"
#include "diagnostics.hpp"
#include "fr_core.hpp"
#include "io.hpp"
#include "timeint.hpp"

namespace frdealias {

inline CaseSetup build_case(const RunConfig& cfg) {
    switch (cfg.case_id) {
        case CaseId::DensityWave:
            return density_wave(cfg.nx, cfg.gas);
        case CaseId::IsentropicVortex:
            return isentropic_vortex(cfg.nx, cfg.gas);
        case CaseId::KelvinHelmholtz:
            return kelvin_helmholtz(cfg.nx, cfg.gas, cfg.kh_sharpness, cfg.kh_amplitude,
                                    cfg.seed, cfg.kh_contrast);
        case CaseId::TaylorGreen2d:
            return taylor_green_2d(cfg.nx, cfg.gas);
        case CaseId::FromMeshFile: {
            std::vector<BoundaryCondition> bcs;
            for (const auto& [tag, kind] : cfg.bc_kinds) {
                BoundaryCondition bc;
                bc.tag = tag;
                bc.kind = kind == "wall" ? BcKind::NoSlipAdiabaticWall : BcKind::Farfield;
                bcs.push_back(bc);
            }
            auto c = from_mesh_file(cfg.mesh_file, cfg.gas, bcs);
            // Farfield ghosts use the case freestream.
            for (auto& bc : c.bcs) bc.freestream = c.initial({0.0, 0.0});
            return c;
        }
    }
    throw std::invalid_argument("build_case: unknown case");
}

/// Output directory: config value, else $FRDEALIAS_OUTPUT_DIR, else cwd.
inline std::string resolve_output_dir(const RunConfig& cfg) {
    if (!cfg.output_dir.empty()) return cfg.output_dir;
    if (const char* env = std::getenv("FRDEALIAS_OUTPUT_DIR"); env && *env) return env;
    return ".";
}

struct RunArtifacts {
    SolutionState final_state;
    long steps = 0;
    std::vector<double> final_l2;       // empty when no analytic solution
    std::vector<double> initial_totals;
    std::vector<double> final_totals;
};

/// Execute a full configured run: build case and solver, integrate, write
/// CSV artifacts. Blowups propagate as blowup_error after a report file is
/// written.
inline RunArtifacts run_case(RunConfig cfg, std::ostream& log = std::cout) {
    cfg.validate();
    const NodeFamily family = cfg.resolved_family();
    for (const auto& w : cfg.warnings) log << "warning: " << w << "\n";

    const std::string outdir = resolve_output_dir(cfg);
    std::filesystem::create_directories(outdir);
    {
        auto echo = open_output(outdir + "/resolved_config.cfg");
        write_config(cfg, echo);
    }

    CaseSetup cs = build_case(cfg);
    ReferenceElement elem(cfg.p, cs.dim, family);
    FrSolver solver(cs.mesh, elem, cs.gas, cs.bcs, cfg.antialias);
    SolutionState state = sample_initial(cs, elem);

    RunArtifacts art;
    art.initial_totals = conserved_totals(state, cs.mesh, elem);

    CsvWriter totals(outdir + "/totals.csv",
                     cs.dim == 1 ? "t,mass,momentum_x,energy" : "t,mass,momentum_x,momentum_y,energy");
    auto record_totals = [&](const SolutionState& s) {
        auto tot = conserved_totals(s, cs.mesh, elem);
        std::vector<double> row{s.time};
        row.insert(row.end(), tot.begin(), tot.end());
        totals.row(row);
    };
    record_totals(state);

    CsvWriter forces;
    if (!cfg.forces_tag.empty())
        forces = CsvWriter(outdir + "/forces.csv", "t,C_L,C_D");
    FilterLog filter_log;
    if (cfg.filter_log) filter_log = FilterLog(outdir + "/filter_log.csv");

    TimeIntegrator ti(solver);
    ti.on_filter = [&](long step, int stage, const std::vector<FilterReport>& reports) {
        filter_log.append(step, stage, reports);
    };
    ti.on_step = [&](const StepDiagnostics& d, const SolutionState& s) {
        if (d.step % cfg.cadence == 0) {
            log << "step " << d.step << ", t " << d.t << ", dt " << d.dt << ", min_rho "
                << d.min_rho << ", min_p " << d.min_p << ", max_zeta " << d.max_zeta << "\n";
            record_totals(s);
            if (!cfg.forces_tag.empty()) {
                const auto wf = wall_forces(s, cs.mesh, elem, cs.gas, cfg.forces_tag,
                                            cs.force_ref);
                forces.row({d.t, wf.cl, wf.cd});
            }
        }
    };

    try {
        art.steps = ti.run(state, cfg.dt, cfg.t_end);
    } catch (const blowup_error& e) {
        auto report = open_output(outdir + "/blowup_report.txt");
        report << "blowup: " << e.what() << "\n"
               << "step = " << e.step << "\nstage = " << e.stage << "\nelement = " << e.element
               << "\n";
        throw;
    }

    art.final_totals = conserved_totals(state, cs.mesh, elem);
    if (cs.exact) {
        art.final_l2 = l2_error(state, cs.exact, cs.mesh, elem);
        CsvWriter err(outdir + "/error.csv",
                      cs.dim == 1 ? "t,l2_rho,l2_rhou,l2_E" : "t,l2_rho,l2_rhou,l2_rhov,l2_E");
        std::vector<double> row{state.time};
        row.insert(row.end(), art.final_l2.begin(), art.final_l2.end());
        err.row(row);
    }
    if (cfg.write_fields)
        write_fields_csv(state, cs.mesh, elem, cs.gas, outdir + "/fields.csv");
    if (cfg.write_vtk) write_vtk(state, cs.mesh, elem, cs.gas, outdir + "/fields.vtk");

    art.final_state = std::move(state);
    return art;
}

} // namespace frdealias

#endif
