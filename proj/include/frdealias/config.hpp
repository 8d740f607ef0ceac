#ifndef FRDEALIAS_CONFIG_HPP
#define FRDEALIAS_CONFIG_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "antialias.hpp"
#include "errors.hpp"
#include "physics.hpp"
#include "quadrature.hpp"

namespace frdealias {

enum class CaseId { DensityWave, IsentropicVortex, KelvinHelmholtz, TaylorGreen2d, FromMeshFile };

/// Fully resolved run description. Parsed from a flat `section.key = value`
/// text file; unknown keys are errors.
struct RunConfig {
    CaseId case_id = CaseId::IsentropicVortex;
    int nx = 16;                 // elements per direction for built-in cases
    std::string mesh_file;       // from_mesh_file only
    unsigned seed = 0;           // IC perturbation seed
    double kh_sharpness = 15.0;
    double kh_amplitude = 0.1;
    double kh_contrast = 0.25;

    int p = 3;
    std::string nodes = "auto";  // auto | gauss-legendre | gauss-lobatto
    int threads = 0;             // 0 = hardware default

    GasModel gas;

    double dt = 0.0;
    double t_end = 0.0;

    AntialiasConfig antialias;

    // Boundary-condition kind per mesh tag (wall | farfield), mesh cases only.
    std::vector<std::pair<std::string, std::string>> bc_kinds;

    std::string output_dir;
    int cadence = 10;            // steps between progress/totals records
    bool write_fields = false;
    bool write_vtk = false;
    bool filter_log = false;
    std::string forces_tag;

    std::vector<std::string> warnings;

    /// Node family after the entropy-filter collocation rule is applied:
    /// EF forces Gauss-Lobatto unless the family was set explicitly.
    NodeFamily resolved_family() {
        if (nodes == "gauss-legendre") {
            if (antialias.mode == AntialiasMode::EntropyFilter)
                note("entropy filter with gauss-legendre nodes: solution and interface "
                     "flux points are not collocated (explicit override kept)");
            return NodeFamily::GaussLegendre;
        }
        if (nodes == "gauss-lobatto") return NodeFamily::GaussLobatto;
        return antialias.mode == AntialiasMode::EntropyFilter ? NodeFamily::GaussLobatto
                                                              : NodeFamily::GaussLegendre;
    }

    void validate() const {
        if (p < 0) throw parse_error("config: p must be >= 0");
        if (dt <= 0.0) throw parse_error("config: dt must be > 0");
        if (t_end < 0.0) throw parse_error("config: t_end must be >= 0");
        if (cadence < 1) throw parse_error("config: output.cadence must be >= 1");
        if (nx < 1) throw parse_error("config: case.nx must be >= 1");
        if (case_id == CaseId::FromMeshFile && mesh_file.empty())
            throw parse_error("config: case.mesh_file required for case from_mesh_file");
        if (nodes != "auto" && nodes != "gauss-legendre" && nodes != "gauss-lobatto")
            throw parse_error("config: solver.nodes must be auto, gauss-legendre or gauss-lobatto");
        antialias.validate(p);
    }

private:
    void note(std::string msg) { warnings.push_back(std::move(msg)); }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline double to_double(const std::string& v, const std::string& key, int line) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw parse_error("config: bad numeric value for " + key, line);
    }
}

inline long to_int(const std::string& v, const std::string& key, int line) {
    try {
        std::size_t pos = 0;
        const long i = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return i;
    } catch (...) {
        throw parse_error("config: bad integer value for " + key, line);
    }
}

inline bool to_bool(const std::string& v, const std::string& key, int line) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw parse_error("config: bad boolean value for " + key, line);
}

} // namespace detail

/// Apply one `section.key = value` assignment. `line` is used in errors
/// (-1 for command-line overrides).
inline void config_set(RunConfig& cfg, const std::string& key, const std::string& value,
                       int line = -1) {
    using detail::to_bool;
    using detail::to_double;
    using detail::to_int;
    if (key == "case.name") {
        if (value == "density_wave") cfg.case_id = CaseId::DensityWave;
        else if (value == "isentropic_vortex") cfg.case_id = CaseId::IsentropicVortex;
        else if (value == "kelvin_helmholtz") cfg.case_id = CaseId::KelvinHelmholtz;
        else if (value == "taylor_green_2d") cfg.case_id = CaseId::TaylorGreen2d;
        else if (value == "from_mesh_file") cfg.case_id = CaseId::FromMeshFile;
        else throw parse_error("config: unknown case '" + value + "'", line);
    } else if (key == "case.nx") cfg.nx = static_cast<int>(to_int(value, key, line));
    else if (key == "case.mesh_file") cfg.mesh_file = value;
    else if (key == "case.seed") cfg.seed = static_cast<unsigned>(to_int(value, key, line));
    else if (key == "case.kh_sharpness") cfg.kh_sharpness = to_double(value, key, line);
    else if (key == "case.kh_amplitude") cfg.kh_amplitude = to_double(value, key, line);
    else if (key == "case.kh_contrast") cfg.kh_contrast = to_double(value, key, line);
    else if (key == "solver.p") cfg.p = static_cast<int>(to_int(value, key, line));
    else if (key == "solver.nodes") cfg.nodes = value;
    else if (key == "solver.threads") cfg.threads = static_cast<int>(to_int(value, key, line));
    else if (key == "gas.gamma") cfg.gas.gamma = to_double(value, key, line);
    else if (key == "gas.prandtl") cfg.gas.prandtl = to_double(value, key, line);
    else if (key == "gas.mu") cfg.gas.mu = to_double(value, key, line);
    else if (key == "time.dt") cfg.dt = to_double(value, key, line);
    else if (key == "time.t_end") cfg.t_end = to_double(value, key, line);
    else if (key == "antialias.mode") {
        if (value == "none") cfg.antialias.mode = AntialiasMode::None;
        else if (value == "over_integration") cfg.antialias.mode = AntialiasMode::OverIntegration;
        else if (value == "modal_filter") cfg.antialias.mode = AntialiasMode::ModalFilter;
        else if (value == "entropy_filter") cfg.antialias.mode = AntialiasMode::EntropyFilter;
        else throw parse_error("config: unknown antialias mode '" + value + "'", line);
    } else if (key == "antialias.oi_points")
        cfg.antialias.oi_points = static_cast<int>(to_int(value, key, line));
    else if (key == "antialias.kappa") cfg.antialias.mf_kappa = to_double(value, key, line);
    else if (key == "antialias.eta_c") cfg.antialias.mf_eta_c = to_double(value, key, line);
    else if (key == "antialias.s") cfg.antialias.mf_s = static_cast<int>(to_int(value, key, line));
    else if (key == "antialias.apply_every_n_steps")
        cfg.antialias.mf_every = static_cast<int>(to_int(value, key, line));
    else if (key == "antialias.zeta_max") cfg.antialias.ef.zeta_max = to_double(value, key, line);
    else if (key == "antialias.constraint_tol")
        cfg.antialias.ef.constraint_tol = to_double(value, key, line);
    else if (key == "antialias.bisect_tol")
        cfg.antialias.ef.bisect_tol = to_double(value, key, line);
    else if (key == "antialias.ef_reference") {
        if (value == "stage")
            cfg.antialias.ef_prev_stage_ref = false;
        else if (value == "previous")
            cfg.antialias.ef_prev_stage_ref = true;
        else
            throw parse_error("antialias.ef_reference must be 'stage' or 'previous'", line);
    }
    else if (key == "output.dir") cfg.output_dir = value;
    else if (key == "output.cadence") cfg.cadence = static_cast<int>(to_int(value, key, line));
    else if (key == "output.fields") cfg.write_fields = to_bool(value, key, line);
    else if (key == "output.vtk") cfg.write_vtk = to_bool(value, key, line);
    else if (key == "output.filter_log") cfg.filter_log = to_bool(value, key, line);
    else if (key == "output.forces_tag") cfg.forces_tag = value;
    else if (key.rfind("bc.", 0) == 0) {
        if (value != "wall" && value != "farfield")
            throw parse_error("config: bc kind must be wall or farfield", line);
        const std::string tag = key.substr(3);
        for (auto& [t, k] : cfg.bc_kinds)
            if (t == tag) {
                k = value;
                return;
            }
        cfg.bc_kinds.emplace_back(tag, value);
    } else throw parse_error("config: unknown key '" + key + "'", line);
}

inline RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = detail::trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw parse_error("config: expected 'section.key = value'", lineno);
        const std::string key = detail::trim(t.substr(0, eq));
        const std::string value = detail::trim(t.substr(eq + 1));
        if (key.empty() || key.find('.') == std::string::npos)
            throw parse_error("config: keys must be of the form section.key", lineno);
        config_set(cfg, key, value, lineno);
    }
    return cfg;
}

inline RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("config: cannot open " + path);
    return parse_config(in);
}

/// Apply a command-line `key=value` override.
inline void apply_override(RunConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw parse_error("override: expected key=value, got '" + assignment + "'");
    config_set(cfg, detail::trim(assignment.substr(0, eq)),
               detail::trim(assignment.substr(eq + 1)));
}

/// Echo the fully resolved config; the output re-parses to an equivalent
/// RunConfig.
inline void write_config(const RunConfig& cfg, std::ostream& out) {
    auto case_name = [&] {
        switch (cfg.case_id) {
            case CaseId::DensityWave: return "density_wave";
            case CaseId::IsentropicVortex: return "isentropic_vortex";
            case CaseId::KelvinHelmholtz: return "kelvin_helmholtz";
            case CaseId::TaylorGreen2d: return "taylor_green_2d";
            default: return "from_mesh_file";
        }
    };
    auto mode_name = [&] {
        switch (cfg.antialias.mode) {
            case AntialiasMode::None: return "none";
            case AntialiasMode::OverIntegration: return "over_integration";
            case AntialiasMode::ModalFilter: return "modal_filter";
            default: return "entropy_filter";
        }
    };
    out.precision(17);
    out << "case.name = " << case_name() << "\n";
    out << "case.nx = " << cfg.nx << "\n";
    if (!cfg.mesh_file.empty()) out << "case.mesh_file = " << cfg.mesh_file << "\n";
    out << "case.seed = " << cfg.seed << "\n";
    out << "case.kh_sharpness = " << cfg.kh_sharpness << "\n";
    out << "case.kh_amplitude = " << cfg.kh_amplitude << "\n";
    out << "case.kh_contrast = " << cfg.kh_contrast << "\n";
    out << "solver.p = " << cfg.p << "\n";
    out << "solver.nodes = " << cfg.nodes << "\n";
    out << "solver.threads = " << cfg.threads << "\n";
    out << "gas.gamma = " << cfg.gas.gamma << "\n";
    out << "gas.prandtl = " << cfg.gas.prandtl << "\n";
    out << "gas.mu = " << cfg.gas.mu << "\n";
    out << "time.dt = " << cfg.dt << "\n";
    out << "time.t_end = " << cfg.t_end << "\n";
    out << "antialias.mode = " << mode_name() << "\n";
    out << "antialias.oi_points = " << cfg.antialias.oi_points << "\n";
    out << "antialias.kappa = " << cfg.antialias.mf_kappa << "\n";
    out << "antialias.eta_c = " << cfg.antialias.mf_eta_c << "\n";
    out << "antialias.s = " << cfg.antialias.mf_s << "\n";
    out << "antialias.apply_every_n_steps = " << cfg.antialias.mf_every << "\n";
    out << "antialias.zeta_max = " << cfg.antialias.ef.zeta_max << "\n";
    out << "antialias.constraint_tol = " << cfg.antialias.ef.constraint_tol << "\n";
    out << "antialias.bisect_tol = " << cfg.antialias.ef.bisect_tol << "\n";
    out << "antialias.ef_reference = " << (cfg.antialias.ef_prev_stage_ref ? "previous" : "stage")
        << "\n";
    if (!cfg.output_dir.empty()) out << "output.dir = " << cfg.output_dir << "\n";
    out << "output.cadence = " << cfg.cadence << "\n";
    out << "output.fields = " << (cfg.write_fields ? "true" : "false") << "\n";
    out << "output.vtk = " << (cfg.write_vtk ? "true" : "false") << "\n";
    out << "output.filter_log = " << (cfg.filter_log ? "true" : "false") << "\n";
    if (!cfg.forces_tag.empty()) out << "output.forces_tag = " << cfg.forces_tag << "\n";
    for (const auto& [tag, kind] : cfg.bc_kinds) out << "bc." << tag << " = " << kind << "\n";
}

} // namespace frdealias

#endif
