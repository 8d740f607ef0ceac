#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frdealias/driver.hpp"
#include "frdealias/io.hpp"

using namespace frdealias;

int main(int argc, char** argv) {
    CLI::App app{"flux-reconstruction Euler/Navier-Stokes solver with interchangeable "
                 "anti-aliasing (over-integration, modal filter, entropy filter)"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    auto* run = app.add_subcommand("run", "execute a configured case");
    run->add_option("--config", config_path, "run configuration file")->required();
    run->add_option("--override", overrides, "key=value config overrides");

    std::string mesh_path;
    auto* vmesh = app.add_subcommand("validate-mesh", "parse and validate a mesh file");
    vmesh->add_option("mesh", mesh_path, "mesh file")->required();

    std::string psd_input = "forces.csv", psd_column = "C_L", psd_output = "psd.csv";
    int psd_window = 4096, psd_shift = 10;
    auto* psd = app.add_subcommand("psd", "Welch power spectral density of a CSV time series");
    psd->add_option("--input", psd_input, "input CSV (first column = time)");
    psd->add_option("--column", psd_column, "value column name");
    psd->add_option("--window", psd_window, "window length (power of two)");
    psd->add_option("--shift", psd_shift, "segment shift in samples");
    psd->add_option("--output", psd_output, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            RunConfig cfg = parse_config(config_path);
            for (const auto& o : overrides) apply_override(cfg, o);
            try {
                const auto art = run_case(cfg);
                std::cout << "completed " << art.steps << " steps, t = "
                          << art.final_state.time << "\n";
            } catch (const blowup_error& e) {
                std::cerr << "blowup: " << e.what() << " (step " << e.step << ", stage "
                          << e.stage << ", element " << e.element << ")\n";
                return 2;
            }
        } else if (*vmesh) {
            const Mesh mesh = load_mesh(mesh_path);
            std::cout << "valid mesh: dim " << mesh.dim << ", " << mesh.vertices.size()
                      << " vertices, " << mesh.num_elements() << " elements, "
                      << mesh.interior_faces.size() << " interior faces, "
                      << mesh.boundary_faces.size() << " boundary faces\n";
        } else if (*psd) {
            std::vector<double> times;
            const auto values = read_csv_column(psd_input, psd_column, &times);
            const auto series = TimeSeries::from_samples(times, values);
            const auto spectrum = welch_psd(series.values, series.dt, psd_window, psd_shift);
            write_psd_csv(spectrum, psd_output);
            std::cout << "wrote " << spectrum.frequency.size() << " bins to " << psd_output
                      << "\n";
        }
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what();
        if (e.line >= 0) std::cerr << " (line " << e.line << ")";
        std::cerr << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
