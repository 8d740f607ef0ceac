#ifndef FRDEALIAS_IO_HPP
#define FRDEALIAS_IO_HPP

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "antialias.hpp"
#include "basis.hpp"
#include "diagnostics.hpp"
#include "errors.hpp"
#include "mesh.hpp"
#include "physics.hpp"
#include "state.hpp"

namespace frdealias {

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write " + path);
    out.precision(17);
    return out;
}

/// Append-style CSV writer for uniform tables; writes the header once.
class CsvWriter {
public:
    CsvWriter() = default;
    CsvWriter(const std::string& path, const std::string& header) : out_(open_output(path)) {
        out_ << header << "\n";
    }

    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << values[i];
        out_ << "\n";
    }

    void flush() { out_.flush(); }
    bool is_open() const { return out_.is_open(); }

private:
    std::ofstream out_;
};

inline void write_psd_csv(const PowerSpectrum& ps, const std::string& path) {
    auto out = open_output(path);
    out << "frequency,power\n";
    for (std::size_t i = 0; i < ps.frequency.size(); ++i)
        out << ps.frequency[i] << "," << ps.power[i] << "\n";
}

/// Nodal field dump: x, y, conserved variables, pressure and entropy.
inline void write_fields_csv(const SolutionState& state, const Mesh& mesh,
                             const ReferenceElement& elem, const GasModel& gas,
                             const std::string& path) {
    auto out = open_output(path);
    out << (state.dim == 1 ? "x,rho,rhou,E,P,sigma\n" : "x,y,rho,rhou,rhov,E,P,sigma\n");
    const auto& nodes = elem.solution_rule().nodes;
    const int n = elem.nodes_per_dir();
    for (int e = 0; e < mesh.num_elements(); ++e)
        for (int i = 0; i < elem.num_nodes(); ++i) {
            const double xi = nodes[state.dim == 1 ? i : i % n];
            const double eta = state.dim == 1 ? 0.0 : nodes[i / n];
            const Vec2 p = mesh.map_to_physical(e, xi, eta);
            const StateVec u = state.get(e, i);
            out << p.x;
            if (state.dim == 2) out << "," << p.y;
            for (int v = 0; v < state.nvar(); ++v) out << "," << u[v];
            out << "," << pressure(u, gas, state.dim) << "," << entropy(u, gas, state.dim)
                << "\n";
        }
}

/// Legacy ASCII VTK unstructured output; each element is split into a
/// (p x p) grid of bilinear sub-quads on its solution nodes (lines in 1D).
inline void write_vtk(const SolutionState& state, const Mesh& mesh, const ReferenceElement& elem,
                      const GasModel& gas, const std::string& path) {
    auto out = open_output(path);
    const int n = elem.nodes_per_dir();
    const int ns = elem.num_nodes();
    const auto& nodes = elem.solution_rule().nodes;
    out << "# vtk DataFile Version 3.0\nfrdealias fields\nASCII\nDATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << mesh.num_elements() * ns << " double\n";
    for (int e = 0; e < mesh.num_elements(); ++e)
        for (int i = 0; i < ns; ++i) {
            const double xi = nodes[state.dim == 1 ? i : i % n];
            const double eta = state.dim == 1 ? 0.0 : nodes[i / n];
            const Vec2 p = mesh.map_to_physical(e, xi, eta);
            out << p.x << " " << p.y << " 0\n";
        }
    const int sub = state.dim == 1 ? (n - 1) : (n - 1) * (n - 1);
    const int cells = mesh.num_elements() * std::max(sub, 0);
    const int entry = state.dim == 1 ? 3 : 5;
    out << "CELLS " << cells << " " << cells * entry << "\n";
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const int base = e * ns;
        if (state.dim == 1) {
            for (int i = 0; i + 1 < n; ++i) out << "2 " << base + i << " " << base + i + 1 << "\n";
        } else {
            for (int j = 0; j + 1 < n; ++j)
                for (int i = 0; i + 1 < n; ++i)
                    out << "4 " << base + elem.node_index(i, j) << " "
                        << base + elem.node_index(i + 1, j) << " "
                        << base + elem.node_index(i + 1, j + 1) << " "
                        << base + elem.node_index(i, j + 1) << "\n";
        }
    }
    out << "CELL_TYPES " << cells << "\n";
    for (int c = 0; c < cells; ++c) out << (state.dim == 1 ? 3 : 9) << "\n";
    out << "POINT_DATA " << mesh.num_elements() * ns << "\n";
    const char* names[4] = {"rho", "rhou", "rhov", "E"};
    for (int v = 0; v < state.nvar(); ++v) {
        out << "SCALARS " << (v == state.nvar() - 1 ? "E" : names[v]) << " double 1\n";
        out << "LOOKUP_TABLE default\n";
        for (int e = 0; e < mesh.num_elements(); ++e)
            for (int i = 0; i < ns; ++i) out << state.node(e, i)[v] << "\n";
    }
    out << "SCALARS P double 1\nLOOKUP_TABLE default\n";
    for (int e = 0; e < mesh.num_elements(); ++e)
        for (int i = 0; i < ns; ++i) out << pressure(state.get(e, i), gas, state.dim) << "\n";
}

/// Entropy-filter activity log, one row per filtered element.
class FilterLog {
public:
    FilterLog() = default;
    explicit FilterLog(const std::string& path) : out_(open_output(path)) {
        out_ << "step,stage,element,zeta,iterations,min_slack\n";
    }

    void append(long step, int stage, const std::vector<FilterReport>& reports) {
        if (!out_.is_open()) return;
        for (const auto& r : reports)
            if (r.zeta > 0.0)
                out_ << step << "," << stage << "," << r.element << "," << r.zeta << ","
                     << r.iterations << "," << r.min_sigma_slack << "\n";
    }

    bool is_open() const { return out_.is_open(); }

private:
    std::ofstream out_;
};

/// Read one numeric column (by header name) from a CSV file.
inline std::vector<double> read_csv_column(const std::string& path, const std::string& column,
                                           std::vector<double>* first_column = nullptr) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw parse_error("empty csv " + path);
    std::vector<std::string> headers;
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) headers.push_back(cell);
    int col = -1;
    for (std::size_t i = 0; i < headers.size(); ++i)
        if (headers[i] == column) col = static_cast<int>(i);
    if (col < 0) throw parse_error("csv " + path + " has no column '" + column + "'");
    std::vector<double> values;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::vector<double> row;
        while (std::getline(ls, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (...) {
                throw parse_error("csv " + path + ": bad number", lineno);
            }
        }
        if (col >= static_cast<int>(row.size()))
            throw parse_error("csv " + path + ": short row", lineno);
        values.push_back(row[col]);
        if (first_column && !row.empty()) first_column->push_back(row[0]);
    }
    return values;
}

} // namespace frdealias

#endif
