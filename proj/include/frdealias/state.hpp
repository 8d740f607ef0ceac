#ifndef FRDEALIAS_STATE_HPP
#define FRDEALIAS_STATE_HPP

#include <cmath>
#include <vector>

#include "basis.hpp"
#include "mesh.hpp"
#include "physics.hpp"

namespace frdealias {

/// Per-element nodal conserved variables, flat layout
/// [element][node][variable], plus the simulation clock.
struct SolutionState {
    int dim = 2;
    int num_nodes = 0;  // nodes per element
    std::vector<double> u;
    double time = 0.0;

    SolutionState() = default;
    SolutionState(int dim, int num_elements, int nodes_per_element)
        : dim(dim), num_nodes(nodes_per_element),
          u(static_cast<std::size_t>(num_elements) * nodes_per_element * num_vars(dim), 0.0) {}

    int nvar() const { return num_vars(dim); }
    int num_elements() const {
        return num_nodes ? static_cast<int>(u.size()) / (num_nodes * nvar()) : 0;
    }

    double* node(int elem, int i) { return &u[(static_cast<std::size_t>(elem) * num_nodes + i) * nvar()]; }
    const double* node(int elem, int i) const {
        return &u[(static_cast<std::size_t>(elem) * num_nodes + i) * nvar()];
    }

    StateVec get(int elem, int i) const {
        StateVec s{};
        const double* p = node(elem, i);
        for (int v = 0; v < nvar(); ++v) s[v] = p[v];
        return s;
    }

    void set(int elem, int i, const StateVec& s) {
        double* p = node(elem, i);
        for (int v = 0; v < nvar(); ++v) p[v] = s[v];
    }

    bool all_finite() const {
        for (double v : u)
            if (!std::isfinite(v)) return false;
        return true;
    }

    /// Element index of the first non-finite entry, or -1.
    int first_non_finite() const {
        for (std::size_t k = 0; k < u.size(); ++k)
            if (!std::isfinite(u[k]))
                return static_cast<int>(k / (static_cast<std::size_t>(num_nodes) * nvar()));
        return -1;
    }
};

} // namespace frdealias

#endif
