#ifndef FRDEALIAS_MESH_HPP
#define FRDEALIAS_MESH_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace frdealias {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

enum class BcKind { Periodic, NoSlipAdiabaticWall, Farfield };

struct BoundaryCondition {
    std::string tag;
    BcKind kind = BcKind::Periodic;
    // Conserved freestream state for farfield boundaries.
    std::array<double, 4> freestream{1.0, 0.0, 0.0, 2.5};
};

/// Interior face: two (element, local face) sides. `flip` is set when the
/// tangential orderings of the two sides run in opposite directions.
struct InteriorFace {
    int elem_l, face_l;
    int elem_r, face_r;
    bool flip = false;
};

struct BoundaryFace {
    int elem;
    int face;
    std::string tag;
};

/// Per-element affine mapping data. Local faces on the reference square:
/// 0: xi=-1, 1: xi=+1, 2: eta=-1, 3: eta=+1; tangential direction is the
/// increasing remaining reference coordinate. In 1D only faces 0 and 1 exist.
struct ElementGeometry {
    double jac[2][2];      // dx/dref, columns are (d/dxi, d/deta)
    double inv_jac[2][2];  // dref/dx
    double det = 0.0;
    std::array<double, 4> face_scale{};   // ds_phys / ds_ref per local face
    std::array<Vec2, 4> face_normal{};    // outward unit physical normal
};

class Mesh {
public:
    int dim = 2;
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 4>> elements;  // 1D uses the first two entries
    std::vector<InteriorFace> interior_faces;
    std::vector<BoundaryFace> boundary_faces;
    std::vector<std::vector<int>> voronoi_neighbors;
    std::vector<ElementGeometry> geometry;

    int num_elements() const { return static_cast<int>(elements.size()); }
    int faces_per_element() const { return 2 * dim; }

    /// Vertex indices (ordered along the face tangential direction) of a
    /// local face of an element.
    std::array<int, 2> face_vertices(int elem, int face) const {
        const auto& e = elements[elem];
        if (dim == 1) return {e[face == 0 ? 0 : 1], -1};
        switch (face) {
            case 0: return {e[0], e[3]};
            case 1: return {e[1], e[2]};
            case 2: return {e[0], e[1]};
            default: return {e[3], e[2]};
        }
    }

    Vec2 map_to_physical(int elem, double xi, double eta = 0.0) const {
        const auto& e = elements[elem];
        const Vec2 v0 = vertices[e[0]];
        const auto& g = geometry[elem];
        Vec2 p = v0;
        p.x += g.jac[0][0] * (xi + 1.0) + g.jac[0][1] * (eta + 1.0);
        p.y += g.jac[1][0] * (xi + 1.0) + g.jac[1][1] * (eta + 1.0);
        return p;
    }

    void finalize() {
        build_geometry();
        build_neighbors();
    }

private:
    void build_geometry() {
        geometry.resize(elements.size());
        for (int k = 0; k < num_elements(); ++k) {
            auto& g = geometry[k];
            if (dim == 1) {
                const double h = vertices[elements[k][1]].x - vertices[elements[k][0]].x;
                if (h <= 0.0)
                    throw parse_error("mesh: non-positive Jacobian in element " + std::to_string(k));
                g.jac[0][0] = h / 2.0;
                g.jac[0][1] = g.jac[1][0] = 0.0;
                g.jac[1][1] = 1.0;
                g.det = h / 2.0;
                g.inv_jac[0][0] = 2.0 / h;
                g.inv_jac[0][1] = g.inv_jac[1][0] = 0.0;
                g.inv_jac[1][1] = 1.0;
                g.face_scale[0] = g.face_scale[1] = 1.0;
                g.face_normal[0] = {-1.0, 0.0};
                g.face_normal[1] = {1.0, 0.0};
                continue;
            }
            const auto& e = elements[k];
            const Vec2 a1 = vertices[e[1]] - vertices[e[0]];
            const Vec2 a2 = vertices[e[3]] - vertices[e[0]];
            const Vec2 d = (vertices[e[2]] - vertices[e[1]]) - a2;
            const double scale = std::max(norm(a1), norm(a2));
            if (norm(d) > 1e-12 * scale)
                throw parse_error("mesh: element " + std::to_string(k) +
                                  " is not a parallelogram (only affine quads supported)");
            g.jac[0][0] = a1.x / 2.0;
            g.jac[1][0] = a1.y / 2.0;
            g.jac[0][1] = a2.x / 2.0;
            g.jac[1][1] = a2.y / 2.0;
            g.det = g.jac[0][0] * g.jac[1][1] - g.jac[0][1] * g.jac[1][0];
            if (g.det <= 0.0)
                throw parse_error("mesh: non-positive Jacobian in element " + std::to_string(k));
            g.inv_jac[0][0] = g.jac[1][1] / g.det;
            g.inv_jac[0][1] = -g.jac[0][1] / g.det;
            g.inv_jac[1][0] = -g.jac[1][0] / g.det;
            g.inv_jac[1][1] = g.jac[0][0] / g.det;
            // Scaled outward normals: cof(J) * nref.
            const Vec2 m[4] = {
                {-g.jac[1][1], g.jac[0][1]},   // xi = -1
                {g.jac[1][1], -g.jac[0][1]},   // xi = +1
                {g.jac[1][0], -g.jac[0][0]},   // eta = -1
                {-g.jac[1][0], g.jac[0][0]},   // eta = +1
            };
            for (int f = 0; f < 4; ++f) {
                g.face_scale[f] = norm(m[f]);
                g.face_normal[f] = {m[f].x / g.face_scale[f], m[f].y / g.face_scale[f]};
            }
        }
    }

    void build_neighbors() {
        voronoi_neighbors.assign(elements.size(), {});
        for (const auto& f : interior_faces) {
            auto add = [this](int a, int b) {
                auto& v = voronoi_neighbors[a];
                if (std::find(v.begin(), v.end(), b) == v.end()) v.push_back(b);
            };
            add(f.elem_l, f.elem_r);
            add(f.elem_r, f.elem_l);
        }
        for (auto& v : voronoi_neighbors) std::sort(v.begin(), v.end());
    }
};

/// Uniform Cartesian mesh, optionally periodic per axis and sheared into
/// parallelograms via `skew` (x -> x + skew * y).
inline Mesh build_cartesian(int dim, const std::array<std::array<double, 2>, 2>& extents,
                            const std::array<int, 2>& counts,
                            const std::array<bool, 2>& periodic, double skew = 0.0) {
    if (dim < 1 || dim > 2) throw std::invalid_argument("build_cartesian: dim must be 1 or 2");
    for (int d = 0; d < dim; ++d) {
        if (counts[d] < 1) throw std::invalid_argument("build_cartesian: counts must be >= 1");
        if (extents[d][1] <= extents[d][0])
            throw std::invalid_argument("build_cartesian: inverted extents");
    }
    Mesh mesh;
    mesh.dim = dim;
    if (dim == 1) {
        const int nx = counts[0];
        const double lo = extents[0][0], hi = extents[0][1];
        for (int i = 0; i <= nx; ++i)
            mesh.vertices.push_back({lo + (hi - lo) * i / nx, 0.0});
        for (int i = 0; i < nx; ++i)
            mesh.elements.push_back({i, i + 1, -1, -1});
        for (int i = 0; i + 1 < nx; ++i)
            mesh.interior_faces.push_back({i, 1, i + 1, 0, false});
        if (periodic[0] && nx >= 1)
            mesh.interior_faces.push_back({nx - 1, 1, 0, 0, false});
        else {
            mesh.boundary_faces.push_back({0, 0, "left"});
            mesh.boundary_faces.push_back({nx - 1, 1, "right"});
        }
        mesh.finalize();
        return mesh;
    }
    const int nx = counts[0], ny = counts[1];
    const double x0 = extents[0][0], x1 = extents[0][1];
    const double y0 = extents[1][0], y1 = extents[1][1];
    auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) {
            const double y = y0 + (y1 - y0) * j / ny;
            mesh.vertices.push_back({x0 + (x1 - x0) * i / nx + skew * y, y});
        }
    auto eid = [nx](int i, int j) { return j * nx + i; };
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            mesh.elements.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i + 1 < nx; ++i)
            mesh.interior_faces.push_back({eid(i, j), 1, eid(i + 1, j), 0, false});
        if (periodic[0] && nx >= 1)
            mesh.interior_faces.push_back({eid(nx - 1, j), 1, eid(0, j), 0, false});
    }
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j + 1 < ny; ++j)
            mesh.interior_faces.push_back({eid(i, j), 3, eid(i, j + 1), 2, false});
        if (periodic[1] && ny >= 1)
            mesh.interior_faces.push_back({eid(i, ny - 1), 3, eid(i, 0), 2, false});
    }
    if (!periodic[0]) {
        for (int j = 0; j < ny; ++j) {
            mesh.boundary_faces.push_back({eid(0, j), 0, "left"});
            mesh.boundary_faces.push_back({eid(nx - 1, j), 1, "right"});
        }
    }
    if (!periodic[1]) {
        for (int i = 0; i < nx; ++i) {
            mesh.boundary_faces.push_back({eid(i, 0), 2, "bottom"});
            mesh.boundary_faces.push_back({eid(i, ny - 1), 3, "top"});
        }
    }
    mesh.finalize();
    return mesh;
}

/// Plain-text mesh format:
///   line 1:  dim n_vertices n_elements n_boundary_tags
///   vertices: "x y" (2D) or "x" (1D)
///   elements: counter-clockwise vertex indices (4 in 2D, 2 in 1D)
///   boundary: "tag v0 v1" (2D) or "tag v0" (1D)
inline Mesh load_mesh(std::istream& in) {
    Mesh mesh;
    int nv = 0, ne = 0, nb = 0;
    int lineno = 0;
    std::string line;
    auto next_line = [&](std::istringstream& ss) {
        while (std::getline(in, line)) {
            ++lineno;
            const auto pos = line.find('#');
            if (pos != std::string::npos) line.erase(pos);
            if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
            ss = std::istringstream(line);
            return true;
        }
        return false;
    };
    std::istringstream ss;
    if (!next_line(ss) || !(ss >> mesh.dim >> nv >> ne >> nb))
        throw parse_error("mesh: malformed header", lineno);
    if (mesh.dim < 1 || mesh.dim > 2) throw parse_error("mesh: dim must be 1 or 2", lineno);
    for (int i = 0; i < nv; ++i) {
        if (!next_line(ss)) throw parse_error("mesh: missing vertex line", lineno);
        Vec2 v;
        if (mesh.dim == 2) {
            if (!(ss >> v.x >> v.y)) throw parse_error("mesh: bad vertex", lineno);
        } else if (!(ss >> v.x)) {
            throw parse_error("mesh: bad vertex", lineno);
        }
        mesh.vertices.push_back(v);
    }
    const int npe = mesh.dim == 1 ? 2 : 4;
    for (int i = 0; i < ne; ++i) {
        if (!next_line(ss)) throw parse_error("mesh: missing element line", lineno);
        std::array<int, 4> e{-1, -1, -1, -1};
        for (int j = 0; j < npe; ++j) {
            if (!(ss >> e[j]) || e[j] < 0 || e[j] >= nv)
                throw parse_error("mesh: bad element " + std::to_string(i), lineno);
        }
        mesh.elements.push_back(e);
    }
    std::map<std::vector<int>, std::string> tagged;
    for (int i = 0; i < nb; ++i) {
        if (!next_line(ss)) throw parse_error("mesh: missing boundary line", lineno);
        std::string tag;
        if (!(ss >> tag)) throw parse_error("mesh: bad boundary line", lineno);
        std::vector<int> key(mesh.dim == 1 ? 1 : 2);
        for (auto& v : key)
            if (!(ss >> v)) throw parse_error("mesh: bad boundary line", lineno);
        std::sort(key.begin(), key.end());
        tagged[key] = tag;
    }

    // Match faces through sorted vertex-index keys.
    struct Side {
        int elem, face;
    };
    std::map<std::vector<int>, std::vector<Side>> open;
    for (int k = 0; k < ne; ++k) {
        for (int f = 0; f < 2 * mesh.dim; ++f) {
            const auto fv = mesh.face_vertices(k, f);
            std::vector<int> key;
            key.push_back(fv[0]);
            if (mesh.dim == 2) key.push_back(fv[1]);
            std::sort(key.begin(), key.end());
            open[key].push_back({k, f});
        }
    }
    for (auto& [key, sides] : open) {
        if (sides.size() > 2)
            throw parse_error("mesh: face shared by more than two elements (element " +
                              std::to_string(sides[2].elem) + ")");
        if (sides.size() == 2) {
            const auto [el, fl] = sides[0];
            const auto [er, fr] = sides[1];
            bool flip = false;
            if (mesh.dim == 2) {
                const auto lv = mesh.face_vertices(el, fl);
                const auto rv = mesh.face_vertices(er, fr);
                flip = (lv[0] != rv[0]);
            }
            mesh.interior_faces.push_back({el, fl, er, fr, flip});
        } else {
            const auto it = tagged.find(key);
            if (it == tagged.end())
                throw parse_error("mesh: unmatched untagged face of element " +
                                  std::to_string(sides[0].elem));
            mesh.boundary_faces.push_back({sides[0].elem, sides[0].face, it->second});
        }
    }
    mesh.finalize();
    return mesh;
}

inline Mesh load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("mesh: cannot open " + path);
    return load_mesh(in);
}

inline void write_mesh(const Mesh& mesh, std::ostream& out) {
    out.precision(17);
    out << mesh.dim << ' ' << mesh.vertices.size() << ' ' << mesh.elements.size() << ' '
        << mesh.boundary_faces.size() << '\n';
    for (const auto& v : mesh.vertices) {
        out << v.x;
        if (mesh.dim == 2) out << ' ' << v.y;
        out << '\n';
    }
    const int npe = mesh.dim == 1 ? 2 : 4;
    for (const auto& e : mesh.elements) {
        for (int j = 0; j < npe; ++j) out << (j ? " " : "") << e[j];
        out << '\n';
    }
    for (const auto& b : mesh.boundary_faces) {
        const auto fv = mesh.face_vertices(b.elem, b.face);
        out << b.tag << ' ' << fv[0];
        if (mesh.dim == 2) out << ' ' << fv[1];
        out << '\n';
    }
}

inline void write_mesh(const Mesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw parse_error("mesh: cannot write " + path);
    write_mesh(mesh, out);
}

} // namespace frdealias

#endif
