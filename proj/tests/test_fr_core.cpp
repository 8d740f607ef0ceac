#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "frdealias/cases.hpp"
#include "frdealias/fr_core.hpp"

using namespace frdealias;
using Catch::Matchers::WithinAbs;

namespace {

SolutionState sampled(const FrSolver& solver, const std::function<StateVec(Vec2)>& f) {
    const auto& elem = solver.element();
    const auto& mesh = solver.mesh();
    SolutionState s = solver.make_state();
    const int n = elem.nodes_per_dir();
    for (int e = 0; e < mesh.num_elements(); ++e)
        for (int i = 0; i < elem.num_nodes(); ++i) {
            const double xi = elem.solution_rule().nodes[mesh.dim == 1 ? i : i % n];
            const double eta = mesh.dim == 1 ? 0.0 : elem.solution_rule().nodes[i / n];
            s.set(e, i, f(mesh.map_to_physical(e, xi, eta)));
        }
    return s;
}

double max_abs(const SolutionState& s) {
    double m = 0.0;
    for (double v : s.u) m = std::max(m, std::abs(v));
    return m;
}

} // namespace

TEST_CASE("free-stream preservation") {
    const StateVec uniform{1.0, 0.3, -0.2, 2.6};
    for (auto family : {NodeFamily::GaussLegendre, NodeFamily::GaussLobatto}) {
        AntialiasConfig aa;
        SECTION(family == NodeFamily::GaussLegendre ? "GL nodes" : "GLL nodes") {
            auto mesh = build_cartesian(2, {{{0.0, 1.0}, {0.0, 1.0}}}, {3, 3}, {true, true}, 0.4);
            ReferenceElement elem(3, 2, family);
            FrSolver solver(mesh, elem, GasModel{}, {}, aa);
            auto s = sampled(solver, [&](Vec2) { return uniform; });
            CHECK(max_abs(solver.compute_residual(s)) < 1e-12);
        }
    }
}

TEST_CASE("density-wave residual matches the analytic time derivative") {
    // rho = 1 + 0.2 sin(2 pi x), u = 1, P = 1: d rho/dt = -0.4 pi cos(2 pi x).
    auto run = [](int p, int nelem) {
        ReferenceElement elem(p, 1, NodeFamily::GaussLegendre);
        auto mesh = build_cartesian(1, {{{0.0, 1.0}, {0.0, 1.0}}}, {nelem, 1}, {true, false});
        FrSolver solver(mesh, elem, GasModel{}, {});
        auto s = sampled(solver, [](Vec2 pt) -> StateVec {
            const double rho = 1.0 + 0.2 * std::sin(2.0 * M_PI * pt.x);
            return {rho, rho, 2.5 + 0.5 * rho, 0.0};
        });
        auto r = solver.compute_residual(s);
        double err = 0.0;
        for (int e = 0; e < mesh.num_elements(); ++e)
            for (int i = 0; i <= p; ++i) {
                const double x = mesh.map_to_physical(e, elem.solution_rule().nodes[i]).x;
                err = std::max(err, std::abs(r.node(e, i)[0] +
                                             0.4 * M_PI * std::cos(2.0 * M_PI * x)));
            }
        return err;
    };
    // Error decreases at order >= p under mesh refinement.
    for (int p : {2, 3, 4}) {
        const double e1 = run(p, 8), e2 = run(p, 16);
        CHECK(e1 / e2 > std::pow(2.0, p) * 0.8);
    }
}

TEST_CASE("corrected gradient") {
    SECTION("linear field is differentiated exactly away from periodic wraps") {
        ReferenceElement elem(3, 2, NodeFamily::GaussLobatto);
        auto mesh = build_cartesian(2, {{{0.0, 3.0}, {0.0, 3.0}}}, {3, 3}, {true, true});
        FrSolver solver(mesh, elem, GasModel{1.4, 0.71, 0.01}, {});
        auto s = sampled(solver, [](Vec2 p) -> StateVec {
            return {2.0 + 0.5 * p.x + 0.25 * p.y, 0.0, 0.0, 10.0};
        });
        const auto g = solver.compute_gradient(s);
        const int ns = elem.num_nodes();
        // Element 4 sits in the middle of the 3x3 grid: no wrap jumps touch it.
        for (int i = 0; i < ns; ++i) {
            CHECK_THAT(g[((4 * ns + i) * 2 + 0) * 4 + 0], WithinAbs(0.5, 1e-11));
            CHECK_THAT(g[((4 * ns + i) * 2 + 1) * 4 + 0], WithinAbs(0.25, 1e-11));
        }
    }
    SECTION("constant field has zero gradient everywhere") {
        ReferenceElement elem(2, 2, NodeFamily::GaussLegendre);
        auto mesh = build_cartesian(2, {{{0.0, 1.0}, {0.0, 1.0}}}, {2, 2}, {true, true}, 0.2);
        FrSolver solver(mesh, elem, GasModel{1.4, 0.71, 0.01}, {});
        auto s = sampled(solver, [](Vec2) -> StateVec { return {1.3, 0.1, 0.2, 2.0}; });
        for (double v : solver.compute_gradient(s)) CHECK(std::abs(v) < 1e-13);
    }
}

TEST_CASE("residual conserves the global integral on periodic meshes") {
    for (auto mode : {AntialiasMode::None, AntialiasMode::OverIntegration,
                      AntialiasMode::ModalFilter}) {
        AntialiasConfig aa;
        aa.mode = mode;
        aa.oi_points = 8;
        ReferenceElement elem(4, 2, NodeFamily::GaussLegendre);
        auto mesh = build_cartesian(2, {{{0.0, 1.0}, {0.0, 1.0}}}, {4, 4}, {true, true});
        FrSolver solver(mesh, elem, GasModel{1.4, 0.71, 0.001}, {}, aa);
        auto s = sampled(solver, [](Vec2 p) -> StateVec {
            const double rho = 1.0 + 0.3 * std::sin(2.0 * M_PI * p.x) * std::cos(4.0 * M_PI * p.y);
            return {rho, 0.3 * rho * std::cos(2.0 * M_PI * p.y), -0.2 * rho,
                    3.0 + 0.5 * std::sin(2.0 * M_PI * p.x)};
        });
        const auto r = solver.compute_residual(s);
        const auto& w = elem.solution_rule().weights;
        double tot[4] = {};
        for (int e = 0; e < mesh.num_elements(); ++e)
            for (int i = 0; i < elem.num_nodes(); ++i)
                for (int v = 0; v < 4; ++v)
                    tot[v] += w[i % 5] * w[i / 5] * mesh.geometry[e].det * r.node(e, i)[v];
        for (int v = 0; v < 4; ++v) CHECK_THAT(tot[v], WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("residual operator is linear under a linear flux hook") {
    // F(u) = c u per direction is linear, so the residual must be linear too.
    InviscidFluxHook hook;
    hook.flux = [](const StateVec& u, int dim) {
        FluxVec f{};
        const double c[2] = {0.7, -0.4};
        for (int d = 0; d < dim; ++d)
            for (int v = 0; v < dim + 2; ++v) f[d][v] = c[d] * u[v];
        return f;
    };
    hook.wavespeed = [](const StateVec&, Vec2, int) { return 0.9; };
    ReferenceElement elem(3, 2, NodeFamily::GaussLegendre);
    auto mesh = build_cartesian(2, {{{0.0, 1.0}, {0.0, 1.0}}}, {3, 3}, {true, true});
    FrSolver solver(mesh, elem, GasModel{}, {});
    solver.set_flux_hook(hook);
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    auto random_state = [&] {
        auto s = solver.make_state();
        for (auto& v : s.u) v = dist(rng);
        return s;
    };
    const auto s1 = random_state();
    const auto s2 = random_state();
    SolutionState combo = s1;
    for (std::size_t i = 0; i < combo.u.size(); ++i) combo.u[i] = 2.0 * s1.u[i] - 3.0 * s2.u[i];
    const auto r1 = solver.compute_residual(s1);
    const auto r2 = solver.compute_residual(s2);
    const auto rc = solver.compute_residual(combo);
    for (std::size_t i = 0; i < rc.u.size(); ++i)
        CHECK_THAT(rc.u[i], WithinAbs(2.0 * r1.u[i] - 3.0 * r2.u[i], 1e-10));
}

TEST_CASE("input validation errors") {
    ReferenceElement elem(2, 2, NodeFamily::GaussLegendre);
    auto mesh = build_cartesian(2, {{{0.0, 1.0}, {0.0, 1.0}}}, {2, 2}, {true, true});
    FrSolver solver(mesh, elem, GasModel{}, {});
    auto s = solver.make_state();
    for (int e = 0; e < mesh.num_elements(); ++e)
        for (int i = 0; i < elem.num_nodes(); ++i) s.set(e, i, {1.0, 0.0, 0.0, 2.5});
    SECTION("inadmissible node names element and node") {
        s.node(2, 5)[0] = -0.2;
        try {
            solver.compute_residual(s);
            FAIL("expected admissibility_error");
        } catch (const admissibility_error& e) {
            CHECK(e.element == 2);
            CHECK(e.node == 5);
        }
    }
    SECTION("non-finite input raises a blowup error") {
        s.node(1, 0)[3] = std::nan("");
        CHECK_THROWS_AS(solver.compute_residual(s), blowup_error);
    }
    SECTION("missing boundary condition is rejected at construction") {
        auto open = build_cartesian(2, {{{0.0, 1.0}, {0.0, 1.0}}}, {2, 2}, {false, false});
        CHECK_THROWS_AS(FrSolver(open, elem, GasModel{}, {}), std::invalid_argument);
    }
}

TEST_CASE("boundary conditions") {
    ReferenceElement elem(3, 2, NodeFamily::GaussLegendre);
    SECTION("resting gas between adiabatic walls stays at rest") {
        auto mesh = build_cartesian(2, {{{0.0, 1.0}, {0.0, 1.0}}}, {3, 3}, {true, false});
        std::vector<BoundaryCondition> bcs{{"bottom", BcKind::NoSlipAdiabaticWall, {}},
                                           {"top", BcKind::NoSlipAdiabaticWall, {}}};
        FrSolver solver(mesh, elem, GasModel{1.4, 0.71, 0.01}, bcs);
        auto s = sampled(solver, [](Vec2) -> StateVec { return {1.0, 0.0, 0.0, 2.5}; });
        CHECK(max_abs(solver.compute_residual(s)) < 1e-11);
    }
    SECTION("farfield at the freestream state is transparent") {
        auto mesh = build_cartesian(2, {{{0.0, 1.0}, {0.0, 1.0}}}, {3, 3}, {false, false});
        const StateVec inf{1.0, 0.4, 0.1, 2.7};
        std::vector<BoundaryCondition> bcs;
        for (const char* tag : {"left", "right", "bottom", "top"})
            bcs.push_back({tag, BcKind::Farfield, inf});
        FrSolver solver(mesh, elem, GasModel{}, bcs);
        auto s = sampled(solver, [&](Vec2) { return inf; });
        CHECK(max_abs(solver.compute_residual(s)) < 1e-12);
    }
    SECTION("wall ghost reverses velocity") {
        auto mesh = build_cartesian(2, {{{0.0, 1.0}, {0.0, 1.0}}}, {2, 2}, {true, false});
        std::vector<BoundaryCondition> bcs{{"bottom", BcKind::NoSlipAdiabaticWall, {}},
                                           {"top", BcKind::NoSlipAdiabaticWall, {}}};
        FrSolver solver(mesh, elem, GasModel{}, bcs);
        const StateVec u{1.2, 0.3, -0.4, 2.9};
        const auto g = solver.ghost_state(u, bcs[0], 2);
        CHECK(g[0] == u[0]);
        CHECK(g[1] == -u[1]);
        CHECK(g[2] == -u[2]);
        CHECK(g[3] == u[3]);
    }
}

TEST_CASE("flipped shared faces connect consistently") {
    // A mesh file with one rotated element still preserves free-stream and a
    // smooth residual; exercises the face-point reversal path.
    const char* txt = R"(2 6 2 6
0 0
1 0
2 0
0 1
1 1
2 1
0 1 4 3
5 4 1 2
a 0 1
b 1 2
c 3 4
d 4 5
e 0 3
f 2 5
)";
    std::istringstream in(txt);
    auto mesh = load_mesh(in);
    REQUIRE(mesh.interior_faces[0].flip);
    ReferenceElement elem(3, 2, NodeFamily::GaussLegendre);
    const StateVec inf{1.0, 0.25, -0.15, 2.8};
    std::vector<BoundaryCondition> bcs;
    for (const char* tag : {"a", "b", "c", "d", "e", "f"})
        bcs.push_back({tag, BcKind::Farfield, inf});
    FrSolver solver(mesh, elem, GasModel{}, bcs);
    auto s = sampled(solver, [&](Vec2) { return inf; });
    CHECK(max_abs(solver.compute_residual(s)) < 1e-12);
    // Smooth pressure bump: residual must stay bounded and mirror-symmetric
    // in mass flux across the interface (no seam artifacts).
    auto s2 = sampled(solver, [&](Vec2 p) -> StateVec {
        const double pr = 1.0 + 0.1 * std::exp(-10.0 * ((p.x - 1.0) * (p.x - 1.0) +
                                                        (p.y - 0.5) * (p.y - 0.5)));
        return {1.0, 0.0, 0.0, pr / 0.4};
    });
    const auto r = solver.compute_residual(s2);
    CHECK(r.all_finite());
}
