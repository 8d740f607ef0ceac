#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "frdealias/cases.hpp"
#include "frdealias/diagnostics.hpp"

using namespace frdealias;
using Catch::Matchers::WithinAbs;

TEST_CASE("conserved totals") {
    ReferenceElement elem(3, 2, NodeFamily::GaussLegendre);
    auto mesh = build_cartesian(2, {{{0.0, 1.0}, {0.0, 1.0}}}, {3, 3}, {true, true});
    SolutionState s(2, mesh.num_elements(), elem.num_nodes());
    for (int e = 0; e < mesh.num_elements(); ++e)
        for (int i = 0; i < elem.num_nodes(); ++i) s.set(e, i, {1.0, 0.5, -0.25, 2.5});
    const auto tot = conserved_totals(s, mesh, elem);
    CHECK_THAT(tot[0], WithinAbs(1.0, 1e-13));
    CHECK_THAT(tot[1], WithinAbs(0.5, 1e-13));
    CHECK_THAT(tot[2], WithinAbs(-0.25, 1e-13));
    CHECK_THAT(tot[3], WithinAbs(2.5, 1e-13));
}

TEST_CASE("L2 error norms") {
    ReferenceElement elem(3, 2, NodeFamily::GaussLegendre);
    auto mesh = build_cartesian(2, {{{0.0, 1.0}, {0.0, 1.0}}}, {4, 4}, {true, true});
    SECTION("zero field against rho = 1 gives unit error") {
        SolutionState s(2, mesh.num_elements(), elem.num_nodes());
        const auto err = l2_error(
            s, [](Vec2, double) -> StateVec { return {1.0, 0.0, 0.0, 0.0}; }, mesh, elem);
        CHECK_THAT(err[0], WithinAbs(1.0, 1e-13));
        CHECK_THAT(err[1], WithinAbs(0.0, 1e-13));
    }
    SECTION("state sampled from the field has only interpolation error") {
        AnalyticField f = [](Vec2 p, double) -> StateVec {
            const double rho = 1.0 + 0.2 * std::sin(2.0 * M_PI * p.x) * std::sin(2.0 * M_PI * p.y);
            return {rho, 0.0, 0.0, 2.5};
        };
        CaseSetup cs;
        cs.mesh = mesh;
        cs.initial = [&](Vec2 p) { return f(p, 0.0); };
        auto s = sample_initial(cs, elem);
        const auto err = l2_error(s, f, mesh, elem);
        CHECK(err[0] < 1e-3);   // interpolation error at p = 3, h = 1/4
        CHECK(err[0] > 0.0);
        CHECK_THAT(err[3], WithinAbs(0.0, 1e-13));
    }
    SECTION("triangle inequality on random nodal fields") {
        std::mt19937 rng(19);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        auto rand_state = [&] {
            SolutionState s(2, mesh.num_elements(), elem.num_nodes());
            for (auto& v : s.u) v = dist(rng);
            return s;
        };
        AnalyticField zero = [](Vec2, double) { return StateVec{}; };
        for (int trial = 0; trial < 5; ++trial) {
            const auto a = rand_state();
            const auto b = rand_state();
            SolutionState sum = a;
            for (std::size_t i = 0; i < sum.u.size(); ++i) sum.u[i] += b.u[i];
            const auto na = l2_error(a, zero, mesh, elem);
            const auto nb = l2_error(b, zero, mesh, elem);
            const auto ns = l2_error(sum, zero, mesh, elem);
            for (int v = 0; v < 4; ++v) CHECK(ns[v] <= na[v] + nb[v] + 1e-12);
        }
    }
}

TEST_CASE("wall forces") {
    const GasModel gas{1.4, 0.71, 0.0};
    ReferenceElement elem(3, 2, NodeFamily::GaussLegendre);
    // Channel periodic in x, walls at top and bottom, width 2.
    auto mesh = build_cartesian(2, {{{0.0, 2.0}, {0.0, 1.0}}}, {4, 2}, {true, false});
    SECTION("uniform freestream pressure gives zero C_p and zero net force") {
        SolutionState s(2, mesh.num_elements(), elem.num_nodes());
        for (int e = 0; e < mesh.num_elements(); ++e)
            for (int i = 0; i < elem.num_nodes(); ++i) s.set(e, i, {1.0, 0.0, 0.0, 2.5});
        ForceReference ref;  // P_inf = 1 matches the state
        const auto bottom = wall_forces(s, mesh, elem, gas, "bottom", ref);
        const auto top = wall_forces(s, mesh, elem, gas, "top", ref);
        CHECK_THAT(bottom.cl + top.cl, WithinAbs(0.0, 1e-12));
        CHECK_THAT(bottom.cd + top.cd, WithinAbs(0.0, 1e-12));
        for (double cp : bottom.cp) CHECK_THAT(cp, WithinAbs(0.0, 1e-12));
    }
    SECTION("constant pressure on the bottom wall pushes normal-outward") {
        const double P = 1.7;
        SolutionState s(2, mesh.num_elements(), elem.num_nodes());
        for (int e = 0; e < mesh.num_elements(); ++e)
            for (int i = 0; i < elem.num_nodes(); ++i) s.set(e, i, {1.0, 0.0, 0.0, P / 0.4});
        ForceReference ref;
        const auto wf = wall_forces(s, mesh, elem, gas, "bottom", ref);
        // Outward normal at the bottom is (0,-1): force = -P * length in y.
        CHECK_THAT(wf.cl * ref.dynamic_pressure() * ref.length, WithinAbs(-P * 2.0, 1e-12));
        CHECK_THAT(wf.cd, WithinAbs(0.0, 1e-12));
        CHECK(wf.points.size() == 4 * elem.face_points());
    }
    SECTION("linear shear produces the analytic viscous drag") {
        const GasModel mu_gas{1.4, 0.71, 0.01};
        const double k = 0.8;  // u = k y
        SolutionState s(2, mesh.num_elements(), elem.num_nodes());
        for (int e = 0; e < mesh.num_elements(); ++e)
            for (int i = 0; i < elem.num_nodes(); ++i) {
                const int n = elem.nodes_per_dir();
                const auto pt = mesh.map_to_physical(e, elem.solution_rule().nodes[i % n],
                                                     elem.solution_rule().nodes[i / n]);
                const double u = k * pt.y;
                s.set(e, i, {1.0, u, 0.0, 2.5 + 0.5 * u * u});
            }
        ForceReference ref;
        const auto wf = wall_forces(s, mesh, elem, mu_gas, "bottom", ref);
        // Traction on the wall uses the body-outward normal (0,1), so the
        // fluid above drags the bottom wall along +x: t_x = tau_xy = mu k
        // over length 2.
        CHECK_THAT(wf.cd * ref.dynamic_pressure() * ref.length,
                   WithinAbs(mu_gas.mu * k * 2.0, 1e-10));
    }
    SECTION("missing tag is rejected") {
        SolutionState s(2, mesh.num_elements(), elem.num_nodes());
        CHECK_THROWS_AS(wall_forces(s, mesh, elem, gas, "nope"), std::invalid_argument);
    }
}

TEST_CASE("time series validation") {
    CHECK_THROWS_AS(TimeSeries::from_samples({0.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(TimeSeries::from_samples({0.0, 0.1, 0.3}, {1.0, 2.0, 3.0}),
                    std::invalid_argument);
    const auto s = TimeSeries::from_samples({0.5, 0.6, 0.7}, {1.0, 2.0, 3.0});
    CHECK_THAT(s.dt, WithinAbs(0.1, 1e-15));
}

TEST_CASE("Welch PSD") {
    const double fs = 160.0;
    SECTION("pure sinusoid peaks in the right bin") {
        const double f0 = 12.5;
        std::vector<double> x(8192);
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] = std::sin(2.0 * M_PI * f0 * i / fs);
        const auto ps = welch_psd(x, 1.0 / fs, 1024, 64);
        std::size_t arg = 0;
        for (std::size_t k = 1; k < ps.power.size(); ++k)
            if (ps.power[k] > ps.power[arg]) arg = k;
        CHECK(std::abs(ps.frequency[arg] - f0) <= fs / 1024.0);
    }
    SECTION("two tones give two local maxima") {
        const double f0 = 10.0, f1 = 20.0;
        std::vector<double> x(8192);
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] = std::sin(2.0 * M_PI * f0 * i / fs) + 0.5 * std::sin(2.0 * M_PI * f1 * i / fs);
        const auto ps = welch_psd(x, 1.0 / fs, 2048, 32);
        auto near = [&](double f) {
            std::size_t best = 0;
            for (std::size_t k = 1; k < ps.frequency.size(); ++k)
                if (std::abs(ps.frequency[k] - f) < std::abs(ps.frequency[best] - f)) best = k;
            return best;
        };
        for (double f : {f0, f1}) {
            const std::size_t k = near(f);
            CHECK(ps.power[k] > ps.power[k - 3]);
            CHECK(ps.power[k] > ps.power[k + 3]);
        }
    }
    SECTION("total power approximates the mean square") {
        std::mt19937 rng(43);
        std::normal_distribution<double> noise(0.0, 1.0);
        std::vector<double> x(16384);
        double msq = 0.0;
        for (auto& v : x) {
            v = noise(rng);
            msq += v * v;
        }
        msq /= x.size();
        const auto ps = welch_psd(x, 1.0 / fs, 1024, 256);
        double total = 0.0;
        for (double p : ps.power) total += p;
        CHECK(std::abs(total - msq) / msq < 0.05);
    }
    SECTION("argument validation") {
        std::vector<double> x(100, 0.0);
        CHECK_THROWS_AS(welch_psd(x, 1.0, 128, 10), std::invalid_argument);   // too short
        CHECK_THROWS_AS(welch_psd(x, 1.0, 60, 10), std::invalid_argument);    // not pow2
        CHECK_THROWS_AS(welch_psd(x, 1.0, 64, 0), std::invalid_argument);     // bad shift
        CHECK_THROWS_AS(welch_psd(x, 0.0, 64, 10), std::invalid_argument);    // bad dt
    }
}
