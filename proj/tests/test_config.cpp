#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "frdealias/config.hpp"
#include "frdealias/driver.hpp"

using namespace frdealias;
using Catch::Matchers::WithinAbs;

namespace {

RunConfig parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

} // namespace

TEST_CASE("config parsing") {
    SECTION("minimal config fills defaults") {
        auto cfg = parse_text("case.name = density_wave\n"
                              "solver.p = 2\n"
                              "time.dt = 0.01\n"
                              "time.t_end = 1\n");
        cfg.validate();
        CHECK(cfg.case_id == CaseId::DensityWave);
        CHECK(cfg.p == 2);
        CHECK(cfg.gas.gamma == 1.4);
        CHECK(cfg.antialias.mode == AntialiasMode::None);
        CHECK(cfg.nodes == "auto");
    }
    SECTION("comments and blank lines are skipped") {
        auto cfg = parse_text("# header\n\n  time.dt = 0.5 # trailing\n");
        CHECK(cfg.dt == 0.5);
    }
    SECTION("unknown key errors carry the line number") {
        try {
            parse_text("time.dt = 0.1\ntime.dtt = 0.1\n");
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(e.line == 2);
            CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("time.dtt"));
        }
    }
    SECTION("negative dt is rejected by name") {
        auto cfg = parse_text("time.dt = -0.1\ntime.t_end = 1\n");
        CHECK_THROWS_WITH(cfg.validate(), Catch::Matchers::ContainsSubstring("dt"));
    }
    SECTION("bad numeric values name the key") {
        CHECK_THROWS_WITH(parse_text("time.dt = fast\n"),
                          Catch::Matchers::ContainsSubstring("time.dt"));
    }
    SECTION("entropy filter forces Lobatto nodes unless overridden") {
        auto cfg = parse_text("antialias.mode = entropy_filter\ntime.dt = 1\ntime.t_end = 0\n");
        CHECK(cfg.resolved_family() == NodeFamily::GaussLobatto);
        CHECK(cfg.warnings.empty());
        auto forced = parse_text("antialias.mode = entropy_filter\n"
                                 "solver.nodes = gauss-legendre\n"
                                 "time.dt = 1\ntime.t_end = 0\n");
        CHECK(forced.resolved_family() == NodeFamily::GaussLegendre);
        REQUIRE(forced.warnings.size() == 1);
        CHECK_THAT(forced.warnings[0], Catch::Matchers::ContainsSubstring("collocated"));
    }
    SECTION("overrides apply after parsing") {
        auto cfg = parse_text("time.dt = 0.1\ntime.t_end = 1\n");
        apply_override(cfg, "time.t_end=2.5");
        apply_override(cfg, "antialias.mode=modal_filter");
        CHECK(cfg.t_end == 2.5);
        CHECK(cfg.antialias.mode == AntialiasMode::ModalFilter);
        CHECK_THROWS_AS(apply_override(cfg, "oops"), parse_error);
    }
    SECTION("boundary-condition keys accept arbitrary tags") {
        auto cfg = parse_text("bc.airfoil = wall\nbc.outer = farfield\n");
        REQUIRE(cfg.bc_kinds.size() == 2);
        CHECK(cfg.bc_kinds[0] == std::pair<std::string, std::string>{"airfoil", "wall"});
        CHECK_THROWS_AS(parse_text("bc.x = slippery\n"), parse_error);
    }
    SECTION("echo round-trips to an equivalent config") {
        auto cfg = parse_text("case.name = kelvin_helmholtz\ncase.nx = 12\ncase.seed = 9\n"
                              "solver.p = 4\ntime.dt = 0.002\ntime.t_end = 3\n"
                              "antialias.mode = over_integration\nantialias.oi_points = 8\n"
                              "output.fields = true\n");
        std::ostringstream echo;
        write_config(cfg, echo);
        auto back = parse_text(echo.str());
        std::ostringstream echo2;
        write_config(back, echo2);
        CHECK(echo.str() == echo2.str());
        CHECK(back.nx == 12);
        CHECK(back.antialias.oi_points == 8);
        CHECK(back.write_fields);
    }
}

TEST_CASE("case construction") {
    SECTION("isentropic vortex is isentropic at t = 0") {
        auto c = isentropic_vortex(8);
        ReferenceElement elem(3, 2, NodeFamily::GaussLegendre);
        auto s = sample_initial(c, elem);
        const double sigma0 = entropy(s.get(0, 0), c.gas, 2);
        for (int e = 0; e < c.mesh.num_elements(); ++e)
            for (int i = 0; i < elem.num_nodes(); ++i)
                CHECK_THAT(entropy(s.get(e, i), c.gas, 2), WithinAbs(sigma0, 1e-12));
    }
    SECTION("vortex exact solution advects one period") {
        auto c = isentropic_vortex(4);
        const Vec2 probe{3.3, 7.1};
        const auto a = c.exact(probe, 0.0);
        const auto b = c.exact(probe, 10.0);  // unit velocity, box length 10
        for (int v = 0; v < 4; ++v) CHECK_THAT(a[v], WithinAbs(b[v], 1e-12));
    }
    SECTION("density wave is exact after one period") {
        auto c = density_wave(6);
        const Vec2 probe{0.37, 0.0};
        for (int v = 0; v < 3; ++v)
            CHECK_THAT(c.exact(probe, 1.0)[v], WithinAbs(c.exact(probe, 0.0)[v], 1e-12));
    }
    SECTION("Kelvin-Helmholtz seeding is deterministic") {
        auto a = kelvin_helmholtz(4, {}, 15.0, 0.1, 42);
        auto b = kelvin_helmholtz(4, {}, 15.0, 0.1, 42);
        auto cdiff = kelvin_helmholtz(4, {}, 15.0, 0.1, 43);
        const Vec2 probe{0.21, -0.4};
        CHECK(a.initial(probe) == b.initial(probe));
        CHECK(a.initial(probe) != cdiff.initial(probe));
    }
    SECTION("Taylor-Green velocity magnitude matches the Mach number") {
        auto c = taylor_green_2d(4, GasModel{1.4, 0.71, 0.01});
        const auto u = c.initial({M_PI / 2.0, 0.0});
        CHECK_THAT(u[1] / u[0], WithinAbs(0.1, 1e-12));
    }
}

TEST_CASE("driver runs a tiny case end to end") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "frdealias_test_run";
    fs::remove_all(dir);
    RunConfig cfg;
    cfg.case_id = CaseId::DensityWave;
    cfg.nx = 6;
    cfg.p = 3;
    cfg.dt = 0.01;
    cfg.t_end = 0.1;
    cfg.cadence = 5;
    cfg.output_dir = dir.string();
    cfg.write_fields = true;
    std::ostringstream log;
    const auto art = run_case(cfg, log);
    CHECK(art.steps == 10);
    CHECK(fs::exists(dir / "resolved_config.cfg"));
    CHECK(fs::exists(dir / "totals.csv"));
    CHECK(fs::exists(dir / "error.csv"));
    CHECK(fs::exists(dir / "fields.csv"));
    REQUIRE_FALSE(art.final_l2.empty());
    CHECK(art.final_l2[0] < 1e-4);
    // Conservation over the run.
    for (std::size_t v = 0; v < art.final_totals.size(); ++v)
        CHECK_THAT(art.final_totals[v], WithinAbs(art.initial_totals[v], 1e-11));
    CHECK_THAT(log.str(), Catch::Matchers::ContainsSubstring("min_rho"));

    SECTION("identical config reruns bitwise-identically") {
        const fs::path dir2 = fs::temp_directory_path() / "frdealias_test_run2";
        fs::remove_all(dir2);
        RunConfig cfg2 = cfg;
        cfg2.output_dir = dir2.string();
        run_case(cfg2, log);
        auto slurp = [](const fs::path& p) {
            std::ifstream in(p);
            std::stringstream ss;
            ss << in.rdbuf();
            return ss.str();
        };
        CHECK(slurp(dir / "totals.csv") == slurp(dir2 / "totals.csv"));
        CHECK(slurp(dir / "fields.csv") == slurp(dir2 / "fields.csv"));
        fs::remove_all(dir2);
    }
    fs::remove_all(dir);
}

TEST_CASE("csv column reader") {
    namespace fs = std::filesystem;
    const fs::path p = fs::temp_directory_path() / "frdealias_csv_test.csv";
    {
        std::ofstream out(p);
        out << "t,C_L,C_D\n0,1.5,0.2\n0.1,1.6,0.25\n";
    }
    std::vector<double> t;
    const auto cl = read_csv_column(p.string(), "C_L", &t);
    CHECK(cl == std::vector<double>{1.5, 1.6});
    CHECK(t == std::vector<double>{0.0, 0.1});
    CHECK_THROWS_AS(read_csv_column(p.string(), "missing"), parse_error);
    fs::remove(p);
}
