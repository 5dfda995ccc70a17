#include "doctest.h"

#include <string>

#include "qmhd/config.hpp"

using namespace qmhd;

TEST_CASE("effective tau keeps the acoustic part") {
    PhysParams p;
    p.Re_s = 1e7;
    p.tau0 = 2e-7;
    CHECK(effective_tau(p) == doctest::Approx(2e-7).epsilon(1e-12));
    CHECK(effective_tau(p) > 2e-7);  // the 1/Re_s^2 part is present

    p.tau0 = 0.0;
    p.Re_s = 10.0;
    CHECK(effective_tau(p) == doctest::Approx(0.01).epsilon(1e-15));

    p.Re_s = 1e7;
    p.tau0 = 2e-5;
    CHECK(effective_tau(p) == doctest::Approx(2e-5).epsilon(1e-12));
}

TEST_CASE("preset registry covers every benchmark row") {
    CHECK(presets().size() == 11);

    const Preset* t1 = find_preset("table1-ha0");
    REQUIRE(t1 != nullptr);
    CHECK(t1->config.n1 == 82);
    CHECK(t1->config.n2 == 162);
    CHECK(t1->config.phys.Ha == 0.0);
    CHECK(t1->expected_psi_min == -249.6);
    CHECK(t1->expected_steps == 569477);

    const Preset* t2 = find_preset("table2-ha100-B");
    REQUIRE(t2 != nullptr);
    CHECK(t2->config.geometry == Geometry::Planar);
    CHECK(t2->config.n1 == 42);
    CHECK(t2->config.variant == FieldVariant::B);
    CHECK(t2->expected_psi_min == -41.124);

    CHECK(find_preset("no-such-row") == nullptr);
    CHECK_THROWS_AS(expand_preset("no-such-row"), ConfigError);
}

TEST_CASE("every preset pins the shared run parameters") {
    for (const Preset& p : presets()) {
        CAPTURE(p.name);
        const PhysParams& ph = p.config.phys;
        CHECK(ph.dt == 1e-7);
        CHECK(ph.Ma == 1000.0);
        CHECK(ph.Pr == 0.018);
        CHECK(ph.Gr == 0.0);
        CHECK(ph.Re_s == 1e7);
        if (p.config.geometry == Geometry::CylindricalAxisym) {
            CHECK(ph.tau0 == 2e-7);
            CHECK(ph.eps_steady == 1e-4);
        } else {
            CHECK(ph.tau0 == 2e-5);
            CHECK(ph.eps_steady == 1e-3);
        }
        CHECK_NOTHROW(p.config.validate());
    }
}

TEST_CASE("preset key expands to the full benchmark configuration") {
    CaseConfig cfg = parse_config("preset = table2-ha50-A\n");
    CHECK(cfg.geometry == Geometry::Planar);
    CHECK(cfg.n1 == 42);
    CHECK(cfg.n2 == 42);
    CHECK(cfg.phys.Ha == 50.0);
    CHECK(cfg.variant == FieldVariant::A);
    CHECK(cfg.phys.Ma == 1000.0);
    CHECK(cfg.phys.Pr == 0.018);
    CHECK(cfg.phys.tau0 == 2e-5);
    CHECK(cfg.phys.dt == 1e-7);
    CHECK(cfg.phys.eps_steady == 1e-3);
    CHECK(cfg.expected_psi_min.has_value());
    CHECK(*cfg.expected_psi_min == -22.18);
}

TEST_CASE("explicit keys override preset defaults") {
    CaseConfig cfg = parse_config(
        "preset = table2-ha50-A\n"
        "n1 = 12      # comment after the value\n"
        "n2 = 12\n"
        "\n"
        "dt = 4e-7\n"
        "max_steps = 100\n");
    CHECK(cfg.n1 == 12);
    CHECK(cfg.phys.dt == 4e-7);
    CHECK(cfg.max_steps == 100);
    CHECK(cfg.phys.Ha == 50.0);  // untouched preset value
}

TEST_CASE("config errors carry the line number") {
    try {
        parse_config("geometry = planar\nn1 = 12\nn2 = twelve\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }

    try {
        parse_config("geometry = planar\nwhatever\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("unknown keys are rejected by name") {
    try {
        parse_config("geometry = planar\nn1 = 12\nn2 = 12\nspeed = 9\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("speed") != std::string::npos);
    }
}

TEST_CASE("empty input names the required keys") {
    try {
        parse_config("");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        std::string msg = e.what();
        CHECK(msg.find("preset") != std::string::npos);
        CHECK(msg.find("geometry") != std::string::npos);
        CHECK(msg.find("n1") != std::string::npos);
        CHECK(msg.find("n2") != std::string::npos);
    }
}

TEST_CASE("invariant violations name the offending field") {
    try {
        parse_config("geometry = planar\nn1 = 12\nn2 = 12\nha = -1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("ha") != std::string::npos);
    }
    // damping without an orientation is meaningless
    CHECK_THROWS_AS(
        parse_config("geometry = planar\nn1 = 12\nn2 = 12\nha = 50\n"),
        ConfigError);
    // variants are tied to their geometry
    CHECK_THROWS_AS(
        parse_config("geometry = cylindrical\nn1 = 12\nn2 = 12\nvariant = A\n"),
        ConfigError);
    CHECK_THROWS_AS(
        parse_config("geometry = planar\nn1 = 12\nn2 = 12\nvariant = axial\n"),
        ConfigError);
}

TEST_CASE("serialized configs re-parse to the same case") {
    CaseConfig a = expand_preset("table1-ha100-fine");
    a.output_dir = "/tmp/somewhere";
    a.max_steps = 12345;
    CaseConfig b = parse_config(serialize_config(a));
    CHECK(b.geometry == a.geometry);
    CHECK(b.n1 == a.n1);
    CHECK(b.n2 == a.n2);
    CHECK(b.variant == a.variant);
    CHECK(b.phys.Ha == a.phys.Ha);
    CHECK(b.phys.Ma == a.phys.Ma);
    CHECK(b.phys.Pr == a.phys.Pr);
    CHECK(b.phys.tau0 == a.phys.tau0);
    CHECK(b.phys.dt == a.phys.dt);
    CHECK(b.phys.eps_steady == a.phys.eps_steady);
    CHECK(b.phys.poisson_tol == a.phys.poisson_tol);
    CHECK(b.phys.sor_omega == a.phys.sor_omega);
    CHECK(b.output_dir == a.output_dir);
    CHECK(b.max_steps == a.max_steps);
    CHECK(b.snapshot_every == a.snapshot_every);
    CHECK(b.overwrite == a.overwrite);
}

TEST_CASE("booleans and case-insensitive keys parse") {
    CaseConfig cfg = parse_config(
        "GEOMETRY = Planar\nN1 = 12\nn2 = 12\noverwrite = yes\nthreads = 2\n");
    CHECK(cfg.geometry == Geometry::Planar);
    CHECK(cfg.overwrite == true);
    CHECK(cfg.threads == 2);
    CHECK_THROWS_AS(
        parse_config("geometry = planar\nn1 = 12\nn2 = 12\noverwrite = maybe\n"),
        ConfigError);
}
