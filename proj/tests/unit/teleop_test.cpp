#include <sstream>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "softhaptic/errors.hpp"
#include "softhaptic/teleop.hpp"

using namespace softhaptic;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

DeviceModel model() { return {DeviceGeometry{}, ActuatorModel::shared({})}; }

TeleopSession ideal_session() { return {TeleopConfig{}, ControllerConfig{}, PlantConfig::ideal(), model()}; }

/// Penalty force of the least-penetrated face, by listing the six faces.
Vec3 brute_force_contact(const Vec3& cursor, const VirtualScene& scene) {
    const Vec3 rel = cursor - scene.cube_center;
    const double h = scene.cube_half_extent;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(rel[i]) >= h) return Vec3::Zero();
    }
    const std::array<Vec3, 6> normals{Vec3::UnitX(), -Vec3::UnitX(), Vec3::UnitY(),
                                      -Vec3::UnitY(), Vec3::UnitZ(), -Vec3::UnitZ()};
    double best = 1e300;
    Vec3 force = Vec3::Zero();
    for (const auto& n : normals) {
        const double depth = h - n.dot(rel);
        if (depth < best) {
            best = depth;
            force = scene.wall_stiffness * depth * n;
        }
    }
    return force;
}

/// Cursor inside the cube that produces `force_n` on the face with outward normal n.
Vec3 pressing(const Vec3& n, double force_n, const VirtualScene& scene = {}) {
    const double depth = force_n / scene.wall_stiffness;
    return scene.cube_center + n * (scene.cube_half_extent - depth);
}

}  // namespace

TEST_CASE("contact force examples") {
    const VirtualScene scene;
    CHECK(contact_force(Vec3(2, 0, 0), scene).isZero());
    CHECK(contact_force(Vec3(0.5, 0.2, 1.0), scene).isZero());
    CHECK((contact_force(Vec3(0.5, 0, 0), scene) - Vec3(5, 0, 0)).norm() < 1e-12);
    CHECK((contact_force(Vec3(0, 0, -0.9), scene) - Vec3(0, 0, -1)).norm() < 1e-12);
}

TEST_CASE("property: contact force equals the brute-force face minimum") {
    oracle::Gen gen(80);
    for (int k = 0; k < 20000; ++k) {
        VirtualScene scene;
        scene.cube_center = gen.vec(-1, 1);
        scene.cube_half_extent = gen.uniform(0.2, 2.0);
        scene.wall_stiffness = gen.uniform(1, 50);
        const Vec3 cursor = scene.cube_center + gen.vec(-1.2, 1.2) * scene.cube_half_extent;
        REQUIRE((contact_force(cursor, scene) - brute_force_contact(cursor, scene)).norm() < 1e-12);
    }
}

TEST_CASE("force to displacement") {
    CHECK((force_to_displacement(Vec3(4.75, 0, 0)) - Vec3(1, 0, 0)).norm() < 1e-15);
    CHECK(force_to_displacement(Vec3::Zero()).isZero());
    CHECK((force_to_displacement(Vec3(47.5, 0, 0)) - Vec3(5, 0, 0)).norm() < 1e-12);
    CHECK((force_to_displacement(Vec3(0, 9.5, 0), 9.5, 2.0) - Vec3(0, 1, 0)).norm() < 1e-15);
}

TEST_CASE("idle session stays at the preload tip") {
    auto session = ideal_session();
    for (int i = 0; i < 120; ++i) {
        const auto& s = session.tick(Vec3(5, 5, 5));
        REQUIRE(s.commanded_tip_offset.isZero());
        REQUIRE(s.contact_force.isZero());
    }
    CHECK(session.tip_offset().norm() < 1e-9);
    CHECK(session.state().tick == 120);
    CHECK_THAT(session.state().time, WithinAbs(2.0, 1e-12));
    CHECK_THAT(session.state().plant.time, WithinAbs(2.0, 1e-9));
}

TEST_CASE("sustained face contact settles at F / 4.75 with axis isolation") {
    const std::array<Vec3, 6> normals{Vec3::UnitX(), -Vec3::UnitX(), Vec3::UnitY(),
                                      -Vec3::UnitY(), Vec3::UnitZ(), -Vec3::UnitZ()};
    for (const auto& n : normals) {
        auto session = ideal_session();
        for (int i = 0; i < 120; ++i) session.tick(pressing(n, 4.75));
        const Vec3 off = session.tip_offset();
        const double along = off.dot(n);
        CHECK_THAT(along, WithinRel(1.0, 0.02));
        CHECK((off - along * n).norm() <= 0.02 * std::abs(along));
        CHECK((session.state().contact_force - 4.75 * n).norm() < 1e-9);
    }
}

TEST_CASE("contact step response follows the regulator lag") {
    auto session = ideal_session();
    const double tau = PlantConfig{}.regulator_time_constant_tau;
    std::vector<std::pair<double, double>> trace;
    for (int i = 0; i < 60; ++i) {
        const auto& s = session.tick(pressing(Vec3::UnitX(), 4.75));
        trace.emplace_back(s.time, session.tip_offset().x());
    }
    const double final = trace.back().second;
    double t63 = 0.0;
    for (const auto& [t, x] : trace) {
        if (x >= (1.0 - std::exp(-1.0)) * final) {
            t63 = t;
            break;
        }
    }
    // One tau of lag plus at most two session ticks of command quantization.
    CHECK(t63 >= tau - 1e-9);
    CHECK(t63 <= tau + 2.0 / 60.0 + 1e-9);

    // Release: the offset decays back towards zero.
    for (int i = 0; i < 60; ++i) session.tick(Vec3(3, 0, 0));
    CHECK(session.tip_offset().norm() < 0.01);
}

TEST_CASE("property: commanded offsets stay inside the workspace sphere") {
    oracle::Gen gen(81);
    TeleopConfig tc;
    tc.scene.wall_stiffness = 200.0;
    TeleopSession session(tc, ControllerConfig{}, PlantConfig::ideal(), model());
    for (int k = 0; k < 2000; ++k) {
        const auto& s = session.tick(gen.vec(-1.5, 1.5));
        REQUIRE(s.commanded_tip_offset.norm() <= tc.workspace_radius_mm + 1e-12);
        REQUIRE(s.plant.actual_pressures.minCoeff() >= 0.0);
        REQUIRE(s.plant.actual_pressures.maxCoeff() <= 50.0);
    }
}

TEST_CASE("reset and scene updates") {
    auto session = ideal_session();
    for (int i = 0; i < 30; ++i) session.tick(pressing(Vec3::UnitY(), 4.75));
    session.reset();
    CHECK(session.state().tick == 0);
    CHECK(session.tip_offset().norm() < 1e-12);

    VirtualScene bigger;
    bigger.cube_half_extent = 2.0;
    session.set_scene(bigger);
    CHECK(session.scene().cube_half_extent == 2.0);
    VirtualScene bad;
    bad.wall_stiffness = 0.0;
    CHECK_THROWS_AS(session.set_scene(bad), InputError);
    CHECK_THROWS_AS(session.tick(Vec3(std::nan(""), 0, 0)), InputError);
}

TEST_CASE("replay drives the session in order and matches manual ticking") {
    std::istringstream in("t_s,x,y,z\n0,3,0,0\n0.5,0.525,0,0\n1.0,0,0,-0.525\n1.5,0,0,-0.525\n");
    const auto samples = read_replay_csv(in);
    REQUIRE(samples.size() == 4);

    auto replayed = ideal_session();
    std::vector<SessionState> states;
    run_replay(samples, replayed, [&](const SessionState& s) { states.push_back(s); });
    REQUIRE(states.size() == 90);
    for (std::size_t i = 0; i < states.size(); ++i) REQUIRE(states[i].tick == i + 1);

    auto manual = ideal_session();
    for (const auto& s : states) {
        const double t = static_cast<double>(s.tick) / 60.0;
        Vec3 cursor = samples[0].cursor;
        for (const auto& r : samples) {
            if (r.t <= t + 1e-12) cursor = r.cursor;
        }
        const auto& m = manual.tick(cursor);
        REQUIRE(m.plant.tip.position == s.plant.tip.position);
        REQUIRE(m.contact_force == s.contact_force);
    }
    // Pressing the bottom face pushes the tip down by 1 mm.
    CHECK_THAT(replayed.tip_offset().z(), WithinRel(-1.0, 0.02));
}

TEST_CASE("replay csv validation") {
    std::istringstream unsorted("t_s,x,y,z\n1,0,0,0\n0.5,0,0,0\n");
    CHECK_THROWS_AS(read_replay_csv(unsorted), InputError);
    std::istringstream missing("t,x,y,z\n0,0,0,0\n");
    CHECK_THROWS_AS(read_replay_csv(missing), InputError);
    std::istringstream empty("t_s,x,y,z\n");
    CHECK_THROWS_AS(read_replay_csv(empty), InputError);
}
