#include <sstream>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "softhaptic/campaign.hpp"
#include "softhaptic/report.hpp"

using namespace softhaptic;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SimulationConfig ideal() {
    auto cfg = default_config();
    cfg.plant = PlantConfig::ideal();
    return cfg;
}

BandwidthRow row(double f, double mr, bool valid = true) {
    BandwidthRow r;
    r.frequency_hz = f;
    r.magnitude_ratio = mr;
    r.valid = valid;
    return r;
}

}  // namespace

TEST_CASE("saturation displacements along the calibration directions") {
    const auto cfg = ideal();
    // All chambers reach 0 kPa: 25 kPa * 0.23 mm/kPa below the preload tip.
    CHECK_THAT(saturation_displacement(-Vec3::UnitZ(), cfg), WithinAbs(5.75, 1e-6));
    CHECK_THAT(saturation_displacement(Vec3::UnitZ(), cfg), WithinAbs(5.75, 1e-6));
    // Boundary crossings from an independent bisection on the pressure cube.
    CHECK_THAT(saturation_displacement(circle_target(PathLevel::middle, 30).normalized(), cfg),
               WithinAbs(7.2501, 0.02));
    CHECK_THAT(saturation_displacement(circle_target(PathLevel::middle, 0).normalized(), cfg),
               WithinAbs(7.874, 0.02));
    CHECK_THAT(saturation_displacement(circle_target(PathLevel::middle, 90).normalized(), cfg),
               WithinAbs(10.042, 0.02));
    CHECK_THAT(saturation_displacement(circle_target(PathLevel::upper, 30).normalized(), cfg),
               WithinAbs(5.148, 0.02));
    CHECK_THAT(saturation_displacement(circle_target(PathLevel::lower, 90).normalized(), cfg),
               WithinAbs(5.403, 0.02));
}

TEST_CASE("default block stiffness is the calibrated one") {
    const auto cfg = ideal();
    const auto k = calibrate_block_stiffness(cfg);
    CHECK_THAT(cfg.plant.stiffness_axial, WithinRel(k.axial, 1e-6));
    CHECK_THAT(cfg.plant.stiffness_lateral, WithinRel(k.lateral, 1e-5));
    CHECK_THAT(k.axial, WithinRel(6.01 / 5.75, 1e-6));
}

TEST_CASE("ideal middle circle in free motion") {
    const auto cfg = ideal();
    const auto report = run_path_experiment(PathLevel::middle, PlantMode::free, cfg);
    CHECK(report.config_hash == config_hash(cfg));
    CHECK(report.jnd_threshold == 1.74);
    REQUIRE(report.paths.size() == 12);
    for (const auto& p : report.paths) {
        REQUIRE(p.completed);
        CHECK(p.error.mean <= 0.05);
        CHECK_FALSE(p.above_jnd);
        CHECK_FALSE(p.saturated);
        CHECK_THAT(p.radial_range, WithinAbs(5.0, 0.01));
        CHECK(p.reference.has_value());
        CHECK(p.error.n_samples >= 100);
        // Samples are on the 56 Hz grid.
        CHECK_THAT(p.samples[1].t - p.samples[0].t, WithinAbs(1.0 / 56.0, 1e-12));
    }
}

TEST_CASE("blocked pushes reproduce the calibration anchors") {
    const auto cfg = ideal();
    const auto zminus = run_path_experiment(PathLevel::z_minus, PlantMode::blocked, cfg);
    REQUIRE(zminus.paths.size() == 1);
    CHECK(zminus.paths[0].saturated);
    CHECK_THAT(zminus.paths[0].radial_range, WithinRel(6.01, 0.05));
    CHECK(zminus.jnd_threshold == 0.224);

    const auto middle = run_path_experiment(PathLevel::middle, PlantMode::blocked, cfg);
    const auto it = std::find_if(middle.paths.begin(), middle.paths.end(), [](const auto& p) { return p.label == "30"; });
    REQUIRE(it != middle.paths.end());
    CHECK(it->saturated);
    CHECK_THAT(it->radial_range, WithinRel(1.01, 0.10));
}

TEST_CASE("noisy campaign is deterministic for a seed") {
    const auto cfg = default_config();
    const auto a = run_path_experiment(PathLevel::upper, PlantMode::free, cfg);
    const auto b = run_path_experiment(PathLevel::upper, PlantMode::free, cfg);
    REQUIRE(a.paths.size() == b.paths.size());
    for (std::size_t i = 0; i < a.paths.size(); ++i) {
        CHECK(a.paths[i].error.mean == b.paths[i].error.mean);
        CHECK(a.paths[i].radial_range == b.paths[i].radial_range);
    }
}

TEST_CASE("controller failures are recorded per path") {
    auto cfg = ideal();
    cfg.controller.max_iterations = 1;
    cfg.controller.tracking_tolerance = 1e-9;
    const auto report = run_path_experiment(PathLevel::lower, PlantMode::free, cfg);
    REQUIRE(report.paths.size() == 6);
    for (const auto& p : report.paths) {
        CHECK_FALSE(p.completed);
        CHECK_FALSE(p.failure.empty());
    }
}

TEST_CASE("-3 dB crossing interpolation") {
    const double thr = 1.0 / std::sqrt(2.0);
    const std::vector<BandwidthRow> rows{row(1, 0.9), row(2, 0.8), row(4, 0.6), row(8, 0.3)};
    const auto c = minus_3db_crossing(rows);
    REQUIRE(c);
    const double w = (0.8 - thr) / (0.8 - 0.6);
    CHECK_THAT(*c, WithinRel(std::exp(std::log(2.0) + w * std::log(2.0)), 1e-12));

    const std::vector<BandwidthRow> skip{row(1, 0.9), row(2, 0.1, false), row(4, 0.5)};
    const double w2 = (0.9 - thr) / (0.9 - 0.5);
    CHECK_THAT(*minus_3db_crossing(skip), WithinRel(std::exp(w2 * std::log(4.0)), 1e-12));

    CHECK_FALSE(minus_3db_crossing({row(1, 0.9), row(2, 0.8)}));
    CHECK_FALSE(minus_3db_crossing({}));
}

TEST_CASE("frequency grid") {
    const auto f = bandwidth_frequency_grid();
    const std::vector<double> expected{0.1, 0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4, 5, 6, 7, 8, 9, 10};
    CHECK(f == expected);
}

TEST_CASE("free-motion bandwidth near 3 Hz on every axis") {
    const auto cfg = default_config();
    for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
        const auto r = run_bandwidth_experiment(axis, cfg);
        REQUIRE(r.crossing_hz);
        CHECK(*r.crossing_hz >= 2.5);
        CHECK(*r.crossing_hz <= 3.5);
        REQUIRE(r.rows.front().valid);
        CHECK(r.rows.front().magnitude_ratio >= 0.99);
        for (const auto& row : r.rows) {
            REQUIRE(row.valid);
            const double expected = oracle::discrete_lag_gain(row.frequency_hz, 0.053, 0.01);
            CHECK_THAT(row.magnitude_ratio, WithinAbs(expected, 0.02));
        }
    }
}

TEST_CASE("slow regulator moves the crossing to 1 / (2 pi tau)") {
    auto cfg = ideal();
    cfg.plant.regulator_time_constant_tau = 0.5;
    std::vector<double> grid;
    for (double f = 0.1; f < 0.61; f += 0.05) grid.push_back(f);
    const auto r = run_bandwidth_experiment(Axis::x, cfg, grid);
    REQUIRE(r.crossing_hz);
    CHECK_THAT(*r.crossing_hz, WithinAbs(1.0 / (2.0 * oracle::pi * 0.5), 0.01));
}

TEST_CASE("property: bandwidth decreases with the regulator time constant") {
    std::vector<double> grid;
    for (int k = 0; k <= 30; ++k) grid.push_back(0.1 * std::pow(300.0, k / 30.0));
    double previous = std::numeric_limits<double>::infinity();
    for (double tau : {0.01, 0.02, 0.05, 0.1, 0.2, 0.5}) {
        auto cfg = ideal();
        cfg.plant.regulator_time_constant_tau = tau;
        cfg.plant.tick_dt = std::min(0.01, tau / 4.0);
        const auto r = run_bandwidth_experiment(Axis::y, cfg, grid);
        REQUIRE(r.crossing_hz);
        CHECK(*r.crossing_hz < previous);
        previous = *r.crossing_hz;
    }
}

TEST_CASE("blocked bandwidth compares force with stiffness times amplitude") {
    auto cfg = ideal();
    cfg.plant.mode = PlantMode::blocked;
    const auto r = run_bandwidth_experiment(Axis::z, cfg, {0.5, 3.0});
    CHECK_THAT(r.commanded_amplitude, WithinRel(cfg.plant.stiffness_axial * 3.0, 1e-12));
    REQUIRE(r.rows[0].valid);
    CHECK_THAT(r.rows[0].magnitude_ratio, WithinAbs(oracle::discrete_lag_gain(0.5, 0.053, 0.01), 0.02));
}

TEST_CASE("report output") {
    auto cfg = ideal();
    CampaignSummary s;
    s.config_hash = config_hash(cfg);
    s.paths.push_back(run_path_experiment(PathLevel::z_plus, PlantMode::free, cfg));
    s.bandwidth.push_back(run_bandwidth_experiment(Axis::z, cfg, {1.0, 3.0, 5.0}));
    s.workspace_extent_mm = 12.8;
    std::ostringstream text;
    write_summary_report(text, s, cfg.experiment);
    const auto t = text.str();
    CHECK(t.find(s.config_hash) != std::string::npos);
    CHECK(t.find("hardware-table-v1") != std::string::npos);
    CHECK(t.find("9.25") != std::string::npos);
    CHECK(t.find("below JND") != std::string::npos);
    CHECK(t.find("-3 dB crossing") != std::string::npos);

    std::ostringstream csv;
    write_path_report_csv(csv, s.paths[0]);
    CHECK(csv.str().rfind("label,angle_deg,mode,radial_range,err_mean,err_std,err_max,", 0) == 0);
    std::ostringstream samples;
    write_path_samples_csv(samples, s.paths[0].paths[0], PlantMode::free);
    CHECK(samples.str().rfind("t_s,x_mm,y_mm,z_mm\n", 0) == 0);
    std::ostringstream bw;
    write_bandwidth_csv(bw, s.bandwidth[0]);
    CHECK(bw.str().rfind("frequency_hz,valid,magnitude_ratio,", 0) == 0);
}
