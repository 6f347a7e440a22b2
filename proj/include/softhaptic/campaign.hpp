#pragma once

#include <optional>
#include <string>
#include <vector>

#include "softhaptic/config.hpp"
#include "softhaptic/path_metrics.hpp"
#include "softhaptic/reference_data.hpp"
#include "softhaptic/sine_fit.hpp"
#include "softhaptic/targets.hpp"

namespace softhaptic {

struct TimedSample {
    double t = 0.0;
    Vec3 value = Vec3::Zero();
};

/// One commanded path. Free mode: values are tip positions (mm), origin is
/// the preload tip. Blocked mode: values are block forces (N), origin zero.
struct PathResult {
    std::string label;
    double angle_deg = 0.0;
    Vec3 target_offset = Vec3::Zero();
    Vec3 direction = Vec3::UnitX();
    PathErrorStats error;
    double radial_range = 0.0;
    bool saturated = false;
    /// False when the controller failed on this path; `failure` says why.
    bool completed = true;
    std::string failure;
    /// error.mean above the position (free) or force (blocked) JND.
    bool above_jnd = false;
    std::optional<ReferenceValues> reference;
    /// Samples of the first repetition at the configured sampling rate.
    std::vector<TimedSample> samples;
};

struct ExperimentReport {
    PathLevel level = PathLevel::middle;
    PlantMode mode = PlantMode::free;
    std::string config_hash;
    double jnd_threshold = 0.0;
    std::vector<PathResult> paths;
};

/// Runs every target of the level: the commanded point is ramped from the
/// preload tip along the path and tracked with solve_to_target each plant tick.
/// Blocked mode pushes along the same directions until a chamber saturates
/// and repeats `repetitions` times. Controller failures are recorded per path.
ExperimentReport run_path_experiment(PathLevel level, PlantMode mode, const SimulationConfig& cfg);

enum class Axis { x, y, z };
std::string_view to_string(Axis axis);
Axis parse_axis(std::string_view text);

/// 0.1, 0.5, 1.0 .. 4.0 in 0.5 steps, 5 .. 10 in 1 Hz steps.
std::vector<double> bandwidth_frequency_grid();

struct BandwidthRow {
    double frequency_hz = 0.0;
    bool valid = false;
    double magnitude_ratio = 0.0;
    SineFit fit;
    std::string error;
};

struct BandwidthResult {
    Axis axis = Axis::x;
    PlantMode mode = PlantMode::free;
    std::string config_hash;
    double commanded_amplitude = 0.0;  // mm, or N in blocked mode
    std::vector<BandwidthRow> rows;
    std::optional<double> crossing_hz;
};

/// First crossing of MR = 1/sqrt(2), interpolated linearly in log frequency
/// between bracketing valid rows.
std::optional<double> minus_3db_crossing(const std::vector<BandwidthRow>& rows);

/// Sinusoidal commands of commanded_amplitude along the axis at each grid
/// frequency (or the given ones); each response is fitted and compared with
/// the command. Blocked mode fits the block force against stiffness * amplitude.
BandwidthResult run_bandwidth_experiment(Axis axis, const SimulationConfig& cfg,
                                         const std::vector<double>& frequencies = bandwidth_frequency_grid());

/// Model-only push from the preload tip along `direction` until a chamber
/// saturates; returns the displacement of the model tip (mm).
double saturation_displacement(const Vec3& direction, const SimulationConfig& cfg);

struct StiffnessCalibration {
    double lateral = 0.0;  // N/mm
    double axial = 0.0;    // N/mm
};

/// Stiffness that makes the saturation pushes reproduce the given block
/// forces on the middle 30 degree and Z- paths (defaults: 1.01 N, 6.01 N).
StiffnessCalibration calibrate_block_stiffness(const SimulationConfig& cfg,
                                               double lateral_force_n = 1.01,
                                               double axial_force_n = 6.01);

struct CampaignSummary {
    std::string config_hash;
    std::vector<ExperimentReport> paths;
    std::vector<BandwidthResult> bandwidth;
    std::optional<double> workspace_extent_mm;
};

/// All levels in both modes, bandwidth on x/y/z in the configured plant mode,
/// and the workspace sweep.
CampaignSummary run_full_campaign(const SimulationConfig& cfg);

}  // namespace softhaptic
