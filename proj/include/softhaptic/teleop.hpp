#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "softhaptic/control.hpp"
#include "softhaptic/kinematics.hpp"
#include "softhaptic/plant.hpp"

namespace softhaptic {

/// Axis-aligned cube in scene units; forces are the only quantity that
/// crosses into device millimetres.
struct VirtualScene {
    Vec3 cube_center = Vec3::Zero();
    double cube_half_extent = 1.0;
    double wall_stiffness = 10.0;  // N per scene unit

    void validate() const;
};

struct TeleopConfig {
    VirtualScene scene;
    /// Force-to-displacement ratio, N per mm of commanded tip offset.
    double force_per_mm = 4.75;
    /// Commanded offsets are clamped into this sphere about the preload tip.
    double workspace_radius_mm = 5.0;
    double session_rate_hz = 60.0;

    void validate() const;
};

/// Zero outside the cube. Inside, a penalty force along the outward normal of
/// the face with the least penetration (ties: +x, -x, +y, -y, +z, -z).
Vec3 contact_force(const Vec3& cursor, const VirtualScene& scene);

/// F / force_per_mm, clamped in magnitude to bound_mm.
Vec3 force_to_displacement(const Vec3& force, double force_per_mm = 4.75, double bound_mm = 5.0);

struct SessionState {
    std::uint64_t tick = 0;
    double time = 0.0;
    Vec3 cursor = Vec3::Zero();
    Vec3 contact_force = Vec3::Zero();
    /// Offset from the preload tip sent to the controller.
    Vec3 commanded_tip_offset = Vec3::Zero();
    PlantState plant;
    ArcParams arc;
    bool saturated = false;
};

/// One virtual-cube interaction: contact force -> commanded offset ->
/// one resolved-rate step -> plant sub-steps up to the session clock.
class TeleopSession {
public:
    TeleopSession(TeleopConfig teleop, ControllerConfig controller, PlantConfig plant,
                  DeviceModel model);

    const SessionState& tick(const Vec3& cursor);
    /// Back to the preload configuration and tick 0.
    void reset();
    void set_scene(const VirtualScene& scene);

    const SessionState& state() const { return state_; }
    const VirtualScene& scene() const { return teleop_.scene; }
    const TeleopConfig& config() const { return teleop_; }
    const Vec3& preload_tip() const { return preload_tip_; }
    /// Noise-free tip minus the preload tip.
    Vec3 tip_offset() const { return state_.plant.tip.position - preload_tip_; }

private:
    TeleopConfig teleop_;
    DeviceModel model_;
    ResolvedRateController controller_;
    Plant plant_;
    Vec3 preload_tip_;
    SessionState state_;
};

struct ReplaySample {
    double t = 0.0;
    Vec3 cursor = Vec3::Zero();
};

/// CSV with columns t_s,x,y,z; rows must be sorted by time.
std::vector<ReplaySample> read_replay_csv(std::istream& in);

/// Drives the session at its tick rate from t = 0 through the last sample,
/// holding the latest cursor sample (the first one before it starts).
void run_replay(std::span<const ReplaySample> samples, TeleopSession& session,
                const std::function<void(const SessionState&)>& on_state);

}  // namespace softhaptic
