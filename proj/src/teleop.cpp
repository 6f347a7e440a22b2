#include "softhaptic/teleop.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <istream>

#include "softhaptic/csv.hpp"
#include "softhaptic/errors.hpp"

namespace softhaptic {

void VirtualScene::validate() const {
    if (!cube_center.allFinite()) throw InputError("scene: non-finite cube_center");
    if (!(cube_half_extent > 0.0)) throw InputError("scene: cube_half_extent must be > 0");
    if (!(wall_stiffness > 0.0)) throw InputError("scene: wall_stiffness must be > 0");
}

void TeleopConfig::validate() const {
    scene.validate();
    if (!(force_per_mm > 0.0)) throw InputError("teleop: force_per_mm must be > 0");
    if (!(workspace_radius_mm > 0.0)) throw InputError("teleop: workspace_radius_mm must be > 0");
    if (!(session_rate_hz > 0.0)) throw InputError("teleop: session_rate_hz must be > 0");
}

Vec3 contact_force(const Vec3& cursor, const VirtualScene& scene) {
    const Vec3 rel = cursor - scene.cube_center;
    const double h = scene.cube_half_extent;
    if ((rel.array().abs() >= h).any()) return Vec3::Zero();

    int best_axis = 0;
    double best_sign = 1.0;
    double best_depth = std::numeric_limits<double>::infinity();
    for (int axis = 0; axis < 3; ++axis) {
        for (double sign : {1.0, -1.0}) {
            const double depth = h - sign * rel[axis];
            if (depth < best_depth) {
                best_depth = depth;
                best_axis = axis;
                best_sign = sign;
            }
        }
    }
    Vec3 f = Vec3::Zero();
    f[best_axis] = best_sign * scene.wall_stiffness * best_depth;
    return f;
}

Vec3 force_to_displacement(const Vec3& force, double force_per_mm, double bound_mm) {
    Vec3 d = force / force_per_mm;
    const double n = d.norm();
    if (n > bound_mm) d *= bound_mm / n;
    return d;
}

TeleopSession::TeleopSession(TeleopConfig teleop, ControllerConfig controller, PlantConfig plant,
                             DeviceModel model)
    : teleop_(std::move(teleop)),
      model_(model),
      controller_(controller, model),
      plant_(std::move(plant), model),
      preload_tip_(softhaptic::preload_tip(model.geometry, model.actuator)) {
    teleop_.validate();
    reset();
}

void TeleopSession::reset() {
    controller_.reset(preload_lengths(model_.geometry, model_.actuator));
    plant_.reset(Pressures::Constant(model_.geometry.preload_pressure));
    state_ = SessionState{};
    state_.plant = plant_.state();
    state_.arc = arc_params(state_.plant.lengths, model_.geometry);
}

void TeleopSession::set_scene(const VirtualScene& scene) {
    scene.validate();
    teleop_.scene = scene;
}

const SessionState& TeleopSession::tick(const Vec3& cursor) {
    if (!cursor.allFinite()) throw InputError("teleop: non-finite cursor");

    SessionState next = state_;
    next.cursor = cursor;
    next.contact_force = contact_force(cursor, teleop_.scene);
    next.commanded_tip_offset =
        force_to_displacement(next.contact_force, teleop_.force_per_mm, teleop_.workspace_radius_mm);

    auto cfg = controller_.config();
    cfg.target_tolerance = cfg.tracking_tolerance;
    const auto step = rrmc_step(controller_.lengths(), preload_tip_ + next.commanded_tip_offset, cfg, model_);
    controller_.reset(step.new_lengths);

    next.tick = state_.tick + 1;
    next.time = static_cast<double>(next.tick) / teleop_.session_rate_hz;
    // Sub-step the plant until its clock reaches the session clock.
    const double dt = plant_.config().tick_dt;
    while (plant_.state().time + 0.5 * dt <= next.time) plant_.step(step.commanded_pressures);

    next.plant = plant_.state();
    next.arc = arc_params(next.plant.lengths, model_.geometry);
    next.saturated = step.saturated;
    state_ = next;
    return state_;
}

std::vector<ReplaySample> read_replay_csv(std::istream& in) {
    const auto table = csv::read(in);
    const auto tc = table.column("t_s");
    const std::array<std::size_t, 3> xyz{table.column("x"), table.column("y"), table.column("z")};
    std::vector<ReplaySample> samples;
    samples.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        ReplaySample s;
        s.t = row[tc];
        for (int k = 0; k < 3; ++k) s.cursor[k] = row[xyz[k]];
        if (!samples.empty() && s.t < samples.back().t) throw InputError("replay csv: times must be non-decreasing");
        samples.push_back(s);
    }
    if (samples.empty()) throw InputError("replay csv: no samples");
    return samples;
}

void run_replay(std::span<const ReplaySample> samples, TeleopSession& session,
                const std::function<void(const SessionState&)>& on_state) {
    if (samples.empty()) return;
    const double rate = session.config().session_rate_hz;
    const double end = samples.back().t;
    std::size_t idx = 0;
    for (std::uint64_t n = session.state().tick + 1;; ++n) {
        const double t = static_cast<double>(n) / rate;
        if (t > end + 1e-12) break;
        while (idx + 1 < samples.size() && samples[idx + 1].t <= t + 1e-12) ++idx;
        on_state(session.tick(samples[idx].cursor));
    }
}

}  // namespace softhaptic
