#include "softhaptic/protocol.hpp"

#include <cmath>

#include <json.hpp>

namespace softhaptic {

namespace {

using nlohmann::json;

double finite_number(const json& j, const char* what) {
    if (!j.is_number()) throw ProtocolError(std::string(what) + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ProtocolError(std::string(what) + " must be finite");
    return v;
}

Vec3 vec3(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3) throw ProtocolError(std::string(what) + " must be an array of 3 numbers");
    return {finite_number(j[0], what), finite_number(j[1], what), finite_number(j[2], what)};
}

// Keeps the stream valid JSON even if a value ever goes non-finite.
double safe(double v) { return std::isfinite(v) ? v : 0.0; }

}  // namespace

VirtualScene ConfigMessage::apply(VirtualScene scene) const {
    if (cube_center) scene.cube_center = *cube_center;
    if (cube_half_extent) scene.cube_half_extent = *cube_half_extent;
    if (wall_stiffness) scene.wall_stiffness = *wall_stiffness;
    scene.validate();
    return scene;
}

ClientMessage parse_client_message(std::string_view line) {
    json j = json::parse(line.begin(), line.end(), nullptr, false);
    if (j.is_discarded()) throw ProtocolError("message is not valid JSON");
    if (!j.is_object()) throw ProtocolError("message must be a JSON object");
    auto type = j.find("type");
    if (type == j.end() || !type->is_string()) throw ProtocolError("message needs a string 'type'");
    const auto t = type->get<std::string>();

    if (t == "cursor") {
        auto pos = j.find("pos");
        if (pos == j.end()) throw ProtocolError("cursor message needs 'pos'");
        return CursorMessage{vec3(*pos, "pos")};
    }
    if (t == "reset") return ResetMessage{};
    if (t == "config") {
        auto scene = j.find("scene");
        if (scene == j.end() || !scene->is_object()) throw ProtocolError("config message needs a 'scene' object");
        ConfigMessage msg;
        for (const auto& [key, value] : scene->items()) {
            if (key == "cube_center") {
                msg.cube_center = vec3(value, "cube_center");
            } else if (key == "cube_half_extent") {
                msg.cube_half_extent = finite_number(value, "cube_half_extent");
                if (*msg.cube_half_extent <= 0.0) throw ProtocolError("cube_half_extent must be > 0");
            } else if (key == "wall_stiffness") {
                msg.wall_stiffness = finite_number(value, "wall_stiffness");
                if (*msg.wall_stiffness <= 0.0) throw ProtocolError("wall_stiffness must be > 0");
            } else {
                throw ProtocolError("unknown scene field '" + key + "'");
            }
        }
        return msg;
    }
    throw ProtocolError("unknown message type '" + t + "'");
}

std::string encode_state(const SessionState& s) {
    auto arr = [](const Vec3& v) { return json::array({safe(v.x()), safe(v.y()), safe(v.z())}); };
    json j;
    j["type"] = "state";
    j["tick"] = s.tick;
    j["cursor"] = arr(s.cursor);
    j["force_n"] = arr(s.contact_force);
    j["tip_mm"] = arr(s.plant.tip.position);
    j["arc"] = {{"kappa", safe(s.arc.kappa)},
                {"phi", safe(s.arc.phi)},
                {"theta", safe(s.arc.theta)},
                {"L", safe(s.arc.backbone_length)}};
    j["pressures_kpa"] = arr(s.plant.actual_pressures);
    j["saturated"] = s.saturated;
    return j.dump();
}

}  // namespace softhaptic
