#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "softhaptic/errors.hpp"
#include "softhaptic/teleop.hpp"

namespace softhaptic {

/// Malformed or unknown client message.
class ProtocolError : public InputError {
public:
    using InputError::InputError;
};

struct CursorMessage {
    Vec3 pos = Vec3::Zero();
};
struct ResetMessage {};
/// Scene update; fields absent from the message keep their current values.
struct ConfigMessage {
    std::optional<Vec3> cube_center;
    std::optional<double> cube_half_extent;
    std::optional<double> wall_stiffness;

    VirtualScene apply(VirtualScene scene) const;
};

using ClientMessage = std::variant<CursorMessage, ResetMessage, ConfigMessage>;

/// Parses one JSON object: {"type":"cursor","pos":[x,y,z]}, {"type":"reset"}
/// or {"type":"config","scene":{...}}. Non-finite numbers are rejected.
ClientMessage parse_client_message(std::string_view line);

/// One state frame as a single JSON line (no trailing newline).
std::string encode_state(const SessionState& state);

}  // namespace softhaptic
