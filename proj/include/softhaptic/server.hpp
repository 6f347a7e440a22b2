#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>

#include "softhaptic/config.hpp"

namespace softhaptic {

struct ServerOptions {
    std::string address = "127.0.0.1";
    /// 0 picks an ephemeral port; see TeleopServer::port().
    std::uint16_t port = 8765;
    /// Directory served over plain HTTP GET; empty disables static files.
    std::filesystem::path static_dir;
    /// Frames a slow client may fall behind before the oldest are dropped.
    std::size_t max_pending_frames = 120;
};

/// WebSocket teleop service. Each connection owns an independent
/// TeleopSession ticked by its own timer; client messages are applied at the
/// next tick. Everything runs on one io_context thread inside run().
class TeleopServer {
public:
    TeleopServer(ServerOptions options, SimulationConfig config);
    ~TeleopServer();
    TeleopServer(const TeleopServer&) = delete;
    TeleopServer& operator=(const TeleopServer&) = delete;

    /// Bound port, valid after construction.
    std::uint16_t port() const;
    /// Blocks until stop() is called.
    void run();
    /// Thread-safe.
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace softhaptic
