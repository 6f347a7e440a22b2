#include "softhaptic/server.hpp"

#include <chrono>
#include <deque>
#include <fstream>
#include <optional>
#include <sstream>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include <json.hpp>

#include "softhaptic/protocol.hpp"

namespace softhaptic {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

std::string_view mime_type(const std::filesystem::path& p) {
    const auto ext = p.extension().string();
    if (ext == ".html" || ext == ".htm") return "text/html";
    if (ext == ".js" || ext == ".mjs") return "application/javascript";
    if (ext == ".css") return "text/css";
    if (ext == ".json") return "application/json";
    if (ext == ".svg") return "image/svg+xml";
    if (ext == ".png") return "image/png";
    if (ext == ".wasm") return "application/wasm";
    if (ext == ".csv" || ext == ".txt") return "text/plain";
    return "application/octet-stream";
}

/// Resolves a request target under root; empty when it escapes or is missing.
std::filesystem::path resolve_static(const std::filesystem::path& root, std::string_view target) {
    if (root.empty()) return {};
    std::string path(target.substr(0, target.find('?')));
    if (path.empty() || path.front() != '/') return {};
    if (path.back() == '/') path += "index.html";
    const auto rel = std::filesystem::path(path.substr(1)).lexically_normal();
    if (rel.empty() || rel.is_absolute() || *rel.begin() == "..") return {};
    auto full = root / rel;
    std::error_code ec;
    if (!std::filesystem::is_regular_file(full, ec)) return {};
    return full;
}

class WsSession : public std::enable_shared_from_this<WsSession> {
public:
    WsSession(tcp::socket socket, const SimulationConfig& cfg, std::size_t max_pending)
        : ws_(std::move(socket)),
          timer_(ws_.get_executor()),
          session_(cfg.teleop, cfg.controller, cfg.plant, cfg.model()),
          period_(std::chrono::duration_cast<std::chrono::steady_clock::duration>(
              std::chrono::duration<double>(1.0 / cfg.teleop.session_rate_hz))),
          max_pending_(max_pending) {}

    void start(http::request<http::string_body> req) {
        ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
        ws_.text(true);
        ws_.async_accept(req, [self = shared_from_this()](beast::error_code ec) {
            if (ec) return;
            self->read();
            self->next_tick_ = std::chrono::steady_clock::now();
            self->schedule();
        });
    }

private:
    void read() {
        ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
            if (ec) {
                self->closed_ = true;
                self->timer_.cancel();
                return;
            }
            self->handle(beast::buffers_to_string(self->buffer_.data()));
            self->buffer_.consume(self->buffer_.size());
            self->read();
        });
    }

    void handle(const std::string& text) {
        // A frame may carry several newline-separated messages.
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            try {
                const auto msg = parse_client_message(line);
                if (auto* c = std::get_if<CursorMessage>(&msg)) {
                    cursor_ = c->pos;
                } else if (std::holds_alternative<ResetMessage>(msg)) {
                    session_.reset();
                } else {
                    session_.set_scene(std::get<ConfigMessage>(msg).apply(session_.scene()));
                }
            } catch (const std::exception& e) {
                nlohmann::json err{{"type", "error"}, {"message", e.what()}};
                enqueue(err.dump());
            }
        }
    }

    void schedule() {
        next_tick_ += period_;
        timer_.expires_at(next_tick_);
        timer_.async_wait([self = shared_from_this()](beast::error_code ec) {
            if (ec || self->closed_) return;
            self->enqueue(encode_state(self->session_.tick(self->cursor())));
            self->schedule();
        });
    }

    // Until the client sends a cursor it is parked outside the cube.
    Vec3 cursor() const {
        if (cursor_) return *cursor_;
        const auto& scene = session_.scene();
        return scene.cube_center + Vec3::UnitX() * (2.0 * scene.cube_half_extent + 1.0);
    }

    void enqueue(std::string frame) {
        // Never block the tick: a client that falls too far behind loses its
        // oldest unsent frames.
        if (pending_.size() >= max_pending_) pending_.pop_front();
        pending_.push_back(std::move(frame));
        if (!writing_) write();
    }

    void write() {
        writing_ = true;
        out_ = std::move(pending_.front());
        pending_.pop_front();
        ws_.async_write(asio::buffer(out_), [self = shared_from_this()](beast::error_code ec, std::size_t) {
            self->writing_ = false;
            if (ec) {
                self->closed_ = true;
                self->timer_.cancel();
                return;
            }
            if (!self->pending_.empty()) self->write();
        });
    }

    websocket::stream<beast::tcp_stream> ws_;
    asio::steady_timer timer_;
    TeleopSession session_;
    std::chrono::steady_clock::duration period_;
    std::chrono::steady_clock::time_point next_tick_;
    std::size_t max_pending_;
    beast::flat_buffer buffer_;
    std::optional<Vec3> cursor_;
    std::deque<std::string> pending_;
    std::string out_;
    bool writing_ = false;
    bool closed_ = false;
};

class HttpSession : public std::enable_shared_from_this<HttpSession> {
public:
    HttpSession(tcp::socket socket, const SimulationConfig& cfg, const ServerOptions& opts)
        : stream_(std::move(socket)), cfg_(cfg), opts_(opts) {}

    void start() { read(); }

private:
    void read() {
        req_ = {};
        stream_.expires_after(std::chrono::seconds(30));
        http::async_read(stream_, buffer_, req_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
            if (ec) return;
            self->handle();
        });
    }

    void handle() {
        if (websocket::is_upgrade(req_)) {
            stream_.expires_never();
            std::make_shared<WsSession>(stream_.release_socket(), cfg_, opts_.max_pending_frames)
                ->start(std::move(req_));
            return;
        }
        auto res = std::make_shared<http::response<http::string_body>>();
        res->version(req_.version());
        res->keep_alive(req_.keep_alive());
        res->set(http::field::server, "softhaptic");
        const auto file = req_.method() == http::verb::get ? resolve_static(opts_.static_dir, std::string_view(req_.target().data(), req_.target().size()))
                                                           : std::filesystem::path{};
        if (file.empty()) {
            res->result(http::status::not_found);
            res->set(http::field::content_type, "text/plain");
            res->body() = "not found\n";
        } else {
            std::ifstream in(file, std::ios::binary);
            std::ostringstream body;
            body << in.rdbuf();
            res->result(http::status::ok);
            res->set(http::field::content_type, std::string(mime_type(file)));
            res->body() = body.str();
        }
        res->prepare_payload();
        http::async_write(stream_, *res, [self = shared_from_this(), res](beast::error_code ec, std::size_t) {
            if (ec || !res->keep_alive()) {
                beast::error_code ignored;
                self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
                return;
            }
            self->read();
        });
    }

    beast::tcp_stream stream_;
    const SimulationConfig& cfg_;
    const ServerOptions& opts_;
    beast::flat_buffer buffer_;
    http::request<http::string_body> req_;
};

}  // namespace

struct TeleopServer::Impl {
    ServerOptions options;
    SimulationConfig config;
    asio::io_context ioc{1};
    tcp::acceptor acceptor{ioc};

    void accept() {
        acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
            if (ec) return;
            std::make_shared<HttpSession>(std::move(socket), config, options)->start();
            accept();
        });
    }
};

TeleopServer::TeleopServer(ServerOptions options, SimulationConfig config) : impl_(std::make_unique<Impl>()) {
    config.validate();
    impl_->options = std::move(options);
    impl_->config = std::move(config);
    const tcp::endpoint endpoint(asio::ip::make_address(impl_->options.address), impl_->options.port);
    impl_->acceptor.open(endpoint.protocol());
    impl_->acceptor.set_option(asio::socket_base::reuse_address(true));
    impl_->acceptor.bind(endpoint);
    impl_->acceptor.listen();
    impl_->accept();
}

TeleopServer::~TeleopServer() = default;

std::uint16_t TeleopServer::port() const { return impl_->acceptor.local_endpoint().port(); }

void TeleopServer::run() {
    impl_->ioc.run();
}

void TeleopServer::stop() {
    asio::post(impl_->ioc, [this] {
        beast::error_code ec;
        impl_->acceptor.close(ec);
        impl_->ioc.stop();
    });
}

}  // namespace softhaptic
