// Command-line front end for the simulator, the experiment campaign and the
// teleop service.

#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "softhaptic/campaign.hpp"
#include "softhaptic/config.hpp"
#include "softhaptic/errors.hpp"
#include "softhaptic/protocol.hpp"
#include "softhaptic/report.hpp"
#include "softhaptic/server.hpp"

namespace fs = std::filesystem;
using namespace softhaptic;

namespace {

struct Globals {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = ".";
};

SimulationConfig load(const Globals& g) {
    SimulationConfig cfg = g.config_path.empty() ? default_config() : load_config(g.config_path);
    if (g.seed) {
        cfg.experiment.seed = *g.seed;
        cfg.plant.noise_seed = *g.seed;
    }
    cfg.validate();
    return cfg;
}

std::ofstream open_out(const Globals& g, const std::string& name) {
    fs::create_directories(g.out_dir);
    const auto path = fs::path(g.out_dir) / name;
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    return out;
}

PlantMode parse_mode(const std::string& s) {
    if (s == "free") return PlantMode::free;
    if (s == "blocked") return PlantMode::blocked;
    throw InputError("unknown mode '" + s + "' (free or blocked)");
}

TeleopServer* g_server = nullptr;

void on_signal(int) {
    if (g_server != nullptr) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Soft pneumatic haptic device simulator"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config_path, "INI configuration file")->check(CLI::ExistingFile);
    app.add_option("--seed", g.seed, "Seed for measurement noise and experiments");
    app.add_option("--out", g.out_dir, "Output directory for CSV and report files");

    std::string calib_csv;
    auto* calibrate = app.add_subcommand("calibrate", "Fit the pressure-length map from a CSV of pressure_kpa,length_mm");
    calibrate->add_option("csv", calib_csv)->required()->check(CLI::ExistingFile);

    auto* workspace = app.add_subcommand("workspace", "Sweep the pressure grid and report the workspace extent");
    std::optional<int> grid;
    workspace->add_option("--grid", grid, "Grid steps per chamber (default from config)");

    std::string level = "middle", mode = "free";
    auto* path_follow = app.add_subcommand("path-follow", "Run the path campaign for one level");
    path_follow->add_option("--level", level, "lower, middle, upper, z_plus or z_minus");
    path_follow->add_option("--mode", mode, "free or blocked");

    std::string axis = "x";
    std::optional<std::string> bw_mode;
    auto* bandwidth = app.add_subcommand("bandwidth", "Sinusoidal sweep on one axis");
    bandwidth->add_option("--axis", axis, "x, y or z");
    bandwidth->add_option("--mode", bw_mode, "free or blocked (default from config)");

    auto* report = app.add_subcommand("report", "Full campaign with the hardware comparison summary");

    ServerOptions server_opts;
    std::string static_dir;
    auto* serve = app.add_subcommand("serve", "Run the WebSocket teleop service");
    serve->add_option("--address", server_opts.address, "Listen address")->capture_default_str();
    serve->add_option("--port", server_opts.port, "Listen port, 0 for an ephemeral one")->capture_default_str();
    serve->add_option("--static-dir", static_dir, "Directory of UI assets served over HTTP");

    std::string replay_csv;
    auto* replay = app.add_subcommand("replay", "Drive a headless teleop session from a t_s,x,y,z CSV");
    replay->add_option("trace", replay_csv, "Cursor trace with columns t_s,x,y,z")->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        SimulationConfig cfg = load(g);

        if (*calibrate) {
            std::ifstream in(calib_csv);
            const auto samples = read_calibration_csv(in);
            const auto fit = fit_pressure_length(samples, cfg.geometry.pressure_range());
            cfg.actuator = ActuatorModel::shared(fit.map);
            cfg.validate();
            auto out = open_out(g, "config.ini");
            write_config(out, cfg);
            std::cout << "slope " << fit.map.slope << " mm/kPa, intercept " << fit.map.intercept
                      << " mm, residual rms " << fit.residual_rms << " mm (" << samples.size() << " samples)\n"
                      << "wrote " << (fs::path(g.out_dir) / "config.ini").string() << '\n';
        } else if (*workspace) {
            const auto sweep = workspace_sweep(cfg.geometry, cfg.actuator,
                                               grid.value_or(cfg.experiment.workspace_grid_steps));
            auto out = open_out(g, "workspace.csv");
            write_workspace_csv(out, sweep);
            std::cout << "points " << sweep.points.size() << ", max radial extent " << sweep.max_radial_extent
                      << " mm\n";
        } else if (*path_follow) {
            const auto lvl = parse_path_level(level);
            const auto m = parse_mode(mode);
            const auto result = run_path_experiment(lvl, m, cfg);
            const std::string stem = "path_" + std::string(to_string(lvl)) + "_" + mode;
            auto out = open_out(g, stem + ".csv");
            write_path_report_csv(out, result);
            for (const auto& p : result.paths) {
                auto trace = open_out(g, stem + "_" + p.label + ".csv");
                write_path_samples_csv(trace, p, m);
            }
            CampaignSummary summary;
            summary.config_hash = result.config_hash;
            summary.paths.push_back(result);
            write_summary_report(std::cout, summary, cfg.experiment);
        } else if (*bandwidth) {
            if (bw_mode) cfg.plant.mode = parse_mode(*bw_mode);
            const auto result = run_bandwidth_experiment(parse_axis(axis), cfg);
            auto out = open_out(g, "bandwidth_" + axis + ".csv");
            write_bandwidth_csv(out, result);
            CampaignSummary summary;
            summary.config_hash = result.config_hash;
            summary.bandwidth.push_back(result);
            write_summary_report(std::cout, summary, cfg.experiment);
        } else if (*report) {
            const auto summary = run_full_campaign(cfg);
            auto out = open_out(g, "report.txt");
            write_summary_report(out, summary, cfg.experiment);
            write_summary_report(std::cout, summary, cfg.experiment);
        } else if (*serve) {
            server_opts.static_dir = static_dir;
            TeleopServer server(server_opts, cfg);
            g_server = &server;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            std::cout << "listening on ws://" << server_opts.address << ':' << server.port() << '/' << std::endl;
            server.run();
            g_server = nullptr;
        } else if (*replay) {
            std::ifstream in(replay_csv);
            const auto samples = read_replay_csv(in);
            TeleopSession session(cfg.teleop, cfg.controller, cfg.plant, cfg.model());
            auto out = open_out(g, "replay.jsonl");
            std::size_t frames = 0;
            run_replay(samples, session, [&](const SessionState& s) {
                out << encode_state(s) << '\n';
                ++frames;
            });
            const Vec3 off = session.tip_offset();
            std::cout << "frames " << frames << ", final tip offset " << off.x() << ' ' << off.y() << ' '
                      << off.z() << " mm\n";
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
