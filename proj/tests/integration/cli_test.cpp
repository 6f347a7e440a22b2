#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <catch_amalgamated.hpp>

#include "softhaptic/config.hpp"

namespace fs = std::filesystem;

namespace {

struct Workdir {
    fs::path path;
    Workdir() {
        path = fs::temp_directory_path() / ("softhaptic_cli_test_" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~Workdir() { fs::remove_all(path); }
};

int run(const std::string& args, const fs::path& log) {
    const std::string cmd = std::string(SOFTHAPTIC_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string first_line(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
}

}  // namespace

TEST_CASE("workspace") {
    Workdir w;
    REQUIRE(run("--out " + w.path.string() + " workspace", w.path / "log") == 0);
    CHECK(first_line(w.path / "workspace.csv") == "p1_kpa,p2_kpa,p3_kpa,x_mm,y_mm,z_mm");
    CHECK(slurp(w.path / "log").find("max radial extent 12.80") != std::string::npos);
}

TEST_CASE("path-follow writes summary and traces") {
    Workdir w;
    REQUIRE(run("--out " + w.path.string() + " path-follow --level upper --mode blocked", w.path / "log") == 0);
    CHECK(fs::exists(w.path / "path_upper_blocked.csv"));
    CHECK(first_line(w.path / "path_upper_blocked_30.csv") == "t_s,fx_n,fy_n,fz_n");
    const auto log = slurp(w.path / "log");
    CHECK(log.find("[upper / blocked]") != std::string::npos);
    CHECK(log.find("config hash:") != std::string::npos);
}

TEST_CASE("bandwidth") {
    Workdir w;
    REQUIRE(run("--out " + w.path.string() + " bandwidth --axis z", w.path / "log") == 0);
    CHECK(first_line(w.path / "bandwidth_z.csv").rfind("frequency_hz,valid,magnitude_ratio", 0) == 0);
    CHECK(slurp(w.path / "log").find("-3 dB crossing: 2.9") != std::string::npos);
}

TEST_CASE("calibrate writes a config with the fitted map") {
    Workdir w;
    {
        std::ofstream csv(w.path / "cal.csv");
        csv << "pressure_kpa,length_mm\n";
        for (int p = 0; p <= 50; p += 2) csv << p << ',' << 0.25 * p + 16.0 << '\n';
    }
    REQUIRE(run("--out " + w.path.string() + " calibrate " + (w.path / "cal.csv").string(), w.path / "log") == 0);
    const auto cfg = softhaptic::load_config(w.path / "config.ini");
    CHECK(cfg.actuator.chambers[2].slope == Catch::Approx(0.25).epsilon(1e-12));
    CHECK(cfg.actuator.chambers[0].intercept == Catch::Approx(16.0).epsilon(1e-12));

    // The written file is accepted as --config.
    REQUIRE(run("--config " + (w.path / "config.ini").string() + " --out " + w.path.string() + " workspace",
                w.path / "log2") == 0);
}

TEST_CASE("replay") {
    Workdir w;
    {
        std::ofstream csv(w.path / "trace.csv");
        csv << "t_s,x,y,z\n0,3,0,0\n0.2,0.525,0,0\n1.0,0.525,0,0\n";
    }
    REQUIRE(run("--seed 7 --out " + w.path.string() + " replay " + (w.path / "trace.csv").string(),
                w.path / "log") == 0);
    std::ifstream in(w.path / "replay.jsonl");
    std::string line;
    int frames = 0;
    while (std::getline(in, line)) {
        REQUIRE(line.rfind("{", 0) == 0);
        ++frames;
    }
    CHECK(frames == 60);
    CHECK(slurp(w.path / "log").find("frames 60") != std::string::npos);
}

TEST_CASE("errors") {
    Workdir w;
    CHECK(run("", w.path / "log") != 0);
    CHECK(run("path-follow --level sideways", w.path / "log") == 2);
    CHECK(run("bandwidth --axis w", w.path / "log") == 2);
    {
        std::ofstream bad(w.path / "bad.ini");
        bad << "[geometry]\nchamber_offset_d = -3\n";
    }
    CHECK(run("--config " + (w.path / "bad.ini").string() + " workspace", w.path / "log") == 2);
    CHECK(slurp(w.path / "log").find("config error") != std::string::npos);
}
