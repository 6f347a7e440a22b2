#include "softhaptic/report.hpp"

#include <cstdio>
#include <ostream>
#include <string>

namespace softhaptic {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string_view mode_name(PlantMode mode) { return mode == PlantMode::blocked ? "blocked" : "free"; }

void path_table(std::ostream& out, const ExperimentReport& report) {
    const bool blocked = report.mode == PlantMode::blocked;
    const char* unit = blocked ? "N" : "mm";
    out << "\n[" << to_string(report.level) << " / " << mode_name(report.mode) << "]  JND "
        << fmt("%.3f", report.jnd_threshold) << ' ' << unit << '\n';
    out << "  path   sim range   hw range   sim err mean (std)    hw err mean (std)    flag\n";
    for (const auto& p : report.paths) {
        char line[256];
        if (!p.completed) {
            std::snprintf(line, sizeof line, "  %-5s  FAILED: %s\n", p.label.c_str(), p.failure.c_str());
            out << line;
            continue;
        }
        std::string hw_range = "-", hw_err = "-";
        if (p.reference) {
            const auto& r = *p.reference;
            hw_range = fmt("%.2f", blocked ? r.force_range_n : r.position_range_mm);
            hw_err = fmt("%.2f", blocked ? r.force_error_mean_n : r.position_error_mean_mm) + " (" +
                     fmt("%.2f", blocked ? r.force_error_std_n : r.position_error_std_mm) + ")";
        }
        std::snprintf(line, sizeof line, "  %-5s  %9.3f  %9s   %8.4f (%.4f)    %-18s   %s%s\n", p.label.c_str(),
                      p.radial_range, hw_range.c_str(), p.error.mean, p.error.std, hw_err.c_str(),
                      p.above_jnd ? "ABOVE JND" : "below JND", p.saturated ? ", saturated" : "");
        out << line;
    }
}

}  // namespace

void write_summary_report(std::ostream& out, const CampaignSummary& summary, const ExperimentConfig& exp) {
    out << "softhaptic simulation report\n";
    out << "config hash: " << summary.config_hash << '\n';
    out << "hardware reference dataset: " << kReferenceDatasetVersion << '\n';
    out << "sampling " << fmt("%g", exp.sample_rate_hz) << " Hz, JND position " << fmt("%g", exp.jnd_position)
        << " mm, JND force " << fmt("%g", exp.jnd_force) << " N\n";
    out << "Hardware columns are measured reference values; the simulator does not model\n"
           "the physical error sources behind them.\n";
    if (summary.workspace_extent_mm) {
        out << "\nworkspace max radial extent from preload point: " << fmt("%.3f", *summary.workspace_extent_mm)
            << " mm\n";
    }
    for (const auto& report : summary.paths) path_table(out, report);

    for (const auto& bw : summary.bandwidth) {
        out << "\n[bandwidth axis " << to_string(bw.axis) << " / " << mode_name(bw.mode) << "]  A_c "
            << fmt("%.4f", bw.commanded_amplitude) << '\n';
        out << "  f (Hz)   MR        fitted A   fitted f\n";
        for (const auto& row : bw.rows) {
            char line[160];
            if (row.valid) {
                std::snprintf(line, sizeof line, "  %6.2f   %.4f    %.4f     %.4f\n", row.frequency_hz,
                              row.magnitude_ratio, row.fit.amplitude, row.fit.frequency);
            } else {
                std::snprintf(line, sizeof line, "  %6.2f   invalid: %s\n", row.frequency_hz, row.error.c_str());
            }
            out << line;
        }
        out << "  -3 dB crossing: " << (bw.crossing_hz ? fmt("%.3f Hz", *bw.crossing_hz) : "none in grid") << '\n';
    }
}

void write_path_report_csv(std::ostream& out, const ExperimentReport& report) {
    out << "label,angle_deg,mode,radial_range,err_mean,err_std,err_max,n_samples,saturated,completed,above_jnd,"
           "hw_range,hw_err_mean,hw_err_std\n";
    const bool blocked = report.mode == PlantMode::blocked;
    for (const auto& p : report.paths) {
        out << p.label << ',' << fmt("%g", p.angle_deg) << ',' << mode_name(report.mode) << ','
            << fmt("%.6f", p.radial_range) << ',' << fmt("%.6f", p.error.mean) << ',' << fmt("%.6f", p.error.std)
            << ',' << fmt("%.6f", p.error.max) << ',' << p.error.n_samples << ',' << int(p.saturated) << ','
            << int(p.completed) << ',' << int(p.above_jnd) << ',';
        if (p.reference) {
            const auto& r = *p.reference;
            out << fmt("%.2f", blocked ? r.force_range_n : r.position_range_mm) << ','
                << fmt("%.2f", blocked ? r.force_error_mean_n : r.position_error_mean_mm) << ','
                << fmt("%.2f", blocked ? r.force_error_std_n : r.position_error_std_mm);
        } else {
            out << ",,";
        }
        out << '\n';
    }
}

void write_path_samples_csv(std::ostream& out, const PathResult& path, PlantMode mode) {
    out << (mode == PlantMode::blocked ? "t_s,fx_n,fy_n,fz_n\n" : "t_s,x_mm,y_mm,z_mm\n");
    for (const auto& s : path.samples) {
        out << fmt("%.6f", s.t) << ',' << fmt("%.9g", s.value.x()) << ',' << fmt("%.9g", s.value.y()) << ','
            << fmt("%.9g", s.value.z()) << '\n';
    }
}

void write_bandwidth_csv(std::ostream& out, const BandwidthResult& result) {
    out << "frequency_hz,valid,magnitude_ratio,amplitude,fitted_frequency_hz,phase_rad,offset,residual_rms\n";
    for (const auto& r : result.rows) {
        out << fmt("%g", r.frequency_hz) << ',' << int(r.valid) << ',' << fmt("%.6f", r.magnitude_ratio) << ','
            << fmt("%.6f", r.fit.amplitude) << ',' << fmt("%.6f", r.fit.frequency) << ','
            << fmt("%.6f", r.fit.phase) << ',' << fmt("%.6f", r.fit.offset) << ','
            << fmt("%.6g", r.fit.residual_rms) << '\n';
    }
}

}  // namespace softhaptic
