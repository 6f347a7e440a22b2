#pragma once

#include <iosfwd>

#include "softhaptic/campaign.hpp"

namespace softhaptic {

/// Human-readable summary: per-path simulated range and error next to the
/// hardware reference values, JND flags, bandwidth tables and the workspace
/// extent. Hardware values are printed for reference only.
void write_summary_report(std::ostream& out, const CampaignSummary& summary, const ExperimentConfig& exp);

/// One row per path: label, angle, range, error stats, flags and reference values.
void write_path_report_csv(std::ostream& out, const ExperimentReport& report);

/// t_s followed by the sampled vector (x,y,z in mm, or fx,fy,fz in N).
void write_path_samples_csv(std::ostream& out, const PathResult& path, PlantMode mode);

void write_bandwidth_csv(std::ostream& out, const BandwidthResult& result);

}  // namespace softhaptic
