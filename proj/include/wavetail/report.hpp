#pragma once

#include <string>
#include <vector>

#include "wavetail/meter.hpp"
#include "wavetail/solver.hpp"

namespace wavetail {

// Atomic file write: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);

// %.12g with a fixed locale-free formatter, so identical inputs produce
// byte-identical files.
std::string format_double(double v);

std::string region_stats_csv(const std::vector<RegionStat>& stats);
std::string probes_csv(const FieldHistory& h);
std::string energy_csv(const FieldHistory& h);

// phi along the three probe-curve families: r = const comes from the dense
// probe series (probes_csv); these export t = const and u = const cuts.
std::string tslices_csv(const FieldHistory& h, std::size_t r_stride = 8);
std::string ucurves_csv(const FieldHistory& h, const std::vector<double>& u_values = {4.0, 16.0, 64.0});
std::string verdicts_text(const std::vector<RateVerdict>& verdicts);
std::string verdicts_csv(const std::vector<RateVerdict>& verdicts);

// Self-describing checkpoint: text header, little-endian double payload.
void save_checkpoint(const std::string& path, const FieldHistory& h);
FieldHistory load_checkpoint(const std::string& path);

}  // namespace wavetail
