#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcwave/scenario.hpp"

namespace pcwave {

// Deterministic CSV: 17 significant digits, '\n' line ends, no locale.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

uint64_t fnv1a64_file(const std::string& path);

// Minimal polyline plot of (x, y); never load bearing.
void write_svg_polyline(const std::string& path, const std::vector<double>& x,
                        const std::vector<double>& y, const std::string& title);

// manifest.json: every emitted file with content hash and byte count, plus a
// config echo and the grid.
void write_manifest(const ScenarioConfig& cfg, const FrequencyGrid& grid,
                    const std::vector<std::string>& files);

void write_report_json(const std::string& path, const ValidationReport& report,
                       const ValidationOptions& opt);

// Line-based `key = value` scenario file; '#' starts a comment. Frequencies in
// MHz (value = omega / 2pi), lengths in cm. Unknown keys are errors.
ScenarioConfig parse_config_file(const std::string& path);
void apply_config_line(ScenarioConfig& cfg, const std::string& key, const std::string& value);

std::string preset_name(Preset p);
std::string model_name(Model m);
std::string geometry_name(Geometry g);

}  // namespace pcwave
