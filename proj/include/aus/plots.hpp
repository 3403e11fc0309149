#pragma once
// Offline result emission: per-stage curve CSVs along the sweep coordinate,
// band-plot SVGs, and spectrum CSVs. Pure text output, deterministic.

#include <string>
#include <vector>

#include "aus/bundle.hpp"

namespace aus {

inline constexpr std::size_t kPlotSamples = 2048;

// Writes stage_<m>_curve.csv, stage_<m>_band.svg, stage_<m>_spectrum.csv for
// every record into out_dir (created if missing); returns the paths written.
// A bundle without records writes nothing.
std::vector<std::string> emit_plots(const SystemBundle& bundle, const std::string& out_dir);

}  // namespace aus
