#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spectra_svi/experiment/grid.hpp"

namespace spectra_svi::experiment {

/// Smallest gap plotted; log10 of anything below it is drawn at -16.
inline constexpr double kPlotGapFloor = 1e-16;

/// Static SVG of log10(path-mean gap) against iteration. One panel per
/// (m, n, sigma) cell, one series per (method, lambda) in every panel, and a
/// shared legend.
void RenderSvg(std::ostream& out, const std::vector<GapRecord>& records);
void RenderSvg(const std::string& path, const std::vector<GapRecord>& records);

}  // namespace spectra_svi::experiment
