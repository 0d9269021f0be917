#include "spectra_svi/experiment/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <tuple>

#include "spectra_svi/error.hpp"
#include "spectra_svi/matrix_io.hpp"

namespace spectra_svi::experiment {

namespace {

constexpr double kPanelW = 420, kPanelH = 300;
constexpr double kMarginL = 60, kMarginR = 20, kMarginT = 36, kMarginB = 44;
constexpr int kColumns = 3;
constexpr double kLegendH = 28;

constexpr const char* kPalette[] = {"#000000", "#1f4eb4", "#c2185b", "#d84315",
                                    "#6d4c41", "#2e7d32", "#7b1fa2", "#00838f"};

using SeriesKey = std::pair<std::string, double>;              // method, lambda
using PanelKey = std::tuple<long, long, double>;               // m, n, sigma
using Points = std::vector<std::pair<double, double>>;         // iter, log10 gap

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string SeriesLabel(const SeriesKey& k) {
  if (k.first == "MEL") {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", k.second);
    return std::string("MEL lambda=") + buf;
  }
  return k.first;
}

}  // namespace

void RenderSvg(std::ostream& out, const std::vector<GapRecord>& records) {
  std::map<PanelKey, std::map<SeriesKey, Points>> panels;
  std::map<SeriesKey, std::size_t> series_index;
  for (const MeanGapRecord& r : MeanOverPaths(records)) {
    const double y = std::log10(std::max(r.mean_gap, kPlotGapFloor));
    panels[{r.m, r.n, r.sigma}][{r.method, r.lambda}].emplace_back(static_cast<double>(r.iter), y);
    series_index.emplace(SeriesKey{r.method, r.lambda}, 0);
  }
  std::size_t next = 0;
  for (auto& [key, idx] : series_index) idx = next++;

  const std::size_t n_panels = std::max<std::size_t>(panels.size(), 1);
  const int cols = static_cast<int>(std::min<std::size_t>(n_panels, kColumns));
  const int rows = static_cast<int>((n_panels + kColumns - 1) / kColumns);
  const double width = cols * kPanelW;
  const double height = rows * kPanelH + kLegendH * (1 + static_cast<double>(series_index.size()));

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Num(width) << "\" height=\""
      << Num(height) << "\" viewBox=\"0 0 " << Num(width) << ' ' << Num(height) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  int panel_no = 0;
  for (const auto& [pkey, series] : panels) {
    const double ox = (panel_no % kColumns) * kPanelW;
    const double oy = (panel_no / kColumns) * kPanelH;
    ++panel_no;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& [skey, pts] : series) {
      for (const auto& [x, y] : pts) {
        xmin = std::min(xmin, x), xmax = std::max(xmax, x);
        ymin = std::min(ymin, y), ymax = std::max(ymax, y);
      }
    }
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1, ymin -= 1;
    const double pw = kPanelW - kMarginL - kMarginR, ph = kPanelH - kMarginT - kMarginB;
    auto sx = [&](double x) { return ox + kMarginL + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return oy + kMarginT + (ymax - y) / (ymax - ymin) * ph; };

    const auto& [m, n, sigma] = pkey;
    out << "<g class=\"panel\">\n";
    out << "<text x=\"" << Num(ox + kPanelW / 2) << "\" y=\"" << Num(oy + 20)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">(m,n)=(" << m
        << ',' << n << ") sigma=" << FormatDouble(sigma) << "</text>\n";
    out << "<rect x=\"" << Num(ox + kMarginL) << "\" y=\"" << Num(oy + kMarginT) << "\" width=\""
        << Num(pw) << "\" height=\"" << Num(ph) << "\" fill=\"none\" stroke=\"#888\"/>\n";
    out << "<text x=\"" << Num(ox + kMarginL) << "\" y=\"" << Num(oy + kPanelH - 24)
        << "\" font-family=\"sans-serif\" font-size=\"10\">" << Num(xmin) << "</text>\n";
    out << "<text x=\"" << Num(ox + kMarginL + pw) << "\" y=\"" << Num(oy + kPanelH - 24)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << Num(xmax)
        << "</text>\n";
    out << "<text x=\"" << Num(ox + kMarginL + pw / 2) << "\" y=\"" << Num(oy + kPanelH - 8)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">iteration</text>\n";
    out << "<text x=\"" << Num(ox + kMarginL - 4) << "\" y=\"" << Num(oy + kMarginT + 10)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << Num(ymax)
        << "</text>\n";
    out << "<text x=\"" << Num(ox + kMarginL - 4) << "\" y=\"" << Num(oy + kMarginT + ph)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << Num(ymin)
        << "</text>\n";
    out << "<text transform=\"translate(" << Num(ox + 14) << ',' << Num(oy + kMarginT + ph / 2)
        << ") rotate(-90)\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">log10 mean gap</text>\n";

    for (const auto& [skey, pts] : series) {
      const char* color = kPalette[series_index[skey] % std::size(kPalette)];
      if (pts.size() == 1) {
        out << "<circle class=\"series\" cx=\"" << Num(sx(pts[0].first)) << "\" cy=\""
            << Num(sy(pts[0].second)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        continue;
      }
      out << "<polyline class=\"series\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.2\" points=\"";
      for (std::size_t k = 0; k < pts.size(); ++k) {
        out << (k ? " " : "") << Num(sx(pts[k].first)) << ',' << Num(sy(pts[k].second));
      }
      out << "\"/>\n";
    }
    out << "</g>\n";
  }

  double ly = rows * kPanelH + kLegendH / 2;
  for (const auto& [skey, idx] : series_index) {
    const char* color = kPalette[idx % std::size(kPalette)];
    ly += kLegendH * 0.8;
    out << "<g class=\"legend-entry\"><line x1=\"20\" y1=\"" << Num(ly) << "\" x2=\"50\" y2=\""
        << Num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/><text x=\"58\" y=\""
        << Num(ly + 4) << "\" font-family=\"sans-serif\" font-size=\"12\">" << SeriesLabel(skey)
        << "</text></g>\n";
  }
  out << "</svg>\n";
}

void RenderSvg(const std::string& path, const std::vector<GapRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  RenderSvg(out, records);
}

}  // namespace spectra_svi::experiment
