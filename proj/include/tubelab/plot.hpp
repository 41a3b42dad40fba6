// SPDX-License-Identifier: Apache-2.0
//
// Visual and tabular output: an SVG rendering of a base domain (strip,
// obstacles, mid line, optional witness curve and image band) and CSV dumps
// of scan data.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tubelab/curves.hpp"
#include "tubelab/geometry.hpp"
#include "tubelab/kobayashi.hpp"
#include "tubelab/witness_maps.hpp"

namespace tubelab {

struct PlotOptions {
  // Draw the canonical analytic witness sin(t)/k + mid for this level.
  std::optional<int> witness_k;
  // Shade the image band of f_n for this index.
  std::optional<int> band_n;
  double x_margin{1.0};
  double pixels_per_unit{60.0};
};

namespace detail {

class SvgCanvas {
 public:
  SvgCanvas(double x_lo, double x_hi, double y_lo, double y_hi, double scale)
      : x_lo_(x_lo), y_hi_(y_hi), scale_(scale),
        width_((x_hi - x_lo) * scale), height_((y_hi - y_lo) * scale) {}

  [[nodiscard]] double px(double x) const { return (x - x_lo_) * scale_; }
  [[nodiscard]] double py(double y) const { return (y_hi_ - y) * scale_; }

  void line(double x1, double y1, double x2, double y2, const std::string& style) {
    body_ << "  <line x1=\"" << px(x1) << "\" y1=\"" << py(y1) << "\" x2=\"" << px(x2)
          << "\" y2=\"" << py(y2) << "\" style=\"" << style << "\"/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& style,
                bool closed = false) {
    body_ << (closed ? "  <polygon points=\"" : "  <polyline points=\"");
    for (const auto& [x, y] : pts) body_ << px(x) << "," << py(y) << " ";
    body_ << "\" style=\"" << style << "\"/>\n";
  }

  void text(double x, double y, const std::string& label) {
    body_ << "  <text x=\"" << px(x) << "\" y=\"" << py(y)
          << "\" font-size=\"12\" font-family=\"sans-serif\" fill=\"#444\">" << label
          << "</text>\n";
  }

  [[nodiscard]] std::string finish() const {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
        << height_ << "\" viewBox=\"0 0 " << width_ << " " << height_ << "\">\n";
    out << "  <rect width=\"" << width_ << "\" height=\"" << height_
        << "\" fill=\"#fdfdfb\"/>\n";
    out << body_.str();
    out << "</svg>\n";
    return out.str();
  }

 private:
  double x_lo_, y_hi_, scale_, width_, height_;
  std::ostringstream body_;
};

}  // namespace detail

[[nodiscard]] inline std::string render_svg(const DomainSpec& d, const PlotOptions& opt = {}) {
  double x_min = -1.0;
  double x_max = 1.0;
  for (const Obstacle& ob : d.obstacles) {
    if (const auto* slit = std::get_if<VerticalSlit>(&ob)) {
      x_min = std::min(x_min, slit->x);
      x_max = std::max(x_max, slit->x);
    } else {
      const auto& tooth = std::get<SmoothTooth>(ob);
      x_min = std::min(x_min, tooth.foot().lo);
      x_max = std::max(x_max, tooth.foot().hi);
    }
  }
  if (opt.witness_k) {
    x_min = std::min(x_min, -static_cast<double>(*opt.witness_k));
    x_max = std::max(x_max, static_cast<double>(*opt.witness_k));
  }
  x_min -= opt.x_margin;
  x_max += opt.x_margin;
  const double pad = 0.5;
  detail::SvgCanvas svg(x_min, x_max, d.y_lo - pad, d.y_hi + pad, opt.pixels_per_unit);

  // Strip boundary and mid line.
  svg.line(x_min, d.y_lo, x_max, d.y_lo, "stroke:#333;stroke-width:2");
  svg.line(x_min, d.y_hi, x_max, d.y_hi, "stroke:#333;stroke-width:2");
  svg.line(x_min, d.mid, x_max, d.mid, "stroke:#bbb;stroke-width:1;stroke-dasharray:6 4");

  // Image band of f_n (drawn first so obstacles and curves stay visible).
  if (opt.band_n) {
    const int n = *opt.band_n;
    const double lo = std::max(x_min, -static_cast<double>(n));
    const double hi = std::min(x_max, static_cast<double>(n));
    if (lo < hi) {
      const int samples = 512;
      std::vector<std::pair<double, double>> upper, lower;
      for (int i = 0; i <= samples; ++i) {
        const double x = lo + (hi - lo) * i / samples;
        const double s = std::sin(x);
        const double a = d.mid + s * sech(n);
        const double b = d.mid + s;
        upper.emplace_back(x, std::max(a, b));
        lower.emplace_back(x, std::min(a, b));
      }
      std::vector<std::pair<double, double>> ring = upper;
      ring.insert(ring.end(), lower.rbegin(), lower.rend());
      svg.polyline(ring, "fill:#8ecae6;fill-opacity:0.35;stroke:none", /*closed=*/true);
    }
  }

  // Obstacles.
  for (const Obstacle& ob : d.obstacles) {
    if (const auto* slit = std::get_if<VerticalSlit>(&ob)) {
      svg.line(slit->x, slit->span.lo, slit->x, slit->span.hi,
               "stroke:#d62828;stroke-width:3;stroke-linecap:round");
    } else {
      const auto& tooth = std::get<SmoothTooth>(ob);
      const int samples = 128;
      std::vector<std::pair<double, double>> pts;
      const double anchor = tooth.side == ToothSide::Bottom ? d.y_lo : d.y_hi;
      pts.emplace_back(tooth.foot().lo, anchor);
      for (int i = 0; i <= samples; ++i) {
        const double x = tooth.foot().lo + tooth.foot().width() * i / samples;
        pts.emplace_back(x, tooth_curve(d, tooth, x));
      }
      pts.emplace_back(tooth.foot().hi, anchor);
      svg.polyline(pts, "fill:#f4a261;fill-opacity:0.8;stroke:#9c4a0e;stroke-width:1",
                   /*closed=*/true);
    }
  }

  // Canonical analytic witness.
  if (opt.witness_k) {
    const int k = *opt.witness_k;
    const double lo = std::max(x_min, -static_cast<double>(k));
    const double hi = std::min(x_max, static_cast<double>(k));
    const int samples = 512;
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i <= samples; ++i) {
      const double x = lo + (hi - lo) * i / samples;
      pts.emplace_back(x, std::sin(x) / k + d.mid);
    }
    svg.polyline(pts, "fill:none;stroke:#2a9d8f;stroke-width:1.5");
    svg.text(lo + 0.2, d.mid + 1.0 / k + 0.15, "sin(t)/" + std::to_string(k) + " + mid");
  }

  return svg.finish();
}

[[nodiscard]] inline std::string write_scan_csv(const ObstructionScan& scan) {
  std::ostringstream out;
  out.precision(17);
  out << "n,status,origin_norm,upper_bound\n";
  for (const ObstructionRow& row : scan.rows) {
    const char* status = row.status == ImageStatus::Contained       ? "contained"
                         : row.status == ImageStatus::NotContained ? "not_contained"
                                                                    : "undecided";
    out << row.n << "," << status << "," << row.origin_norm << "," << row.upper_bound << "\n";
  }
  return out.str();
}

}  // namespace tubelab
