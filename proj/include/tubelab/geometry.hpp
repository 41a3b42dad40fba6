// SPDX-License-Identifier: Apache-2.0
//
// Planar bases for tube domains: an open horizontal strip minus closed
// obstacles (zero-width vertical slits and smooth boundary teeth), with
// rigorous point / box / segment / graph containment queries.
//
// Orientation of all answers: "inside" is only reported when proved by
// outward-rounded interval arithmetic; "not inside" is only reported with a
// point that provably lies in the complement.  Near-tangent queries that the
// subdivision budget cannot resolve come back Unknown (graphs, boxes) or
// false (plain bool queries).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tubelab/curves.hpp"
#include "tubelab/errors.hpp"
#include "tubelab/interval.hpp"

namespace tubelab {

struct Point2 {
  double x1{0.0};
  double x2{0.0};
};

// Closed vertical segment {x} x [span.lo, span.hi] of zero width.
struct VerticalSlit {
  double x{0.0};
  Interval span;
};

enum class ToothSide { Bottom, Top };

// Closed region between a strip boundary line and a C-infinity bump curve
// whose apex touches the mid line.  The bump is symmetric about the apex;
// its support is [apex_x - half_width, apex_x + half_width].
struct SmoothTooth {
  ToothSide side{ToothSide::Bottom};
  double apex_x{0.0};
  double half_width{0.0};

  [[nodiscard]] Interval foot() const {
    return {apex_x - half_width, apex_x + half_width};
  }
};

using Obstacle = std::variant<VerticalSlit, SmoothTooth>;

enum class Containment { Inside, NotInside, Unknown };

enum class EnvelopeCase { CaseI, CaseII };

struct DomainSpec {
  double y_lo{0.0};
  double y_hi{4.0};
  double mid{2.0};
  std::vector<Obstacle> obstacles;
};

// Subdivision limits shared by the adaptive queries.
struct GeometryLimits {
  int max_depth{40};
  double min_width{1e-12};
};

namespace detail {

// Normalized bump B(s) = exp(-s^2 / (1 - s^2)) on |s| < 1, zero outside.
// B(0) = 1 exactly, B is strictly decreasing in |s|, and all derivatives
// vanish at |s| = 1.
[[nodiscard]] inline Interval bump_enclosure(const Interval& s) {
  const Interval u = square(s);
  if (u.lo >= 1.0) return Interval(0.0);
  if (u.hi >= 1.0) {
    // Straddles the support edge: range is [0, B at the smallest |s|].
    const Interval ul(u.lo);
    const Interval g = exp(-(ul / (Interval(1.0) - ul)));
    return {0.0, std::min(g.hi, 1.0)};
  }
  const Interval g = exp(-(u / (Interval(1.0) - u)));
  return {std::max(g.lo, 0.0), std::min(g.hi, 1.0)};
}

[[nodiscard]] inline double bump_point(double s) {
  const double u = s * s;
  if (u >= 1.0) return 0.0;
  return std::exp(-u / (1.0 - u));
}

}  // namespace detail

// Enclosure of the tooth's curve height over an x-interval.  For a bottom
// tooth this is the upper boundary of the tooth region; for a top tooth the
// lower boundary.
[[nodiscard]] inline Interval tooth_curve_enclosure(const DomainSpec& d, const SmoothTooth& t,
                                                   const Interval& x) {
  const Interval s = (x - Interval(t.apex_x)) * (Interval(1.0) / Interval(t.half_width));
  const Interval b = detail::bump_enclosure(s);
  if (t.side == ToothSide::Bottom) {
    return Interval(d.y_lo) + Interval(d.mid - d.y_lo) * b;
  }
  return Interval(d.y_hi) - Interval(d.y_hi - d.mid) * b;
}

[[nodiscard]] inline double tooth_curve(const DomainSpec& d, const SmoothTooth& t, double x) {
  const double b = detail::bump_point((x - t.apex_x) / t.half_width);
  return t.side == ToothSide::Bottom ? d.y_lo + (d.mid - d.y_lo) * b
                                     : d.y_hi - (d.y_hi - d.mid) * b;
}

// True iff p provably lies in the open set D.  Points within rounding
// distance of a tooth curve are reported false.
[[nodiscard]] inline bool contains(const DomainSpec& d, const Point2& p) {
  if (!(d.y_lo < p.x2 && p.x2 < d.y_hi)) return false;
  for (const Obstacle& ob : d.obstacles) {
    if (const auto* slit = std::get_if<VerticalSlit>(&ob)) {
      if (p.x1 == slit->x && slit->span.contains(p.x2)) return false;
    } else {
      const auto& tooth = std::get<SmoothTooth>(ob);
      if (std::fabs(p.x1 - tooth.apex_x) > tooth.half_width) continue;
      const Interval h = tooth_curve_enclosure(d, tooth, Interval(p.x1));
      if (tooth.side == ToothSide::Bottom) {
        if (!(p.x2 > h.hi)) return false;
      } else {
        if (!(p.x2 < h.lo)) return false;
      }
    }
  }
  return true;
}

// Three-way containment of a closed box.  Boxes meeting a slit are decided
// exactly (NotInside); tooth tangencies within rounding width come back
// Unknown so callers can subdivide.
[[nodiscard]] inline Containment box_containment(const DomainSpec& d, const Box& b) {
  if (b.y.lo <= d.y_lo || b.y.hi >= d.y_hi) return Containment::NotInside;
  for (const Obstacle& ob : d.obstacles) {
    if (const auto* slit = std::get_if<VerticalSlit>(&ob)) {
      if (b.x.contains(slit->x) && slit->span.intersects(b.y)) return Containment::NotInside;
    } else {
      const auto& tooth = std::get<SmoothTooth>(ob);
      const auto overlap = intersection(b.x, tooth.foot());
      if (!overlap) continue;
      const double x_star = std::clamp(tooth.apex_x, overlap->lo, overlap->hi);
      const Interval h_star = tooth_curve_enclosure(d, tooth, Interval(x_star));
      if (tooth.side == ToothSide::Bottom) {
        // The curve is highest at the point of the overlap closest to the
        // apex, so (x_star, b.y.lo) is in the tooth whenever it is below it.
        if (b.y.lo <= h_star.lo) return Containment::NotInside;
      } else {
        if (b.y.hi >= h_star.hi) return Containment::NotInside;
      }
    }
  }
  bool unknown = false;
  for (const Obstacle& ob : d.obstacles) {
    if (!std::holds_alternative<SmoothTooth>(ob)) continue;
    const auto& tooth = std::get<SmoothTooth>(ob);
    const auto overlap = intersection(b.x, tooth.foot());
    if (!overlap) continue;
    const Interval h = tooth_curve_enclosure(d, tooth, *overlap);
    if (tooth.side == ToothSide::Bottom) {
      if (!(b.y.lo > h.hi)) unknown = true;
    } else {
      if (!(b.y.hi < h.lo)) unknown = true;
    }
  }
  return unknown ? Containment::Unknown : Containment::Inside;
}

// True iff the closed segment [-k, k] x {b} provably lies in D.  Slit
// crossings are decided exactly; tooth clearance uses the monotone profile
// (the curve's extremum over any x-window sits at the point closest to the
// apex).
[[nodiscard]] inline bool horizontal_segment_in(const DomainSpec& d, double b, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("horizontal_segment_in: k must be positive");
  if (!(d.y_lo < b && b < d.y_hi)) return false;
  for (const Obstacle& ob : d.obstacles) {
    if (const auto* slit = std::get_if<VerticalSlit>(&ob)) {
      if (-k <= slit->x && slit->x <= k && slit->span.contains(b)) return false;
    } else {
      const auto& tooth = std::get<SmoothTooth>(ob);
      const auto overlap = intersection(Interval{-k, k}, tooth.foot());
      if (!overlap) continue;
      const double x_star = std::clamp(tooth.apex_x, overlap->lo, overlap->hi);
      const Interval h_star = tooth_curve_enclosure(d, tooth, Interval(x_star));
      if (tooth.side == ToothSide::Bottom) {
        if (!(b > h_star.hi)) return false;
      } else {
        if (!(b < h_star.lo)) return false;
      }
    }
  }
  return true;
}

// Containment of the graph {(t, gamma(t)) : t in x_range} in D.
[[nodiscard]] inline Containment graph_in_domain(const DomainSpec& d, const Curve& gamma,
                                                 const Interval& x_range,
                                                 const GeometryLimits& limits = {}) {
  bool unknown = false;

  // Slits meet the graph only at their own abscissa: one exact point check
  // per slit.
  for (const Obstacle& ob : d.obstacles) {
    const auto* slit = std::get_if<VerticalSlit>(&ob);
    if (slit == nullptr || !x_range.contains(slit->x)) continue;
    const Interval at = range(gamma, Interval(slit->x));
    if (at.lo >= slit->span.lo && at.hi <= slit->span.hi) return Containment::NotInside;
    if (at.intersects(slit->span)) unknown = true;
  }

  struct Cell {
    Interval t;
    int depth;
  };
  std::vector<Cell> stack{{x_range, 0}};
  while (!stack.empty()) {
    const Cell cell = stack.back();
    stack.pop_back();
    const Interval r = range(gamma, cell.t);

    bool safe = r.lo > d.y_lo && r.hi < d.y_hi;
    if (safe) {
      for (const Obstacle& ob : d.obstacles) {
        const auto* tooth = std::get_if<SmoothTooth>(&ob);
        if (tooth == nullptr) continue;
        const auto overlap = intersection(cell.t, tooth->foot());
        if (!overlap) continue;
        const Interval h = tooth_curve_enclosure(d, *tooth, *overlap);
        const bool clear = tooth->side == ToothSide::Bottom ? r.lo > h.hi : r.hi < h.lo;
        if (!clear) {
          safe = false;
          break;
        }
      }
    }
    if (safe) continue;

    // Definite-failure probes: the cell midpoint plus any tooth apex inside
    // the cell.
    std::vector<double> probes{cell.t.mid()};
    for (const Obstacle& ob : d.obstacles) {
      const auto* tooth = std::get_if<SmoothTooth>(&ob);
      if (tooth != nullptr && cell.t.contains(tooth->apex_x)) probes.push_back(tooth->apex_x);
    }
    bool hit = false;
    for (double t_star : probes) {
      const Interval at = range(gamma, Interval(t_star));
      if (at.hi <= d.y_lo || at.lo >= d.y_hi) {
        hit = true;
        break;
      }
      for (const Obstacle& ob : d.obstacles) {
        const auto* tooth = std::get_if<SmoothTooth>(&ob);
        if (tooth == nullptr || std::fabs(t_star - tooth->apex_x) > tooth->half_width) continue;
        const Interval h = tooth_curve_enclosure(d, *tooth, Interval(t_star));
        // Below a bottom curve means inside the tooth or below the strip;
        // above a top curve means inside the tooth or above the strip.
        if (tooth->side == ToothSide::Bottom ? at.hi <= h.lo : at.lo >= h.hi) {
          hit = true;
          break;
        }
      }
      if (hit) break;
    }
    if (hit) return Containment::NotInside;

    if (cell.depth >= limits.max_depth || cell.t.width() <= limits.min_width) {
      unknown = true;
      continue;
    }
    const double m = cell.t.mid();
    stack.push_back({{cell.t.lo, m}, cell.depth + 1});
    stack.push_back({{m, cell.t.hi}, cell.depth + 1});
  }

  return unknown ? Containment::Unknown : Containment::Inside;
}

// CaseI: the base omits a half plane direction (finite strip), so the tube
// has a nontrivial envelope.  CaseII only arises for unbounded strip data,
// which validation rejects.
[[nodiscard]] inline EnvelopeCase classify_envelope(const DomainSpec& d) {
  if (std::isfinite(d.y_lo) && std::isfinite(d.y_hi)) return EnvelopeCase::CaseI;
  return EnvelopeCase::CaseII;
}

namespace detail {

// Adaptive interval proof that a tooth's closed region misses the graph of
// sin(x1) + mid.  Returns an error message on failure, nullopt on success.
[[nodiscard]] inline std::optional<std::string> tooth_sine_conflict(const DomainSpec& d,
                                                                    const SmoothTooth& tooth) {
  struct Cell {
    Interval t;
    int depth;
  };
  std::vector<Cell> stack{{tooth.foot(), 0}};
  while (!stack.empty()) {
    const Cell cell = stack.back();
    stack.pop_back();
    const Interval sine = sin(cell.t) + Interval(d.mid);
    const Interval h = tooth_curve_enclosure(d, tooth, cell.t);
    // Disjoint iff the sine graph stays strictly on the open side of the
    // tooth curve (it cannot dodge below y_lo / above y_hi inside a valid
    // strip of height > 2).
    const bool clear = tooth.side == ToothSide::Bottom ? sine.lo > h.hi : sine.hi < h.lo;
    if (clear) continue;

    const double t_star = cell.t.mid();
    const Interval sine_pt = sin(Interval(t_star)) + Interval(d.mid);
    const Interval h_pt = tooth_curve_enclosure(d, tooth, Interval(t_star));
    const bool crossed = tooth.side == ToothSide::Bottom
                             ? sine_pt.hi <= h_pt.lo && sine_pt.lo >= d.y_lo
                             : sine_pt.lo >= h_pt.hi && sine_pt.hi <= d.y_hi;
    if (crossed) {
      return "tooth at apex_x " + std::to_string(tooth.apex_x) +
             " meets the graph of sin(x1) + mid near x1 = " + std::to_string(t_star);
    }
    if (cell.depth >= 48 || cell.t.width() <= 1e-12) {
      return "could not verify tooth at apex_x " + std::to_string(tooth.apex_x) +
             " is disjoint from the graph of sin(x1) + mid";
    }
    const double m = cell.t.mid();
    stack.push_back({{cell.t.lo, m}, cell.depth + 1});
    stack.push_back({{m, cell.t.hi}, cell.depth + 1});
  }
  return std::nullopt;
}

}  // namespace detail

// Structural and geometric validation.  Connectivity is decided by flood
// fill over a grid of closed boxes classified with box_containment: adjacent
// Inside boxes overlap on an edge inside D, so one free component certifies
// a connected D at the given resolution.  Components of D thinner than the
// resolution everywhere are invisible to the check; that is the documented
// price of the grid.
inline void validate_domain(const DomainSpec& d, double resolution = 1e-2) {
  if (!(std::isfinite(d.y_lo) && std::isfinite(d.y_hi) && std::isfinite(d.mid))) {
    throw SpecError("strip", "bounds must be finite");
  }
  if (!(d.y_lo < d.mid && d.mid < d.y_hi)) {
    throw SpecError("strip.mid", "mid line must lie strictly inside the strip");
  }
  if (!(resolution > 0.0)) throw SpecError("resolution", "must be positive");

  for (std::size_t i = 0; i < d.obstacles.size(); ++i) {
    const std::string tag = "obstacles[" + std::to_string(i) + "]";
    if (const auto* slit = std::get_if<VerticalSlit>(&d.obstacles[i])) {
      if (!std::isfinite(slit->x)) throw SpecError(tag + ".x", "must be finite");
      if (!(slit->span.lo < slit->span.hi)) {
        throw SpecError(tag + ".span", "must have positive length");
      }
      if (slit->span.lo < d.y_lo || slit->span.hi > d.y_hi) {
        throw SpecError(tag + ".span", "must lie within the closed strip");
      }
    } else {
      const auto& tooth = std::get<SmoothTooth>(d.obstacles[i]);
      if (!std::isfinite(tooth.apex_x)) throw SpecError(tag + ".apex_x", "must be finite");
      if (!(tooth.half_width > 0.0)) {
        throw SpecError(tag + ".half_width", "must be positive (degenerate foot)");
      }
      if (auto conflict = detail::tooth_sine_conflict(d, tooth)) {
        throw SpecError(tag, *conflict);
      }
    }
  }

  // Flood fill.
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
  x_min -= 1.0;
  x_max += 1.0;

  const auto nx = static_cast<std::size_t>(std::ceil((x_max - x_min) / resolution));
  const auto ny = static_cast<std::size_t>(std::ceil((d.y_hi - d.y_lo) / resolution));
  if (nx == 0 || ny == 0) throw SpecError("resolution", "grid degenerate for this spec");

  std::vector<char> free_cell(nx * ny, 0);
  for (std::size_t i = 0; i < nx; ++i) {
    const double cx0 = x_min + static_cast<double>(i) * resolution;
    for (std::size_t j = 0; j < ny; ++j) {
      const double cy0 = d.y_lo + static_cast<double>(j) * resolution;
      const Box cell{{cx0, cx0 + resolution}, {cy0, cy0 + resolution}};
      if (box_containment(d, cell) == Containment::Inside) free_cell[i * ny + j] = 1;
    }
  }

  std::size_t first_free = nx * ny;
  for (std::size_t c = 0; c < nx * ny; ++c) {
    if (free_cell[c]) {
      first_free = c;
      break;
    }
  }
  if (first_free == nx * ny) {
    throw SpecError("domain", "no interior cell at the validation resolution");
  }
  std::vector<std::size_t> work{first_free};
  std::vector<char> seen(nx * ny, 0);
  seen[first_free] = 1;
  std::size_t reached = 0;
  while (!work.empty()) {
    const std::size_t c = work.back();
    work.pop_back();
    ++reached;
    const std::size_t i = c / ny;
    const std::size_t j = c % ny;
    const std::size_t neighbors[4] = {
        i > 0 ? c - ny : c, i + 1 < nx ? c + ny : c, j > 0 ? c - 1 : c, j + 1 < ny ? c + 1 : c};
    for (std::size_t nb : neighbors) {
      if (nb != c && free_cell[nb] && !seen[nb]) {
        seen[nb] = 1;
        work.push_back(nb);
      }
    }
  }
  std::size_t total_free = 0;
  for (char f : free_cell) total_free += static_cast<std::size_t>(f);
  if (reached != total_free) {
    throw SpecError("domain", "not connected at the validation resolution");
  }
}

// Slit abscissae used by the built-in figures.  All containment decisions
// compare against these exact doubles.
namespace figure_constants {
inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr double kThreeHalfPi = 3.0 * (std::numbers::pi / 2.0);
}  // namespace figure_constants

// Strip 0 < x2 < 4 with four slits alternating between the bottom and top
// halves at -3pi/2, -pi/2, pi/2, 3pi/2.
[[nodiscard]] inline DomainSpec build_figure1() {
  namespace fc = figure_constants;
  DomainSpec d;
  d.y_lo = 0.0;
  d.y_hi = 4.0;
  d.mid = 2.0;
  d.obstacles = {
      VerticalSlit{-fc::kThreeHalfPi, {0.0, 2.0}},
      VerticalSlit{-fc::kHalfPi, {2.0, 4.0}},
      VerticalSlit{fc::kHalfPi, {0.0, 2.0}},
      VerticalSlit{fc::kThreeHalfPi, {2.0, 4.0}},
  };
  validate_domain(d);
  return d;
}

// The same strip with the four slits replaced by smooth teeth anchored on
// the corresponding strip boundary, apexes touching the mid line.  The
// apexes sit at -(3pi/2 + apex_offset), -(pi/2 + apex_offset),
// pi/2 + apex_offset, 3pi/2 + apex_offset.  Rejects parameters that push a
// tooth across the center line x1 = 0 or into the graph of sin(x1) + mid.
[[nodiscard]] inline DomainSpec build_figure2(double half_width = 1.2, double apex_offset = 0.0) {
  namespace fc = figure_constants;
  if (!(half_width > 0.0)) throw SpecError("half_width", "must be positive");
  if (!std::isfinite(apex_offset) || apex_offset < 0.0) {
    throw SpecError("apex_offset", "must be finite and non-negative");
  }
  DomainSpec d;
  d.y_lo = 0.0;
  d.y_hi = 4.0;
  d.mid = 2.0;
  const double inner = fc::kHalfPi + apex_offset;
  const double outer = fc::kThreeHalfPi + apex_offset;
  d.obstacles = {
      SmoothTooth{ToothSide::Bottom, -outer, half_width},
      SmoothTooth{ToothSide::Top, -inner, half_width},
      SmoothTooth{ToothSide::Bottom, inner, half_width},
      SmoothTooth{ToothSide::Top, outer, half_width},
  };
  // Half-plane placement: the two left teeth stay in x1 <= 0, the two right
  // teeth in x1 >= 0.
  if (-inner + half_width > 0.0) {
    throw SpecError("half_width", "left teeth must stay in the half plane x1 <= 0");
  }
  validate_domain(d);
  return d;
}

// Obstacle-free strip 0 < x2 < 4.
[[nodiscard]] inline DomainSpec build_strip() {
  DomainSpec d;
  d.y_lo = 0.0;
  d.y_hi = 4.0;
  d.mid = 2.0;
  validate_domain(d);
  return d;
}

}  // namespace tubelab
