// SPDX-License-Identifier: Apache-2.0
//
// Decision procedures for the three witness-family properties of a planar
// base domain D with distinguished height mid:
//
//   constant  -- for each k: is there b with |b - mid| <= 1/k whose
//                horizontal segment [-k, k] x {b} lies in D?
//   affine    -- for each k: is there a line t -> c t + d with
//                sup_{|t|<=k} |c t + d - mid| <= 1/k (equivalently
//                k |c| + |d - mid| <= 1/k) whose graph over [-k, k] lies
//                in D?
//   analytic  -- for each k: does the canonical oscillating witness
//                t -> sin(t)/k + mid verify (deviation <= 1/k and graph
//                over [-k, k] inside D)?
//
// Constant witnesses are special affine witnesses, so the affine checker
// first lifts any constant witness; the per-level implication
// "constant witness => affine witness" therefore holds structurally, and
// contrapositively an affine refutation is only reported when the constant
// level is refuted too.
//
// Every positive answer carries a witness that is re-verified through the
// public geometry queries; every negative answer carries a machine-checkable
// refutation: a cover of the admissible heights by blocked intervals
// (constant) or a partition of the admissible (c, d) box into cells, each
// refuted by one recorded reason (affine).  Undecidable-within-budget levels
// are reported Unknown, never guessed.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tubelab/curves.hpp"
#include "tubelab/geometry.hpp"
#include "tubelab/interval.hpp"

namespace tubelab {

enum class KOutcome { Witness, Refuted, Unknown };

enum class PropertyVerdict { HoldsUpToK, FailsUpToK, Inconclusive };

// ---------------------------------------------------------------------------
// Constant property
// ---------------------------------------------------------------------------

// One blocked interval of heights, with the obstacle that blocks it
// (-1 encodes the deviation constraint |b - mid| <= 1/k).
struct BlockedInterval {
  Interval range;
  int obstacle_index{-1};
};

struct ConstantEvidence {
  int k{0};
  KOutcome outcome{KOutcome::Unknown};
  std::optional<double> witness_b;
  std::vector<BlockedInterval> cover;  // covers the admissible heights when Refuted
};

// Blocked height intervals at level k: for every b in such an interval the
// segment [-k, k] x {b} provably leaves D (or violates the deviation bound).
// Soundness over sharpness: tooth intervals are shrunk by outward rounding.
[[nodiscard]] inline std::vector<BlockedInterval> blocked_heights(const DomainSpec& d, int k) {
  std::vector<BlockedInterval> out;
  for (std::size_t i = 0; i < d.obstacles.size(); ++i) {
    if (const auto* slit = std::get_if<VerticalSlit>(&d.obstacles[i])) {
      if (-static_cast<double>(k) <= slit->x && slit->x <= static_cast<double>(k)) {
        out.push_back({slit->span, static_cast<int>(i)});
      }
    } else {
      const auto& tooth = std::get<SmoothTooth>(d.obstacles[i]);
      const auto overlap =
          intersection(Interval{-static_cast<double>(k), static_cast<double>(k)}, tooth.foot());
      if (!overlap) continue;
      const double x_star = std::clamp(tooth.apex_x, overlap->lo, overlap->hi);
      const Interval h = tooth_curve_enclosure(d, tooth, Interval(x_star));
      // Any b at or below h(x_star) hits the bottom tooth (or leaves the
      // strip); symmetrically above for a top tooth.
      if (tooth.side == ToothSide::Bottom) {
        out.push_back({{d.y_lo, h.lo}, static_cast<int>(i)});
      } else {
        out.push_back({{h.hi, d.y_hi}, static_cast<int>(i)});
      }
    }
  }
  return out;
}

// Walks a sorted cover; returns true when [lo, hi] is fully covered.
[[nodiscard]] inline bool intervals_cover(std::vector<Interval> pieces, double lo, double hi) {
  std::sort(pieces.begin(), pieces.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  double frontier = lo;
  for (const Interval& p : pieces) {
    if (p.lo > frontier) return false;
    frontier = std::max(frontier, p.hi);
    if (frontier >= hi) return true;
  }
  return frontier >= hi;
}

// Independent verification of a constant witness at level k.
[[nodiscard]] inline bool verify_constant_witness(const DomainSpec& d, int k, double b) {
  const Interval deviation = abs(Interval(b) - Interval(d.mid)) * Interval(static_cast<double>(k));
  if (!(deviation.hi <= 1.0)) return false;
  return horizontal_segment_in(d, b, static_cast<double>(k));
}

[[nodiscard]] inline ConstantEvidence check_constant_level(const DomainSpec& d, int k) {
  ConstantEvidence ev;
  ev.k = k;
  const Interval radius = rational(1, k);
  // Admissible heights: the deviation band intersected with the strip.
  const double lo = std::max(d.y_lo, (Interval(d.mid) - radius).lo);
  const double hi = std::min(d.y_hi, (Interval(d.mid) + radius).hi);

  const std::vector<BlockedInterval> blocked = blocked_heights(d, k);
  std::vector<Interval> pieces;
  pieces.reserve(blocked.size());
  for (const BlockedInterval& b : blocked) pieces.push_back(b.range);

  if (intervals_cover(pieces, lo, hi)) {
    ev.outcome = KOutcome::Refuted;
    ev.cover = blocked;
    return ev;
  }

  // Find the first gap of the sorted cover inside [lo, hi] and try its
  // midpoint.
  std::sort(pieces.begin(), pieces.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  double frontier = lo;
  double gap_hi = hi;
  for (const Interval& p : pieces) {
    if (p.lo > frontier) {
      gap_hi = std::min(gap_hi, p.lo);
      break;
    }
    frontier = std::max(frontier, p.hi);
  }
  if (frontier < hi) {
    const double candidate = 0.5 * (frontier + std::min(gap_hi, hi));
    if (verify_constant_witness(d, k, candidate)) {
      ev.outcome = KOutcome::Witness;
      ev.witness_b = candidate;
      return ev;
    }
  }
  ev.outcome = KOutcome::Unknown;
  return ev;
}

// ---------------------------------------------------------------------------
// Affine property
// ---------------------------------------------------------------------------

struct RefutedCell {
  Box cell;            // (c, d) = (slope, offset) box
  std::string reason;  // "deviation" | "slit:<i>" | "tooth:<i>"
};

struct AffineEvidence {
  int k{0};
  KOutcome outcome{KOutcome::Unknown};
  std::optional<AffineCurve> witness;
  std::vector<RefutedCell> cells;  // partition of the admissible box when Refuted
  std::size_t nodes_visited{0};
  bool budget_exhausted{false};
  double coverage{0.0};  // sum of refuted-cell areas / admissible box area
};

struct SearchLimits {
  int max_depth{30};
  double min_width{1e-9};
  std::size_t node_budget{100000};
};

// Independent verification of an affine witness at level k: the deviation
// bound k |c| + |d - mid| <= 1/k proved by outward rounding, and the graph
// over [-k, k] proved inside D.
[[nodiscard]] inline bool verify_affine_witness(const DomainSpec& d, int k,
                                                const AffineCurve& curve,
                                                const GeometryLimits& limits = {}) {
  const Interval dev = Interval(static_cast<double>(k)) * abs(Interval(curve.slope)) +
                       abs(Interval(curve.offset) - Interval(d.mid));
  if (!(dev.hi <= rational(1, k).lo)) return false;
  const double kk = static_cast<double>(k);
  return graph_in_domain(d, Curve{curve}, Interval{-kk, kk}, limits) == Containment::Inside;
}

namespace detail {

// Refutation test for one (c, d) cell: a single recorded reason showing
// every line in the cell fails at level k.  Exactness note: the seeded
// splits at c = 0 and d = mid make the products/sums below exact at cell
// corners, so closed-inequality tests against obstacles that end exactly on
// the mid line succeed without any rounding slack.
[[nodiscard]] inline std::optional<std::string> refute_affine_cell(const DomainSpec& d, int k,
                                                                   const Box& cell) {
  const Interval C = cell.x;
  const Interval D = cell.y;
  const Interval dev = Interval(static_cast<double>(k)) * abs(C) + abs(D - Interval(d.mid));
  if (dev.lo > rational(1, k).hi) return "deviation";

  const Interval window{-static_cast<double>(k), static_cast<double>(k)};
  for (std::size_t i = 0; i < d.obstacles.size(); ++i) {
    if (const auto* slit = std::get_if<VerticalSlit>(&d.obstacles[i])) {
      if (!window.contains(slit->x)) continue;
      const Interval A = C * Interval(slit->x) + D;
      const bool bottom_type = slit->span.lo <= d.y_lo;
      const bool top_type = slit->span.hi >= d.y_hi;
      if ((bottom_type && A.hi <= slit->span.hi) || (top_type && A.lo >= slit->span.lo) ||
          (A.lo >= slit->span.lo && A.hi <= slit->span.hi)) {
        return "slit:" + std::to_string(i);
      }
    } else {
      const auto& tooth = std::get<SmoothTooth>(d.obstacles[i]);
      const auto overlap = intersection(window, tooth.foot());
      if (!overlap) continue;
      const double x_star = std::clamp(tooth.apex_x, overlap->lo, overlap->hi);
      const Interval h = tooth_curve_enclosure(d, tooth, Interval(x_star));
      const Interval A = C * Interval(x_star) + D;
      if (tooth.side == ToothSide::Bottom ? A.hi <= h.lo : A.lo >= h.hi) {
        return "tooth:" + std::to_string(i);
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

[[nodiscard]] inline AffineEvidence check_affine_level(const DomainSpec& d, int k,
                                                       const SearchLimits& search = {},
                                                       const GeometryLimits& geometry = {}) {
  AffineEvidence ev;
  ev.k = k;

  // Structural lift: a constant witness is an affine witness with slope 0.
  const ConstantEvidence constant = check_constant_level(d, k);
  if (constant.outcome == KOutcome::Witness) {
    const AffineCurve lifted{0.0, *constant.witness_b};
    if (verify_affine_witness(d, k, lifted, geometry)) {
      ev.outcome = KOutcome::Witness;
      ev.witness = lifted;
      ev.nodes_visited = 1;
      return ev;
    }
  }

  // Admissible box: |c| <= 1/k^2, |d - mid| <= 1/k (outer hull of the
  // deviation diamond k|c| + |d - mid| <= 1/k).
  const double c_half = rational(1, k * k).hi;
  const double d_half = rational(1, k).hi;
  const Box root{{-c_half, c_half}, {d.mid - d_half, d.mid + d_half}};
  const double root_area = root.x.width() * root.y.width();

  struct Node {
    Box cell;
    int depth;
  };
  std::vector<Node> stack;
  double refuted_area = 0.0;
  bool any_unexplored = false;

  // The root is examined once, then split exactly at (c, d) = (0, mid) so
  // quadrant corners land on the exact values the refutation tests need.
  const auto handle = [&](const Node& node, auto&& push_children) -> bool {
    ++ev.nodes_visited;
    if (auto reason = detail::refute_affine_cell(d, k, node.cell)) {
      ev.cells.push_back({node.cell, *reason});
      refuted_area += node.cell.x.width() * node.cell.y.width();
      return false;
    }
    const AffineCurve candidate{node.cell.x.mid(), node.cell.y.mid()};
    if (verify_affine_witness(d, k, candidate, geometry)) {
      ev.outcome = KOutcome::Witness;
      ev.witness = candidate;
      return true;
    }
    push_children(node);
    return false;
  };

  const auto push_quadrants = [&](const Node& node) {
    const Box& b = node.cell;
    stack.push_back({{{b.x.lo, 0.0}, {b.y.lo, d.mid}}, node.depth + 1});
    stack.push_back({{{0.0, b.x.hi}, {b.y.lo, d.mid}}, node.depth + 1});
    stack.push_back({{{b.x.lo, 0.0}, {d.mid, b.y.hi}}, node.depth + 1});
    stack.push_back({{{0.0, b.x.hi}, {d.mid, b.y.hi}}, node.depth + 1});
  };
  const auto push_halves = [&](const Node& node) {
    if (node.depth >= search.max_depth ||
        std::max(node.cell.x.width(), node.cell.y.width()) <= search.min_width) {
      any_unexplored = true;
      return;
    }
    const Box& b = node.cell;
    if (b.x.width() >= b.y.width()) {
      const double m = b.x.mid();
      stack.push_back({{{b.x.lo, m}, b.y}, node.depth + 1});
      stack.push_back({{{m, b.x.hi}, b.y}, node.depth + 1});
    } else {
      const double m = b.y.mid();
      stack.push_back({{b.x, {b.y.lo, m}}, node.depth + 1});
      stack.push_back({{b.x, {m, b.y.hi}}, node.depth + 1});
    }
  };

  if (handle({root, 0}, push_quadrants)) return ev;
  while (!stack.empty()) {
    if (ev.nodes_visited >= search.node_budget) {
      ev.budget_exhausted = true;
      any_unexplored = true;
      break;
    }
    const Node node = stack.back();
    stack.pop_back();
    if (handle(node, push_halves)) return ev;
  }

  ev.coverage = root_area > 0.0 ? refuted_area / root_area : 0.0;
  if (!any_unexplored && stack.empty()) {
    ev.outcome = KOutcome::Refuted;
  } else {
    ev.outcome = KOutcome::Unknown;
  }
  return ev;
}

// ---------------------------------------------------------------------------
// Analytic property (canonical witness verification)
// ---------------------------------------------------------------------------

struct AnalyticEvidence {
  int k{0};
  KOutcome outcome{KOutcome::Unknown};  // Witness or Unknown; never Refuted
  ScaledSineCurve curve;
};

// Deviation check in exact integer arithmetic: the witness amplitude is the
// rational amp_num/amp_den, and sup |sin| <= 1 makes
// k * |amp_num| <= amp_den sufficient for sup |curve - mid| <= 1/k.
[[nodiscard]] inline bool verify_analytic_witness(const DomainSpec& d, int k,
                                                  const ScaledSineCurve& curve,
                                                  const GeometryLimits& limits = {}) {
  if (curve.offset != d.mid) return false;
  const std::int64_t abs_num = curve.amp_num < 0 ? -curve.amp_num : curve.amp_num;
  if (static_cast<std::int64_t>(k) * abs_num > curve.amp_den) return false;
  const double kk = static_cast<double>(k);
  return graph_in_domain(d, Curve{curve}, Interval{-kk, kk}, limits) == Containment::Inside;
}

[[nodiscard]] inline AnalyticEvidence check_analytic_level(const DomainSpec& d, int k,
                                                           const GeometryLimits& limits = {}) {
  AnalyticEvidence ev;
  ev.k = k;
  ev.curve = ScaledSineCurve{1, k, d.mid};
  ev.outcome = verify_analytic_witness(d, k, ev.curve, limits) ? KOutcome::Witness
                                                               : KOutcome::Unknown;
  return ev;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

template <typename Evidence>
struct PropertyReport {
  int max_k{0};
  std::vector<Evidence> levels;  // levels[i] is k = i + 1
  PropertyVerdict verdict{PropertyVerdict::Inconclusive};
  std::optional<int> first_refuted;
};

using ConstantPropertyReport = PropertyReport<ConstantEvidence>;
using AffinePropertyReport = PropertyReport<AffineEvidence>;
using AnalyticPropertyReport = PropertyReport<AnalyticEvidence>;

template <typename Evidence>
[[nodiscard]] PropertyVerdict summarize_levels(const std::vector<Evidence>& levels,
                                               std::optional<int>& first_refuted) {
  bool any_unknown = false;
  first_refuted.reset();
  for (const Evidence& ev : levels) {
    if (ev.outcome == KOutcome::Unknown) any_unknown = true;
    if (ev.outcome == KOutcome::Refuted && !first_refuted) first_refuted = ev.k;
  }
  if (any_unknown) return PropertyVerdict::Inconclusive;
  return first_refuted ? PropertyVerdict::FailsUpToK : PropertyVerdict::HoldsUpToK;
}

[[nodiscard]] inline ConstantPropertyReport check_constant_property(const DomainSpec& d,
                                                                    int max_k) {
  ConstantPropertyReport report;
  report.max_k = max_k;
  for (int k = 1; k <= max_k; ++k) report.levels.push_back(check_constant_level(d, k));
  report.verdict = summarize_levels(report.levels, report.first_refuted);
  return report;
}

[[nodiscard]] inline AffinePropertyReport check_affine_property(const DomainSpec& d, int max_k,
                                                                const SearchLimits& search = {},
                                                                const GeometryLimits& geometry = {}) {
  AffinePropertyReport report;
  report.max_k = max_k;
  for (int k = 1; k <= max_k; ++k) {
    report.levels.push_back(check_affine_level(d, k, search, geometry));
  }
  report.verdict = summarize_levels(report.levels, report.first_refuted);
  return report;
}

[[nodiscard]] inline AnalyticPropertyReport check_analytic_property(
    const DomainSpec& d, int max_k, const GeometryLimits& geometry = {}) {
  AnalyticPropertyReport report;
  report.max_k = max_k;
  for (int k = 1; k <= max_k; ++k) {
    report.levels.push_back(check_analytic_level(d, k, geometry));
  }
  report.verdict = summarize_levels(report.levels, report.first_refuted);
  return report;
}

// Per-level implication checks between the reports (witness-class inclusion
// constant subset-of affine): a constant witness forces an affine witness,
// and an affine refutation forces a constant refutation.
struct ImplicationCheck {
  bool constant_witness_lifts{true};
  bool affine_refutation_dominates{true};

  [[nodiscard]] bool all_hold() const {
    return constant_witness_lifts && affine_refutation_dominates;
  }
};

[[nodiscard]] inline ImplicationCheck check_implications(const ConstantPropertyReport& constant,
                                                         const AffinePropertyReport& affine) {
  ImplicationCheck out;
  const std::size_t n = std::min(constant.levels.size(), affine.levels.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (constant.levels[i].outcome == KOutcome::Witness &&
        affine.levels[i].outcome != KOutcome::Witness) {
      out.constant_witness_lifts = false;
    }
    if (affine.levels[i].outcome == KOutcome::Refuted &&
        constant.levels[i].outcome != KOutcome::Refuted) {
      out.affine_refutation_dominates = false;
    }
  }
  return out;
}

}  // namespace tubelab
