// SPDX-License-Identifier: Apache-2.0
//
// Orchestration: one call runs the three property checkers, the
// non-hyperbolicity obstruction scan, and a set of two-sided metric
// samples, and bundles everything into a single report ready for
// certification.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tubelab/geometry.hpp"
#include "tubelab/kobayashi.hpp"
#include "tubelab/predicates.hpp"
#include "tubelab/witness_maps.hpp"

namespace tubelab {

struct RunConfig {
  int max_k{20};
  ScanConfig scan{};
  SearchLimits search{};
  GeometryLimits geometry{};
  // Metric sample requests (point, direction); defaults are filled at the
  // base point when empty.
  std::vector<std::pair<Point2, CVec2>> samples;
};

// Descriptor of the disc that achieved the certified upper bound, kept so
// the certificate can be re-verified without re-running the search.
struct DiscDescriptor {
  std::string type;  // "affine" | "witness"
  int n{0};          // witness index (type == "witness")
  double radius{0.0};
};

struct MetricSample {
  Point2 point;
  CVec2 direction;
  MetricBracket bracket;
  std::optional<DiscDescriptor> upper_disc;
};

[[nodiscard]] inline MetricSample sample_metric(const DomainSpec& d, const Point2& p,
                                                const CVec2& v, int max_witness_index) {
  MetricSample out;
  out.point = p;
  out.direction = v;
  out.bracket.lower = tube_lower_bound(d, p, v);
  out.bracket.upper = std::numeric_limits<double>::infinity();

  const double r = certified_affine_radius(d, p, v);
  if (r > 0.0) {
    if (auto u = upper_bound_from_disc(d, AffineDisc{p, v, r}, p, v)) {
      out.bracket.upper = *u;
      out.upper_disc = DiscDescriptor{"affine", 0, r};
    }
  }
  for (int n = 1; n <= max_witness_index; ++n) {
    const auto u = upper_bound_from_disc(d, WitnessDisc{n, 1.0}, p, v);
    if (!u) break;  // Direction mismatch or uncontained image; stop the family.
    if (*u < out.bracket.upper) {
      out.bracket.upper = *u;
      out.upper_disc = DiscDescriptor{"witness", n, 1.0};
    }
  }
  out.bracket.consistent = !(out.bracket.upper < out.bracket.lower * (1.0 - 1e-9));
  return out;
}

struct HyperbolicityReport {
  DomainSpec domain;
  RunConfig config;
  ConstantPropertyReport constant;
  AffinePropertyReport affine;
  AnalyticPropertyReport analytic;
  ObstructionScan obstruction;
  std::vector<MetricSample> samples;
  ImplicationCheck implications;

  [[nodiscard]] bool budget_exhausted() const {
    for (const AffineEvidence& ev : affine.levels) {
      if (ev.budget_exhausted) return true;
    }
    return false;
  }
};

[[nodiscard]] inline HyperbolicityReport run_analysis(const DomainSpec& d,
                                                      const RunConfig& config = {}) {
  HyperbolicityReport report;
  report.domain = d;
  report.config = config;
  report.constant = check_constant_property(d, config.max_k);
  report.affine = check_affine_property(d, config.max_k, config.search, config.geometry);
  report.analytic = check_analytic_property(d, config.max_k, config.geometry);
  report.obstruction = obstruction_scan(d, config.scan, config.geometry);
  report.implications = check_implications(report.constant, report.affine);

  std::vector<std::pair<Point2, CVec2>> samples = config.samples;
  if (samples.empty()) {
    const Point2 base{0.0, d.mid};
    samples.push_back({base, CVec2{{1.0, 0.0}, {0.0, 0.0}}});
    samples.push_back({base, CVec2{{0.0, 0.0}, {1.0, 0.0}}});
    samples.push_back({base, CVec2{{1.0, 0.0}, {sech(1), 0.0}}});
  }
  for (const auto& [p, v] : samples) {
    report.samples.push_back(sample_metric(d, p, v, config.scan.max_index));
  }
  return report;
}

}  // namespace tubelab
