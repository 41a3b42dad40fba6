// SPDX-License-Identifier: Apache-2.0
//
// Guided tour of the library on the slit-strip domain: decide the three
// witness-family properties at a few levels, run the containment scan, and
// bracket the infinitesimal metric at the base point.

#include <iostream>

#include "tubelab/geometry.hpp"
#include "tubelab/kobayashi.hpp"
#include "tubelab/predicates.hpp"
#include "tubelab/witness_maps.hpp"

int main() {
  using namespace tubelab;

  const DomainSpec d = build_figure1();
  std::cout << "slit strip: 0 < x2 < " << d.y_hi << ", " << d.obstacles.size()
            << " obstacles, mid line x2 = " << d.mid << "\n\n";

  std::cout << "constant-height family (flat lines within 1/k of the mid line):\n";
  for (int k : {1, 2}) {
    const ConstantEvidence ev = check_constant_level(d, k);
    std::cout << "  k=" << k << ": "
              << (ev.outcome == KOutcome::Witness   ? "witness"
                  : ev.outcome == KOutcome::Refuted ? "refuted"
                                                    : "unknown");
    if (ev.witness_b) std::cout << " at height " << *ev.witness_b;
    std::cout << "\n";
  }

  std::cout << "\naffine family (sloped lines, deviation and slope within 1/k):\n";
  for (int k : {4, 5}) {
    const AffineEvidence ev = check_affine_level(d, k);
    std::cout << "  k=" << k << ": "
              << (ev.outcome == KOutcome::Witness   ? "witness"
                  : ev.outcome == KOutcome::Refuted ? "refuted"
                                                    : "unknown");
    if (ev.witness) {
      std::cout << " with slope " << ev.witness->slope << ", offset " << ev.witness->offset;
    } else {
      std::cout << " (" << ev.nodes_visited << " nodes)";
    }
    std::cout << "\n";
  }

  std::cout << "\nanalytic family (scaled sine graphs):\n";
  const AnalyticEvidence ev = check_analytic_level(d, 20);
  std::cout << "  k=20: "
            << (ev.outcome == KOutcome::Witness ? "witness sin(t)/20 + 2" : "no witness")
            << "\n";

  std::cout << "\ncontainment scan of the harmonic family f_n:\n";
  ScanConfig scan;
  scan.max_index = 8;
  const ObstructionScan result = obstruction_scan(d, scan);
  for (const ObstructionRow& row : result.rows) {
    std::cout << "  n=" << row.n << ": "
              << (row.status == ImageStatus::Contained ? "contained" : "escaped")
              << ", |df_n(0)| = " << row.origin_norm << "\n";
  }

  const Point2 base{0.0, d.mid};
  const CVec2 v{{1.0, 0.0}, {0.0, 0.0}};
  const MetricBracket bracket = metric_bracket(d, base, v);
  std::cout << "\nmetric at the base point, direction (1, 0):\n"
            << "  " << bracket.lower << " <= kappa <= " << bracket.upper << "\n";
  return 0;
}
