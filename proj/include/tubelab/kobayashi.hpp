// SPDX-License-Identifier: Apache-2.0
//
// Two-sided bounds for the Kobayashi infinitesimal metric of a tube domain
// T = D + i R^2 in C^2, normalized so the metric of the unit disc at the
// origin is |v|.
//
//   Lower bounds: the projection (z1, z2) -> z2 maps T holomorphically onto
//   the vertical strip y_lo < Re z2 < y_hi, so the tube metric dominates the
//   strip metric of the second tangent component.
//
//   Upper bounds: every holomorphic disc phi : unit disc -> T with
//   phi(0) = p and phi'(0) = lambda v (lambda > 0) certifies
//   kappa(p; v) <= 1 / lambda.  Two disc families are supported: affine
//   discs with a rectangle containment certificate, and the scaled witness
//   discs g_n whose containment is certified by the band sweep.
//
// The obstruction scan stacks the witness discs: if the image stays inside
// the domain while the derivative norm at the origin grows without bound,
// the metric collapses in the corresponding directions, which is the
// quantitative witness against hyperbolicity.

#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "tubelab/geometry.hpp"
#include "tubelab/witness_maps.hpp"

namespace tubelab {

struct CVec2 {
  std::complex<double> v1{0.0, 0.0};
  std::complex<double> v2{0.0, 0.0};

  [[nodiscard]] double norm() const {
    return std::sqrt(std::norm(v1) + std::norm(v2));
  }
};

// Poincare (= Kobayashi) metric of the unit disc: |v| / (1 - |z|^2).
[[nodiscard]] inline double disc_metric(const std::complex<double>& z,
                                        const std::complex<double>& v) {
  const double r2 = std::norm(z);
  if (!(r2 < 1.0)) throw std::invalid_argument("disc_metric: point must lie in the open disc");
  return std::abs(v) / (1.0 - r2);
}

namespace detail {

// Independent evaluation through the conformal map to the upper half plane:
// zeta = exp(i pi (w - y_lo) / h) sends the strip y_lo < Re w < y_hi onto
// the upper half plane, where the metric is |v| / (2 Im zeta).
[[nodiscard]] inline double strip_metric_via_half_plane(const std::complex<double>& w,
                                                        const std::complex<double>& v,
                                                        double y_lo, double y_hi) {
  const double h = y_hi - y_lo;
  const std::complex<double> i_pi_over_h{0.0, std::numbers::pi / h};
  const std::complex<double> zeta = std::exp(i_pi_over_h * (w - y_lo));
  const std::complex<double> dzeta = i_pi_over_h * zeta * v;
  return std::abs(dzeta) / (2.0 * zeta.imag());
}

}  // namespace detail

// Kobayashi metric of the vertical strip y_lo < Re w < y_hi:
//   pi |v| / (2 h sin(pi (Re w - y_lo) / h)),  h = y_hi - y_lo.
// The closed form is cross-checked once per process against the half-plane
// pullback at interior sample points.
[[nodiscard]] inline double strip_metric(const std::complex<double>& w,
                                         const std::complex<double>& v, double y_lo,
                                         double y_hi) {
  if (!(y_lo < y_hi) || !std::isfinite(y_lo) || !std::isfinite(y_hi)) {
    throw std::invalid_argument("strip_metric: invalid strip bounds");
  }
  const double h = y_hi - y_lo;
  const double u = w.real() - y_lo;
  if (!(0.0 < u && u < h)) {
    throw std::invalid_argument("strip_metric: point must lie inside the strip");
  }

  static const bool validated = [] {
    for (double frac : {0.13, 0.5, 0.81}) {
      for (double im : {0.0, -2.7, 11.0}) {
        const std::complex<double> w0{frac * 3.0 - 1.0, im};
        const std::complex<double> v0{0.4, -1.1};
        const double closed =
            std::numbers::pi * std::abs(v0) / (2.0 * 3.0 * std::sin(std::numbers::pi * frac));
        const double pulled = detail::strip_metric_via_half_plane(w0, v0, -1.0, 2.0);
        if (std::fabs(closed - pulled) > 1e-9 * closed) {
          throw std::logic_error("strip_metric: closed form disagrees with pullback");
        }
      }
    }
    return true;
  }();
  (void)validated;

  return std::numbers::pi * std::abs(v) / (2.0 * h * std::sin(std::numbers::pi * u / h));
}

// Lower bound for the tube metric at a real base point a in D along v,
// via the second-coordinate strip projection.
[[nodiscard]] inline double tube_lower_bound(const DomainSpec& d, const Point2& a,
                                             const CVec2& v) {
  if (!contains(d, a)) {
    throw std::invalid_argument("tube_lower_bound: base point must lie in the domain");
  }
  return strip_metric(std::complex<double>{a.x2, 0.0}, v.v2, d.y_lo, d.y_hi);
}

// phi(zeta) = center + radius * zeta * direction.
struct AffineDisc {
  Point2 center;
  CVec2 direction;
  double radius{0.0};
};

// phi(zeta) = g_n(radius * zeta), based at (0, mid).
struct WitnessDisc {
  int n{1};
  double radius{1.0};
};

using HolomorphicDisc = std::variant<AffineDisc, WitnessDisc>;

inline constexpr double kDiscMatchTolerance = 1e-10;

// Upper bound kappa(p; v) <= 1 / lambda from a disc with phi(0) = p and
// phi'(0) = lambda v.  Returns nullopt when the disc does not match (p, v)
// to kDiscMatchTolerance, lambda is not positive, or containment cannot be
// certified.
[[nodiscard]] inline std::optional<double> upper_bound_from_disc(const DomainSpec& d,
                                                                 const HolomorphicDisc& disc,
                                                                 const Point2& p,
                                                                 const CVec2& v) {
  const double vnorm = v.norm();
  if (!(vnorm > 0.0)) return std::nullopt;

  CVec2 derivative;  // phi'(0)
  if (const auto* aff = std::get_if<AffineDisc>(&disc)) {
    if (!(aff->radius > 0.0)) return std::nullopt;
    if (std::fabs(aff->center.x1 - p.x1) > kDiscMatchTolerance ||
        std::fabs(aff->center.x2 - p.x2) > kDiscMatchTolerance) {
      return std::nullopt;
    }
    derivative = {aff->radius * aff->direction.v1, aff->radius * aff->direction.v2};
  } else {
    const auto& wit = std::get<WitnessDisc>(disc);
    if (!(wit.radius > 0.0) || wit.radius > 1.0) return std::nullopt;
    if (std::fabs(p.x1) > kDiscMatchTolerance || std::fabs(p.x2 - d.mid) > kDiscMatchTolerance) {
      return std::nullopt;
    }
    const double nn = static_cast<double>(wit.n);
    derivative = {{wit.radius * nn, 0.0}, {wit.radius * nn * sech(wit.n), 0.0}};
  }

  // lambda = best positive real scalar with derivative ~= lambda v.
  const double lambda =
      (derivative.v1.real() * v.v1.real() + derivative.v1.imag() * v.v1.imag() +
       derivative.v2.real() * v.v2.real() + derivative.v2.imag() * v.v2.imag()) /
      (vnorm * vnorm);
  if (!(lambda > 0.0)) return std::nullopt;
  const CVec2 mismatch{derivative.v1 - lambda * v.v1, derivative.v2 - lambda * v.v2};
  if (mismatch.norm() > kDiscMatchTolerance * (1.0 + derivative.norm())) return std::nullopt;

  // Containment certificate.
  if (const auto* aff = std::get_if<AffineDisc>(&disc)) {
    const double r1 = aff->radius * std::abs(aff->direction.v1);
    const double r2 = aff->radius * std::abs(aff->direction.v2);
    const Box enclosure{{aff->center.x1 - r1, aff->center.x1 + r1},
                        {aff->center.x2 - r2, aff->center.x2 + r2}};
    if (box_containment(d, enclosure) != Containment::Inside) return std::nullopt;
  } else {
    const auto& wit = std::get<WitnessDisc>(disc);
    if (verify_containment(d, wit.n).status != ImageStatus::Contained) return std::nullopt;
  }

  return 1.0 / lambda;
}

// Largest affine-disc radius around p along v certified by rectangle
// containment, found by bisection; 0 if even tiny discs fail.
[[nodiscard]] inline double certified_affine_radius(const DomainSpec& d, const Point2& p,
                                                    const CVec2& v, double r_max = 16.0) {
  const double a1 = std::abs(v.v1);
  const double a2 = std::abs(v.v2);
  const auto fits = [&](double r) {
    const Box enclosure{{p.x1 - r * a1, p.x1 + r * a1}, {p.x2 - r * a2, p.x2 + r * a2}};
    return box_containment(d, enclosure) == Containment::Inside;
  };
  double lo = 0.0;
  double hi = r_max;
  if (!fits(r_max * 1e-9)) return 0.0;
  if (fits(hi)) return hi;
  lo = r_max * 1e-9;
  for (int iter = 0; iter < 60; ++iter) {
    const double m = 0.5 * (lo + hi);
    (fits(m) ? lo : hi) = m;
  }
  return lo;
}

struct MetricBracket {
  double lower{0.0};
  double upper{std::numeric_limits<double>::infinity()};
  bool consistent{true};  // lower <= upper within tolerance
};

// Two-sided bracket for kappa(p; v): strip projection below, best certified
// disc above.  The witness-disc family is consulted when (p, v) matches the
// base point and a witness direction.
[[nodiscard]] inline MetricBracket metric_bracket(const DomainSpec& d, const Point2& p,
                                                  const CVec2& v, int max_witness_index = 50) {
  MetricBracket out;
  out.lower = tube_lower_bound(d, p, v);

  const double r = certified_affine_radius(d, p, v);
  if (r > 0.0) {
    const AffineDisc disc{p, v, r};
    if (auto u = upper_bound_from_disc(d, disc, p, v)) out.upper = std::min(out.upper, *u);
  }
  for (int n = 1; n <= max_witness_index; ++n) {
    const WitnessDisc disc{n, 1.0};
    if (auto u = upper_bound_from_disc(d, disc, p, v)) {
      out.upper = std::min(out.upper, *u);
    } else {
      break;  // Mismatched direction or uncontained image; larger n will not match either.
    }
  }

  out.consistent = !(out.upper < out.lower * (1.0 - 1e-9));
  return out;
}

enum class ObstructionVerdict { NonHyperbolicityWitness, NotEstablished };

struct ObstructionRow {
  int n{0};
  ImageStatus status{ImageStatus::Undecided};
  double origin_norm{0.0};       // |d f_n(0)|
  double upper_bound{0.0};       // 1 / |d f_n(0)|, valid when status == Contained
  std::optional<Point2> escape;  // present when status == NotContained
};

struct ObstructionScan {
  Point2 base;
  std::vector<ObstructionRow> rows;
  ObstructionVerdict verdict{ObstructionVerdict::NotEstablished};
};

struct ScanConfig {
  int max_index{50};
  double growth_factor{10.0};
};

// Runs the witness-disc family n = 1..max_index at the base point (0, mid).
// The non-hyperbolicity witness requires every image certified inside the
// domain while the origin derivative norms grow strictly and by at least
// growth_factor overall: the certified upper bounds then collapse to zero
// rate, which no hyperbolic domain admits.
[[nodiscard]] inline ObstructionScan obstruction_scan(const DomainSpec& d,
                                                      const ScanConfig& config = {},
                                                      const GeometryLimits& limits = {}) {
  if (config.max_index < 1 || config.max_index > kMaxWitnessIndex) {
    throw std::invalid_argument("obstruction_scan: max_index out of range");
  }
  ObstructionScan scan;
  scan.base = {0.0, d.mid};
  bool all_contained = true;
  bool strictly_increasing = true;
  for (int n = 1; n <= config.max_index; ++n) {
    const ContainmentResult c = verify_containment(d, n, limits);
    ObstructionRow row;
    row.n = n;
    row.status = c.status;
    row.origin_norm = origin_operator_norm(n);
    row.upper_bound = 1.0 / row.origin_norm;
    row.escape = c.escape_point;
    if (c.status != ImageStatus::Contained) all_contained = false;
    if (!scan.rows.empty() && !(row.origin_norm > scan.rows.back().origin_norm)) {
      strictly_increasing = false;
    }
    scan.rows.push_back(row);
  }
  const bool grew = scan.rows.size() >= 2 &&
                    scan.rows.back().origin_norm >=
                        config.growth_factor * scan.rows.front().origin_norm;
  scan.verdict = all_contained && strictly_increasing && grew
                     ? ObstructionVerdict::NonHyperbolicityWitness
                     : ObstructionVerdict::NotEstablished;
  return scan;
}

}  // namespace tubelab
