// SPDX-License-Identifier: Apache-2.0
//
// The scaled witness families
//
//   f_n(x, y) = (n x, sin(n x) cosh(n y) / cosh(n) + mid)        (harmonic)
//   g_n(z)    = (n z, sin(n z) / cosh(n) + mid)                  (holomorphic)
//
// on the unit square / disc, with Re g_n = f_n identically.  The second
// component oscillates inside the band mid + sin(x1) * [sech n, 1], which
// threads between bottom obstacles (where sin > 0 lifts the band above the
// mid line) and top obstacles (where sin < 0 pushes it below).  As n grows
// the derivative at the origin blows up while the image stays inside the
// domain, which is the quantitative non-hyperbolicity obstruction.
//
// All large-n quantities go through ratio helpers written against
// e^{-n}-style factors so nothing overflows up to the supported cap n = 1000.

#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>

#include "tubelab/geometry.hpp"
#include "tubelab/interval.hpp"

namespace tubelab {

inline constexpr int kMaxWitnessIndex = 1000;

namespace detail {

inline void check_witness_index(int n) {
  if (n < 1 || n > kMaxWitnessIndex) {
    throw std::invalid_argument("witness index n must be in [1, 1000]");
  }
}

}  // namespace detail

// sech(n) = 2 e^{-n} / (1 + e^{-2n}).
[[nodiscard]] inline double sech(int n) {
  detail::check_witness_index(n);
  const double e = std::exp(-static_cast<double>(n));
  return 2.0 * e / (1.0 + e * e);
}

[[nodiscard]] inline Interval sech_enclosure(int n) {
  detail::check_witness_index(n);
  const Interval e = exp(Interval(-static_cast<double>(n)));
  return (Interval(2.0) * e) / (Interval(1.0) + square(e));
}

// cosh(n y) / cosh(n) = e^{n(|y| - 1)} (1 + e^{-2n|y|}) / (1 + e^{-2n}),
// stable for |y| <= 1 where the result lies in [sech n, 1].
[[nodiscard]] inline double cosh_ratio(int n, double y) {
  detail::check_witness_index(n);
  const double a = std::fabs(y);
  const double nn = static_cast<double>(n);
  return std::exp(nn * (a - 1.0)) * (1.0 + std::exp(-2.0 * nn * a)) /
         (1.0 + std::exp(-2.0 * nn));
}

// sinh(n y) / cosh(n) = sign(y) e^{n(|y| - 1)} (1 - e^{-2n|y|}) / (1 + e^{-2n}).
[[nodiscard]] inline double sinh_ratio(int n, double y) {
  detail::check_witness_index(n);
  const double a = std::fabs(y);
  const double nn = static_cast<double>(n);
  const double mag = std::exp(nn * (a - 1.0)) * (1.0 - std::exp(-2.0 * nn * a)) /
                     (1.0 + std::exp(-2.0 * nn));
  return y < 0.0 ? -mag : mag;
}

// The harmonic family on the closed unit square Q = [-1, 1]^2.
[[nodiscard]] inline Point2 eval_f(const DomainSpec& d, int n, const Point2& q) {
  detail::check_witness_index(n);
  const double x1 = static_cast<double>(n) * q.x1;
  return {x1, std::sin(x1) * cosh_ratio(n, q.x2) + d.mid};
}

// The holomorphic family on the closed unit disc; Re eval_g = eval_f by the
// identity sin(n(x+iy)) = sin(nx) cosh(ny) + i cos(nx) sinh(ny).
[[nodiscard]] inline std::pair<std::complex<double>, std::complex<double>> eval_g(
    const DomainSpec& d, int n, const std::complex<double>& z) {
  detail::check_witness_index(n);
  const double nx = static_cast<double>(n) * z.real();
  const std::complex<double> first{nx, static_cast<double>(n) * z.imag()};
  const std::complex<double> scaled_sin{std::sin(nx) * cosh_ratio(n, z.imag()),
                                        std::cos(nx) * sinh_ratio(n, z.imag())};
  return {first, scaled_sin + std::complex<double>{d.mid, 0.0}};
}

struct Matrix2 {
  // Row-major: [[a, b], [c, d]].
  double a, b, c, d;
};

// Jacobian of f_n at q:
//   [ n                              0                          ]
//   [ n cos(n x) cosh(ny)/cosh(n)   n sin(n x) sinh(ny)/cosh(n) ]
[[nodiscard]] inline Matrix2 jacobian_f(const DomainSpec& /*d*/, int n, const Point2& q) {
  detail::check_witness_index(n);
  const double nn = static_cast<double>(n);
  const double x1 = nn * q.x1;
  return {nn, 0.0, nn * std::cos(x1) * cosh_ratio(n, q.x2),
          nn * std::sin(x1) * sinh_ratio(n, q.x2)};
}

// Spectral norm of a 2x2 matrix via the closed form
//   sigma_max^2 = (s1 + sqrt((a^2+b^2-c^2-d^2)^2 + 4 (ac+bd)^2)) / 2,
// s1 = a^2+b^2+c^2+d^2.
[[nodiscard]] inline double operator_norm(const Matrix2& m) {
  const double s1 = m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d;
  const double diff = m.a * m.a + m.b * m.b - m.c * m.c - m.d * m.d;
  const double cross = m.a * m.c + m.b * m.d;
  const double s2 = std::sqrt(diff * diff + 4.0 * cross * cross);
  return std::sqrt(std::max(0.0, (s1 + s2) / 2.0));
}

// |d f_n(0)| = n sqrt(1 + sech(n)^2): the Jacobian at the origin is
// [[n, 0], [n sech n, 0]].
[[nodiscard]] inline double origin_operator_norm(int n) {
  detail::check_witness_index(n);
  const double s = sech(n);
  return static_cast<double>(n) * std::sqrt(1.0 + s * s);
}

// Outward enclosure of the second-component band of f_n over the vertical
// fiber {x1} x [-1, 1] of Q:  mid + sin(x1) * [sech n, 1].
[[nodiscard]] inline Interval band_enclosure(const DomainSpec& d, int n, const Interval& x1) {
  detail::check_witness_index(n);
  const Interval ratio = hull(sech_enclosure(n), Interval(1.0));
  return Interval(d.mid) + sin(x1) * ratio;
}

enum class ImageStatus { Contained, NotContained, Undecided };

struct ContainmentResult {
  ImageStatus status{ImageStatus::Undecided};
  // For NotContained: a point of the image provably outside the domain.
  std::optional<Point2> escape_point;
  // Which obstacle (index into DomainSpec::obstacles) the escape point hits,
  // or -1 for a strip violation.
  int obstacle_index{-1};
};

// Decides f_n(Q) subset-of D (equivalently Re g_n(disc) subset-of D).  The
// image is the union of fibers {x1} x band(x1) over x1 in [-n, n], so strip
// and tooth clearance reduce to a thick-graph sweep and each slit to a
// single exact fiber check at its abscissa.
//
// Clearance against obstacles that reach exactly to the mid line is decided
// in offset coordinates (band = mid + offset): for large n the margin
// sech(n) is far below one ulp of mid, so "band.lo > mid" is unprovable in
// absolute coordinates even though "offset.lo > 0" certifies it exactly.
// Offsets stay provably signed up to n around 700; beyond that e^{-n}
// underflows and tangent configurations come back Undecided.
//
// A NotContained verdict carries an escape point constructed directly on
// the offending fiber: its first coordinate is the slit abscissa (so the
// exact slit membership test applies) and its second lies well inside both
// the band and the blocked span, so membership in the true image and in the
// obstacle both survive rounding.
[[nodiscard]] inline ContainmentResult verify_containment(const DomainSpec& d, int n,
                                                          const GeometryLimits& limits = {}) {
  detail::check_witness_index(n);
  const double nn = static_cast<double>(n);
  const Interval x_range{-nn, nn};
  const Interval ratio = hull(sech_enclosure(n), Interval(1.0));
  bool undecided = false;

  for (std::size_t i = 0; i < d.obstacles.size(); ++i) {
    const auto* slit = std::get_if<VerticalSlit>(&d.obstacles[i]);
    if (slit == nullptr || !x_range.contains(slit->x)) continue;
    const Interval offset = sin(Interval(slit->x)) * ratio;
    const Interval fiber = Interval(d.mid) + offset;
    if (fiber.lo > slit->span.hi || fiber.hi < slit->span.lo) continue;
    if ((offset.lo > 0.0 && slit->span.hi <= d.mid) ||
        (offset.hi < 0.0 && slit->span.lo >= d.mid)) {
      continue;  // Band strictly on the far side of the mid line.
    }
    const auto overlap = intersection(fiber, slit->span);
    if (overlap &&
        overlap->width() > 64.0 * (std::fabs(fiber.lo) + std::fabs(fiber.hi)) * 1e-16) {
      // Wide overlap: the midpoint is inside the true band (whose enclosure
      // is only ulps wider than the exact fiber) and inside the closed span.
      return {ImageStatus::NotContained, Point2{slit->x, overlap->mid()},
              static_cast<int>(i)};
    }
    undecided = true;  // Tangency at rounding scale.
  }

  struct Cell {
    Interval t;
    int depth;
  };
  std::vector<Cell> stack{{x_range, 0}};
  while (!stack.empty()) {
    const Cell cell = stack.back();
    stack.pop_back();
    const Interval offset = sin(cell.t) * ratio;
    const Interval band = Interval(d.mid) + offset;

    bool safe = band.lo > d.y_lo && band.hi < d.y_hi;
    if (safe) {
      for (const Obstacle& ob : d.obstacles) {
        const auto* tooth = std::get_if<SmoothTooth>(&ob);
        if (tooth == nullptr) continue;
        const auto overlap = intersection(cell.t, tooth->foot());
        if (!overlap) continue;
        const Interval h = tooth_curve_enclosure(d, *tooth, *overlap);
        const bool clear = tooth->side == ToothSide::Bottom
                               ? band.lo > h.hi || (offset.lo > 0.0 && h.hi <= d.mid)
                               : band.hi < h.lo || (offset.hi < 0.0 && h.lo >= d.mid);
        if (!clear) {
          safe = false;
          break;
        }
      }
    }
    if (safe) continue;

    // Definite-escape probes at the cell midpoint and any apex inside.
    std::vector<double> probes{cell.t.mid()};
    for (const Obstacle& ob : d.obstacles) {
      const auto* tooth = std::get_if<SmoothTooth>(&ob);
      if (tooth != nullptr && cell.t.contains(tooth->apex_x)) probes.push_back(tooth->apex_x);
    }
    for (double t_star : probes) {
      const Interval fiber = band_enclosure(d, n, Interval(t_star));
      if (fiber.lo >= d.y_hi || fiber.hi <= d.y_lo) {
        return {ImageStatus::NotContained, Point2{t_star, fiber.mid()}, -1};
      }
      for (std::size_t i = 0; i < d.obstacles.size(); ++i) {
        const auto* tooth = std::get_if<SmoothTooth>(&d.obstacles[i]);
        if (tooth == nullptr || std::fabs(t_star - tooth->apex_x) > tooth->half_width) continue;
        const Interval h = tooth_curve_enclosure(d, *tooth, Interval(t_star));
        if (tooth->side == ToothSide::Bottom ? fiber.hi <= h.lo : fiber.lo >= h.hi) {
          return {ImageStatus::NotContained, Point2{t_star, fiber.mid()},
                  static_cast<int>(i)};
        }
      }
    }

    if (cell.depth >= limits.max_depth || cell.t.width() <= limits.min_width) {
      undecided = true;
      continue;
    }
    const double m = cell.t.mid();
    stack.push_back({{cell.t.lo, m}, cell.depth + 1});
    stack.push_back({{m, cell.t.hi}, cell.depth + 1});
  }

  if (undecided) return {ImageStatus::Undecided, std::nullopt, -1};
  return {ImageStatus::Contained, std::nullopt, -1};
}

}  // namespace tubelab
