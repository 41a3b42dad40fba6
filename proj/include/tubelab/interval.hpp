// SPDX-License-Identifier: Apache-2.0
//
// Outward-rounded interval arithmetic on double endpoints.
//
// Every operation returns an enclosure of the exact real range of the
// operation over its input boxes.  Rounding is handled by widening results
// with nextafter steps instead of toggling the FPU rounding mode, so the
// code is safe under -O2 and needs no fenv pragmas.  Exactly representable
// results are NOT widened: a fused-multiply-add residual (for products and
// quotients) or an additive reconstruction check (for sums) detects whether
// the double operation rounded.  Keeping dyadic chains exact matters: the
// subdivision searches in predicates.hpp refute boundary cells with closed
// inequalities whose endpoints are exact doubles.
//
// Library transcendentals (sin, cos, sinh, cosh, exp) are assumed accurate
// to <= 1 ulp; their results are widened two steps.  Arguments of exactly
// zero use the IEEE-guaranteed special values unwidened.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace tubelab {

[[nodiscard]] inline double step_up(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}

[[nodiscard]] inline double step_down(double x) {
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

[[nodiscard]] inline double step_up2(double x) { return step_up(step_up(x)); }
[[nodiscard]] inline double step_down2(double x) { return step_down(step_down(x)); }

struct Interval {
  double lo{0.0};
  double hi{0.0};

  constexpr Interval() = default;
  constexpr explicit Interval(double v) : lo(v), hi(v) {}
  constexpr Interval(double l, double h) : lo(l), hi(h) {
    if (!(lo <= hi)) throw std::invalid_argument("Interval: lo > hi (or NaN endpoint)");
  }

  [[nodiscard]] constexpr double width() const { return hi - lo; }
  [[nodiscard]] constexpr double mid() const { return 0.5 * (lo + hi); }
  [[nodiscard]] constexpr bool contains(double v) const { return lo <= v && v <= hi; }
  [[nodiscard]] constexpr bool contains(const Interval& o) const {
    return lo <= o.lo && o.hi <= hi;
  }
  [[nodiscard]] constexpr bool intersects(const Interval& o) const {
    return lo <= o.hi && o.lo <= hi;
  }
  [[nodiscard]] constexpr bool subset_of(const Interval& o) const {
    return o.lo <= lo && hi <= o.hi;
  }
};

namespace detail {

// Sum rounded toward -inf/+inf; exact sums pass through unwidened.
[[nodiscard]] inline double add_down(double a, double b) {
  const double s = a + b;
  const bool exact = (s - a == b) && (s - b == a);
  return exact ? s : step_down(s);
}
[[nodiscard]] inline double add_up(double a, double b) {
  const double s = a + b;
  const bool exact = (s - a == b) && (s - b == a);
  return exact ? s : step_up(s);
}
[[nodiscard]] inline double sub_down(double a, double b) { return add_down(a, -b); }
[[nodiscard]] inline double sub_up(double a, double b) { return add_up(a, -b); }

[[nodiscard]] inline double mul_down(double a, double b) {
  const double p = a * b;
  return std::fma(a, b, -p) == 0.0 ? p : step_down(p);
}
[[nodiscard]] inline double mul_up(double a, double b) {
  const double p = a * b;
  return std::fma(a, b, -p) == 0.0 ? p : step_up(p);
}

[[nodiscard]] inline double div_down(double a, double b) {
  const double q = a / b;
  return std::fma(q, b, -a) == 0.0 ? q : step_down(q);
}
[[nodiscard]] inline double div_up(double a, double b) {
  const double q = a / b;
  return std::fma(q, b, -a) == 0.0 ? q : step_up(q);
}

}  // namespace detail

[[nodiscard]] inline Interval operator+(const Interval& a, const Interval& b) {
  return {detail::add_down(a.lo, b.lo), detail::add_up(a.hi, b.hi)};
}

[[nodiscard]] inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

[[nodiscard]] inline Interval operator-(const Interval& a, const Interval& b) {
  return a + (-b);
}

[[nodiscard]] inline Interval operator*(const Interval& a, const Interval& b) {
  const double dn[4] = {detail::mul_down(a.lo, b.lo), detail::mul_down(a.lo, b.hi),
                        detail::mul_down(a.hi, b.lo), detail::mul_down(a.hi, b.hi)};
  const double up[4] = {detail::mul_up(a.lo, b.lo), detail::mul_up(a.lo, b.hi),
                        detail::mul_up(a.hi, b.lo), detail::mul_up(a.hi, b.hi)};
  return {std::min({dn[0], dn[1], dn[2], dn[3]}), std::max({up[0], up[1], up[2], up[3]})};
}

[[nodiscard]] inline Interval operator+(const Interval& a, double b) { return a + Interval(b); }
[[nodiscard]] inline Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
[[nodiscard]] inline Interval operator-(const Interval& a, double b) { return a - Interval(b); }
[[nodiscard]] inline Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
[[nodiscard]] inline Interval operator*(const Interval& a, double b) { return a * Interval(b); }
[[nodiscard]] inline Interval operator*(double a, const Interval& b) { return Interval(a) * b; }

// Division requires a denominator excluding zero.
[[nodiscard]] inline Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains(0.0)) throw std::domain_error("Interval division: denominator contains zero");
  const double dn[4] = {detail::div_down(a.lo, b.lo), detail::div_down(a.lo, b.hi),
                        detail::div_down(a.hi, b.lo), detail::div_down(a.hi, b.hi)};
  const double up[4] = {detail::div_up(a.lo, b.lo), detail::div_up(a.lo, b.hi),
                        detail::div_up(a.hi, b.lo), detail::div_up(a.hi, b.hi)};
  return {std::min({dn[0], dn[1], dn[2], dn[3]}), std::max({up[0], up[1], up[2], up[3]})};
}

[[nodiscard]] inline Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

[[nodiscard]] inline std::optional<Interval> intersection(const Interval& a, const Interval& b) {
  const double lo = std::max(a.lo, b.lo);
  const double hi = std::min(a.hi, b.hi);
  if (lo > hi) return std::nullopt;
  return Interval{lo, hi};
}

[[nodiscard]] inline Interval abs(const Interval& x) {
  if (x.lo >= 0.0) return x;
  if (x.hi <= 0.0) return -x;
  return {0.0, std::max(-x.lo, x.hi)};
}

// Tighter than x*x for intervals straddling zero.
[[nodiscard]] inline Interval square(const Interval& x) {
  const Interval a = abs(x);
  return {detail::mul_down(a.lo, a.lo), detail::mul_up(a.hi, a.hi)};
}

// a*x + b with double coefficients.
[[nodiscard]] inline Interval affine_image(const Interval& x, double a, double b) {
  return Interval(a) * x + Interval(b);
}

// pi is irrational: the tightest enclosure has the double below it as lo.
inline const Interval kPi{std::numbers::pi, step_up(std::numbers::pi)};
inline const Interval kTwoPi = kPi * 2.0;
inline const Interval kHalfPi{std::numbers::pi / 2.0, step_up(std::numbers::pi / 2.0)};

namespace detail {

// Conservative test: may {2*pi*(m + turns) : m integer} meet x?  Errs toward
// "yes", which only widens the sin/cos range below.
[[nodiscard]] inline bool meets_critical_set(const Interval& x, double turns) {
  const double inv_two_pi = 1.0 / (2.0 * std::numbers::pi);
  const long m_lo = static_cast<long>(std::floor(x.lo * inv_two_pi)) - 2;
  const long m_hi = static_cast<long>(std::ceil(x.hi * inv_two_pi)) + 2;
  for (long m = m_lo; m <= m_hi; ++m) {
    const Interval c = kTwoPi * (static_cast<double>(m) + turns);
    if (c.intersects(x)) return true;
  }
  return false;
}

[[nodiscard]] inline double widened_lib_down(double v) { return step_down2(v); }
[[nodiscard]] inline double widened_lib_up(double v) { return step_up2(v); }

}  // namespace detail

[[nodiscard]] inline Interval sin(const Interval& x) {
  if (!(std::isfinite(x.lo) && std::isfinite(x.hi)) || x.width() >= 6.3) {
    return {-1.0, 1.0};
  }
  auto point_sin_lo = [](double t) { return t == 0.0 ? 0.0 : detail::widened_lib_down(std::sin(t)); };
  auto point_sin_hi = [](double t) { return t == 0.0 ? 0.0 : detail::widened_lib_up(std::sin(t)); };
  double lo = std::min(point_sin_lo(x.lo), point_sin_lo(x.hi));
  double hi = std::max(point_sin_hi(x.lo), point_sin_hi(x.hi));
  // sin is monotone between consecutive critical points pi/2 + 2*pi*m (max)
  // and -pi/2 + 2*pi*m (min), so endpoint values bound the range unless a
  // critical point may lie inside.
  if (detail::meets_critical_set(x, 0.25)) hi = 1.0;
  if (detail::meets_critical_set(x, -0.25)) lo = -1.0;
  return {std::max(lo, -1.0), std::min(hi, 1.0)};
}

[[nodiscard]] inline Interval cos(const Interval& x) {
  if (!(std::isfinite(x.lo) && std::isfinite(x.hi)) || x.width() >= 6.3) {
    return {-1.0, 1.0};
  }
  auto point_cos_lo = [](double t) { return t == 0.0 ? 1.0 : detail::widened_lib_down(std::cos(t)); };
  auto point_cos_hi = [](double t) { return t == 0.0 ? 1.0 : detail::widened_lib_up(std::cos(t)); };
  double lo = std::min(point_cos_lo(x.lo), point_cos_lo(x.hi));
  double hi = std::max(point_cos_hi(x.lo), point_cos_hi(x.hi));
  // cos: max at 2*pi*m, min at pi + 2*pi*m.
  if (detail::meets_critical_set(x, 0.0)) hi = 1.0;
  if (detail::meets_critical_set(x, 0.5)) lo = -1.0;
  return {std::max(lo, -1.0), std::min(hi, 1.0)};
}

[[nodiscard]] inline Interval cosh(const Interval& x) {
  const Interval a = abs(x);
  const double lo = a.lo == 0.0 ? 1.0 : detail::widened_lib_down(std::cosh(a.lo));
  const double hi = a.hi == 0.0 ? 1.0 : detail::widened_lib_up(std::cosh(a.hi));
  return {std::max(lo, 1.0), hi};
}

[[nodiscard]] inline Interval sinh(const Interval& x) {
  const double lo = x.lo == 0.0 ? 0.0 : detail::widened_lib_down(std::sinh(x.lo));
  const double hi = x.hi == 0.0 ? 0.0 : detail::widened_lib_up(std::sinh(x.hi));
  return {lo, hi};
}

[[nodiscard]] inline Interval exp(const Interval& x) {
  const double lo = x.lo == 0.0 ? 1.0 : detail::widened_lib_down(std::exp(x.lo));
  const double hi = x.hi == 0.0 ? 1.0 : detail::widened_lib_up(std::exp(x.hi));
  return {std::max(lo, 0.0), hi};
}

// Enclosure of p/q for integer p, q (q != 0).
[[nodiscard]] inline Interval rational(long long p, long long q) {
  if (q == 0) throw std::domain_error("rational: zero denominator");
  return Interval(static_cast<double>(p)) / Interval(static_cast<double>(q));
}

struct Box {
  Interval x;
  Interval y;

  [[nodiscard]] bool contains(double px, double py) const {
    return x.contains(px) && y.contains(py);
  }
};

}  // namespace tubelab
