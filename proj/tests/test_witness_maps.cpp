// SPDX-License-Identifier: Apache-2.0
//
// Harmonic/holomorphic map families: stable hyperbolic ratios, evaluation
// anchors, jacobians and operator norms, fiber bands, and certified image
// containment.  Cross-checked against naive formulas, finite differences,
// and power iteration from oracles.hpp.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "oracles.hpp"
#include "tubelab/witness_maps.hpp"

using namespace tubelab;

namespace {
const DomainSpec kFig1 = build_figure1();
const DomainSpec kFig2 = build_figure2();
const DomainSpec kStrip = build_strip();
constexpr double kInner = figure_constants::kHalfPi;

DomainSpec mutated_figure1() {
  DomainSpec d = build_figure1();
  // Stretch the bottom slit at +pi/2 past the mid line into the fiber band.
  std::get<VerticalSlit>(d.obstacles[2]).span = Interval{0.0, 2.6};
  validate_domain(d);
  return d;
}
}  // namespace

TEST_CASE("hyperbolic ratios match naive formulas at moderate index") {
  for (int n : {1, 2, 3, 5, 10, 20}) {
    const double direct_sech = 1.0 / std::cosh(static_cast<double>(n));
    CHECK(std::fabs(sech(n) - direct_sech) <= 1e-13 * direct_sech);
    const Interval enc = sech_enclosure(n);
    CHECK(enc.lo <= direct_sech * (1.0 + 1e-13));
    CHECK(enc.hi >= direct_sech * (1.0 - 1e-13));
    CHECK(enc.width() <= 1e-12 * direct_sech);
    for (int i = 0; i <= 40; ++i) {
      const double y = -1.0 + 2.0 * i / 40.0;
      const double nn = static_cast<double>(n);
      const double naive_c = std::cosh(nn * y) / std::cosh(nn);
      const double naive_s = std::sinh(nn * y) / std::cosh(nn);
      CAPTURE(n, y);
      CHECK(std::fabs(cosh_ratio(n, y) - naive_c) <= 1e-12 * naive_c);
      CHECK(std::fabs(sinh_ratio(n, y) - naive_s) <= 1e-12 * std::fabs(naive_s) + 1e-15);
    }
  }
}

TEST_CASE("hyperbolic ratios stay finite and exact at large index") {
  for (int n : {100, 500, 1000}) {
    // cosh(n y)/cosh(n) at y = 1 is exactly 1 in this form.
    CHECK(cosh_ratio(n, 1.0) == 1.0);
    CHECK(cosh_ratio(n, -1.0) == 1.0);
    // At y = 0 it equals sech(n).
    CHECK(std::fabs(cosh_ratio(n, 0.0) - sech(n)) <= 1e-13 * (sech(n) + 1e-300));
    // sinh(n)/cosh(n) = tanh(n).
    const double t = std::tanh(static_cast<double>(n));
    CHECK(std::fabs(sinh_ratio(n, 1.0) - t) <= 1e-12);
    CHECK(std::fabs(sinh_ratio(n, -1.0) + t) <= 1e-12);
    // Interior values are small but representable, never inf/nan.
    for (double y : {-0.9, -0.5, 0.1, 0.7}) {
      CHECK(std::isfinite(cosh_ratio(n, y)));
      CHECK(std::isfinite(sinh_ratio(n, y)));
      CHECK(cosh_ratio(n, y) <= 1.0 + 1e-15);
      CHECK(cosh_ratio(n, y) >= 0.0);
    }
    CHECK(std::fabs(sinh_ratio(n, 0.0)) == 0.0);
  }
  CHECK_THROWS_AS(sech(0), std::invalid_argument);
  CHECK_THROWS_AS(sech(1001), std::invalid_argument);
  CHECK_THROWS_AS(cosh_ratio(-3, 0.5), std::invalid_argument);
}

TEST_CASE("map evaluation: frozen anchor and oracle agreement") {
  // f_2(0.5, 0) = (1, sin(1) sech(2) + 2), frozen from an independent
  // evaluation of the defining formula.
  const Point2 p = eval_f(kFig1, 2, {0.5, 0.0});
  CHECK(p.x1 == 1.0);
  CHECK(std::fabs(p.x2 - 2.2236648632611469) < 1e-12);

  // The origin maps to the base point (0, mid) exactly.
  const Point2 o = eval_f(kFig1, 7, {0.0, 0.0});
  CHECK(o.x1 == 0.0);
  CHECK(o.x2 == 2.0);

  std::mt19937_64 rng(0xFACE);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {1, 2, 5, 12, 30}) {
    for (int trial = 0; trial < 300; ++trial) {
      const double x = u(rng), y = u(rng);
      const Point2 q = eval_f(kFig2, n, {x, y});
      CHECK(q.x1 == static_cast<double>(n) * x);
      CAPTURE(n, x, y);
      REQUIRE(std::fabs(q.x2 - oracle::f_second(kFig2, n, x, y)) < 1e-11);
    }
  }
}

TEST_CASE("holomorphic family: real part is the harmonic family") {
  std::mt19937_64 rng(0x600D);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  for (int n : {1, 2, 5, 12}) {
    for (int trial = 0; trial < 300; ++trial) {
      const std::complex<double> z{u(rng), u(rng)};
      const auto [g1, g2] = eval_g(kFig1, n, z);
      const Point2 f = eval_f(kFig1, n, {z.real(), z.imag()});
      CHECK(g1.real() == f.x1);
      CHECK(g1.imag() == static_cast<double>(n) * z.imag());
      CAPTURE(n, z.real(), z.imag());
      REQUIRE(std::fabs(g2.real() - f.x2) < 1e-13);
    }
  }
  // On the real axis the second component is real.
  const auto [w1, w2] = eval_g(kFig1, 3, {0.25, 0.0});
  CHECK(w2.imag() == 0.0);
  CHECK(w1.imag() == 0.0);

  // Cauchy-Riemann for the second component, by central differences.
  const double h = 1e-6;
  for (int n : {1, 4}) {
    for (const std::complex<double> z : {std::complex<double>{0.3, -0.2},
                                         std::complex<double>{-0.6, 0.45}}) {
      auto re2 = [&](double x, double y) {
        return eval_g(kFig1, n, {x, y}).second.real();
      };
      auto im2 = [&](double x, double y) {
        return eval_g(kFig1, n, {x, y}).second.imag();
      };
      const double ux = (re2(z.real() + h, z.imag()) - re2(z.real() - h, z.imag())) / (2 * h);
      const double uy = (re2(z.real(), z.imag() + h) - re2(z.real(), z.imag() - h)) / (2 * h);
      const double vx = (im2(z.real() + h, z.imag()) - im2(z.real() - h, z.imag())) / (2 * h);
      const double vy = (im2(z.real(), z.imag() + h) - im2(z.real(), z.imag() - h)) / (2 * h);
      CAPTURE(n, z.real(), z.imag());
      CHECK(std::fabs(ux - vy) < 1e-5);
      CHECK(std::fabs(uy + vx) < 1e-5);
    }
  }
}

TEST_CASE("jacobian matches central finite differences") {
  std::mt19937_64 rng(0x1ACB);
  std::uniform_real_distribution<double> u(-0.95, 0.95);
  for (int n : {1, 2, 5, 10}) {
    for (int trial = 0; trial < 100; ++trial) {
      const double x = u(rng), y = u(rng);
      const Matrix2 m = jacobian_f(kFig1, n, {x, y});
      const oracle::Jacobian fd = oracle::fd_jacobian(kFig1, n, x, y);
      const double scale = static_cast<double>(n) * static_cast<double>(n);
      CAPTURE(n, x, y);
      CHECK(std::fabs(m.a - fd.a) < 1e-5 * scale);
      CHECK(std::fabs(m.b - fd.b) < 1e-5 * scale);
      CHECK(std::fabs(m.c - fd.c) < 1e-5 * scale);
      CHECK(std::fabs(m.d - fd.d) < 1e-5 * scale);
    }
  }
}

TEST_CASE("operator norm: closed form vs power iteration") {
  std::mt19937_64 rng(0x27B1);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 500; ++trial) {
    const Matrix2 m{u(rng), u(rng), u(rng), u(rng)};
    const double closed = operator_norm(m);
    const double iter = oracle::power_norm(m.a, m.b, m.c, m.d);
    CAPTURE(m.a, m.b, m.c, m.d);
    REQUIRE(std::fabs(closed - iter) <= 1e-9 * std::max(1.0, closed));
  }
  CHECK(operator_norm({0.0, 0.0, 0.0, 0.0}) == 0.0);
  CHECK(operator_norm({3.0, 0.0, 0.0, 3.0}) == Catch::Approx(3.0));
  CHECK(operator_norm({0.0, 2.0, 0.0, 0.0}) == Catch::Approx(2.0));
}

TEST_CASE("differential size at the origin") {
  CHECK(std::fabs(origin_operator_norm(1) - 1.1916267627130679) < 1e-12);
  for (int n : {1, 2, 3, 7, 20, 50}) {
    const double via_jacobian = operator_norm(jacobian_f(kFig1, n, {0.0, 0.0}));
    CHECK(std::fabs(origin_operator_norm(n) - via_jacobian) <=
          1e-12 * origin_operator_norm(n));
    // At least n, approaching n from above; the sech^2 excess is visible in
    // double precision only while sech(n)^2 clears one ulp of 1.0.
    CHECK(origin_operator_norm(n) >= static_cast<double>(n));
    if (n <= 15) CHECK(origin_operator_norm(n) > static_cast<double>(n));
  }
  CHECK(origin_operator_norm(50) < 50.0 * (1.0 + 1e-12));
  // Growth is strictly monotone.
  for (int n = 1; n < 40; ++n) {
    CHECK(origin_operator_norm(n + 1) > origin_operator_norm(n));
  }
}

TEST_CASE("fiber band encloses sampled values and has exact envelope") {
  std::mt19937_64 rng(0xBA4D);
  std::uniform_real_distribution<double> uy(-1.0, 1.0);
  for (int n : {1, 2, 5, 30}) {
    const double nn = static_cast<double>(n);
    for (int i = 0; i <= 60; ++i) {
      const double u = -nn + 2.0 * nn * i / 60.0;
      const Interval band = band_enclosure(kFig1, n, Interval(u));
      for (int s = 0; s < 20; ++s) {
        const double y = uy(rng);
        const double v = kFig1.mid + std::sin(u) * cosh_ratio(n, y);
        CAPTURE(n, u, y);
        REQUIRE(v >= band.lo - 1e-12);
        REQUIRE(v <= band.hi + 1e-12);
      }
    }
    // Once the window reaches +-pi/2 the band envelope is exactly mid +- 1;
    // the sine peak clamp makes the envelope exact, not merely close.
    const Interval full = band_enclosure(kFig1, n, Interval{-nn, nn});
    if (n >= 2) {
      CHECK(full.lo == kFig1.mid - 1.0);
      CHECK(full.hi == kFig1.mid + 1.0);
    } else {
      CHECK(full.hi <= kFig1.mid + 1.0);
      CHECK(full.hi >= kFig1.mid + std::sin(1.0) - 1e-15);
      CHECK(full.lo >= kFig1.mid - 1.0);
    }
  }
  // Frozen anchor: the fiber over u = pi/2 at n = 2 spans sech(2)..1 above
  // the mid line.
  const Interval peak = band_enclosure(kFig1, 2, Interval(kInner));
  CHECK(std::fabs(peak.lo - 2.2658022288340796) < 1e-9);
  CHECK(peak.hi <= 3.0);
  CHECK(peak.hi > 3.0 - 1e-9);
}

TEST_CASE("image containment: certified for both figures across the range") {
  for (const DomainSpec* d : {&kFig1, &kFig2, &kStrip}) {
    for (int n = 1; n <= 50; ++n) {
      CAPTURE(n);
      const ContainmentResult r = verify_containment(*d, n);
      REQUIRE(r.status == ImageStatus::Contained);
      CHECK_FALSE(r.escape_point.has_value());
    }
  }
  // Far beyond the plotting range the offset-coordinate argument still
  // certifies tangency clearance.
  CHECK(verify_containment(kFig1, 200).status == ImageStatus::Contained);
  CHECK(verify_containment(kFig2, 200).status == ImageStatus::Contained);
  CHECK(verify_containment(kFig1, 700).status == ImageStatus::Contained);
  CHECK(verify_containment(kFig2, 700).status == ImageStatus::Contained);
}

TEST_CASE("image containment: honest Undecided once the margin underflows") {
  // At n = 800, e^{-n} is below the smallest positive double, so the band
  // margin over obstacles that reach the mid line cannot be certified.
  CHECK(verify_containment(kFig1, 800).status == ImageStatus::Undecided);
  CHECK(verify_containment(kFig2, 800).status == ImageStatus::Undecided);
  // The bare strip has no tangent obstacle, so it stays Contained.
  CHECK(verify_containment(kStrip, 800).status == ImageStatus::Contained);
}

TEST_CASE("image containment: escape through a stretched slit is certified") {
  const DomainSpec bad = mutated_figure1();

  // At n = 1 the stretched slit sits outside the image window [-1, 1].
  CHECK(verify_containment(bad, 1).status == ImageStatus::Contained);

  // At n = 2 the fiber over pi/2 runs through the stretched span.
  const ContainmentResult r = verify_containment(bad, 2);
  REQUIRE(r.status == ImageStatus::NotContained);
  REQUIRE(r.escape_point.has_value());
  CHECK(r.obstacle_index == 2);
  const Point2 esc = *r.escape_point;
  CHECK(esc.x1 == kInner);
  CHECK(esc.x2 > 2.26);
  CHECK(esc.x2 < 2.61);

  // The escape point is genuinely outside the domain...
  CHECK_FALSE(oracle::point_in_domain(bad, esc.x1, esc.x2));
  CHECK_FALSE(contains(bad, esc));

  // ...and genuinely in the image: bisect y so that f_2(pi/4, y) hits it.
  const double target = (esc.x2 - bad.mid) / std::sin(esc.x1);
  REQUIRE(target > 1.0 / std::cosh(2.0));
  REQUIRE(target < 1.0);
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 80; ++it) {
    const double y = 0.5 * (lo + hi);
    (std::cosh(2.0 * y) / std::cosh(2.0) < target ? lo : hi) = y;
  }
  const double achieved = oracle::f_second(bad, 2, esc.x1 / 2.0, 0.5 * (lo + hi));
  CHECK(std::fabs(achieved - esc.x2) < 1e-9);
}

TEST_CASE("image containment: escape through the strip boundary") {
  DomainSpec narrow;
  narrow.y_lo = 1.5;
  narrow.y_hi = 2.4;
  narrow.mid = 2.0;
  const ContainmentResult r = verify_containment(narrow, 1);
  REQUIRE(r.status == ImageStatus::NotContained);
  REQUIRE(r.escape_point.has_value());
  CHECK(r.obstacle_index == -1);
  const Point2 esc = *r.escape_point;
  CHECK(std::fabs(esc.x1) <= 1.0);
  CHECK((esc.x2 >= narrow.y_hi || esc.x2 <= narrow.y_lo));
  // The escape lies inside the true fiber band over its abscissa.
  const double s = std::sin(esc.x1);
  const double lo = narrow.mid + std::min(s, s / std::cosh(1.0));
  const double hi = narrow.mid + std::max(s, s / std::cosh(1.0));
  CHECK(esc.x2 >= lo - 1e-12);
  CHECK(esc.x2 <= hi + 1e-12);
}

TEST_CASE("index validation is shared across the family") {
  CHECK_THROWS_AS(eval_f(kFig1, 0, {0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(eval_g(kFig1, -1, {0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(jacobian_f(kFig1, 1001, {0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(origin_operator_norm(2000), std::invalid_argument);
  CHECK_THROWS_AS(band_enclosure(kFig1, 0, Interval(0.0)), std::invalid_argument);
  CHECK_THROWS_AS(verify_containment(kFig1, 0), std::invalid_argument);
}
