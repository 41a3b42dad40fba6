// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate: eight end-to-end criteria, one PASS/FAIL line each.
// The user-facing flows run through the command-line binary (argv[1]); the
// numerical claims run against the library directly, cross-checked by the
// independent oracles in oracles.hpp.  Every tolerance is pinned below.
//
// Usage: acceptance <path-to-cli>
// Exit:  0 when all criteria pass, 1 otherwise.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "oracles.hpp"

#include "tubelab/analysis.hpp"
#include "tubelab/certificate.hpp"
#include "tubelab/kobayashi.hpp"
#include "tubelab/predicates.hpp"
#include "tubelab/spec_file.hpp"
#include "tubelab/witness_maps.hpp"

namespace {

namespace fs = std::filesystem;
using tubelab::Json;

// ---------------------------------------------------------------------------
// Pinned tolerances and limits
// ---------------------------------------------------------------------------

constexpr double kCliTimeLimitSeconds = 60.0;       // criteria 1, 7: wall clock per run
constexpr double kCoverageTol = 1e-12;              // criteria 1, 6, 7: refutation tiling
constexpr double kOpNormClosedFormRelTol = 1e-10;   // criterion 2: generic vs closed form
constexpr double kOpNormFiniteDiffRelTol = 1e-6;    // criterion 2: vs finite differences
constexpr double kOpNormFloorAt50 = 49.9;           // criterion 2: growth floor at n = 50
constexpr double kHolomorphicMatchTol = 1e-12;      // criterion 4: Re g_n vs f_n on the grid
constexpr double kCauchyRiemannRatioLo = 3.6;       // criterion 4: O(h^2) ratio, 4 - 10%
constexpr double kCauchyRiemannRatioHi = 4.4;       // criterion 4: O(h^2) ratio, 4 + 10%
constexpr double kStripMetricRelTol = 1e-9;         // criterion 5: conformal oracle
constexpr double kLowerBoundAnchorTol = 1e-9;       // criterion 5: pi/8 anchor
constexpr double kDecayRelTol = 0.05;               // criterion 5: 1/|df_n(0)| decay
constexpr int kSuiteCount = 50;                     // criterion 6: corpus size
constexpr int kSuiteMaxK = 8;                       // criterion 6: property window
constexpr std::uint64_t kSuiteSeed = 20260822ull;   // criterion 6: corpus seed
constexpr double kEscapeSechThreshold = 0.6;        // criterion 3: widened-slit overlap

// ---------------------------------------------------------------------------
// Harness
// ---------------------------------------------------------------------------

struct Check {
  bool ok = true;
  std::string why;

  void require(bool condition, const std::string& what) {
    if (ok && !condition) {
      ok = false;
      why = what;
    }
  }
};

struct Gate {
  int failures = 0;

  void report(int index, const std::string& title, const Check& c) {
    std::cout << (c.ok ? "[PASS]" : "[FAIL]") << " criterion " << index << ": " << title;
    if (!c.ok) std::cout << " -- " << c.why;
    std::cout << "\n" << std::flush;
    if (!c.ok) ++failures;
  }
};

void run_criterion(Gate& gate, int index, const std::string& title,
                   const std::function<void(Check&)>& body) {
  Check c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("unexpected exception: ") + e.what());
  }
  gate.report(index, title, c);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct CliResult {
  int exit_code = -1;
  std::string output;
  double seconds = 0.0;
};

CliResult run_cli(const std::string& cli, const std::string& args, const fs::path& capture) {
  const std::string command = "\"" + cli + "\" " + args + " > \"" + capture.string() + "\" 2>&1";
  const auto start = std::chrono::steady_clock::now();
  const int status = std::system(command.c_str());
  const auto stop = std::chrono::steady_clock::now();
  CliResult result;
  result.seconds = std::chrono::duration<double>(stop - start).count();
  if (status != -1 && WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  result.output = read_file(capture);
  return result;
}

double rel_diff(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

std::string at(const char* what, int k) {
  return std::string(what) + " at k=" + std::to_string(k);
}

// Shared context: certificate paths flow from criteria 1 and 7 into 8.
struct Context {
  std::string cli;
  fs::path dir;
  fs::path cert1;
  fs::path cert2;
};

// ---------------------------------------------------------------------------
// Certificate pattern shared by the two figure presets: the constant family
// survives only k = 1, the affine family survives k <= 4 with a refutation
// tiling from k = 5 on, the scaled-sine family survives every level, and all
// fifty map images are certified inside the domain.
// ---------------------------------------------------------------------------

void check_figure_pattern(Check& c, const Json& doc) {
  const Json& results = doc.at("results");

  const Json& constant = results.at("constant");
  c.require(constant.at("verdict") == "fails_up_to_k", "constant verdict");
  c.require(constant.at("first_refuted") == 2, "constant first_refuted");
  const Json& constant_levels = constant.at("levels");
  c.require(constant_levels.size() == 20, "constant level count");
  for (int k = 1; k <= 20; ++k) {
    const Json& level = constant_levels.at(k - 1);
    c.require(level.at("k") == k, at("constant level index", k));
    if (k == 1) {
      c.require(level.at("outcome") == "witness", at("constant outcome", k));
    } else {
      c.require(level.at("outcome") == "refuted", at("constant outcome", k));
      c.require(!level.at("cover").empty(), at("constant cover", k));
    }
  }

  const Json& affine = results.at("affine");
  c.require(affine.at("verdict") == "fails_up_to_k", "affine verdict");
  c.require(affine.at("first_refuted") == 5, "affine first_refuted");
  const Json& affine_levels = affine.at("levels");
  c.require(affine_levels.size() == 20, "affine level count");
  for (int k = 1; k <= 20; ++k) {
    const Json& level = affine_levels.at(k - 1);
    if (k <= 4) {
      c.require(level.at("outcome") == "witness", at("affine outcome", k));
    } else {
      c.require(level.at("outcome") == "refuted", at("affine outcome", k));
      c.require(!level.at("cells").empty(), at("affine cells", k));
      c.require(std::fabs(level.at("coverage").get<double>() - 1.0) <= kCoverageTol,
                at("affine coverage", k));
    }
  }

  const Json& analytic = results.at("analytic");
  c.require(analytic.at("verdict") == "holds_up_to_k", "analytic verdict");
  c.require(analytic.at("first_refuted").is_null(), "analytic first_refuted");
  const Json& analytic_levels = analytic.at("levels");
  c.require(analytic_levels.size() == 20, "analytic level count");
  for (int k = 1; k <= 20; ++k) {
    const Json& level = analytic_levels.at(k - 1);
    c.require(level.at("outcome") == "witness", at("analytic outcome", k));
    const Json& curve = level.at("curve");
    c.require(curve.at("amp_num") == 1 && curve.at("amp_den") == k &&
                  curve.at("offset") == 2.0,
              at("analytic curve", k));
  }

  const Json& obstruction = results.at("obstruction");
  c.require(obstruction.at("verdict") == "non_hyperbolicity_witness", "obstruction verdict");
  const Json& rows = obstruction.at("rows");
  c.require(rows.size() == 50, "obstruction row count");
  for (int n = 1; n <= static_cast<int>(rows.size()); ++n) {
    const Json& row = rows.at(n - 1);
    c.require(row.at("n") == n, at("obstruction row index", n));
    c.require(row.at("status") == "contained", at("obstruction status", n));
  }
  if (rows.size() == 50) {
    const double first = rows.at(0).at("origin_norm").get<double>();
    const double last = rows.at(49).at("origin_norm").get<double>();
    c.require(last / first >= 10.0, "obstruction growth factor");
  }

  const Json& implications = results.at("implications");
  c.require(implications.at("constant_witness_lifts") == true &&
                implications.at("affine_refutation_dominates") == true,
            "implications");
}

// ---------------------------------------------------------------------------
// Criterion 1: four-slit preset, end to end through the command line.
// ---------------------------------------------------------------------------

void criterion_1(Check& c, Context& ctx) {
  const CliResult run =
      run_cli(ctx.cli,
              "analyze --preset fig1 --point 0,2 --K 20 --N 50 --out \"" +
                  ctx.cert1.string() + "\"",
              ctx.dir / "c1_analyze.log");
  c.require(run.exit_code == 0, "analyze exit code " + std::to_string(run.exit_code));
  c.require(run.seconds < kCliTimeLimitSeconds,
            "analyze took " + std::to_string(run.seconds) + " s");
  c.require(fs::exists(ctx.cert1), "certificate file missing");
  if (!c.ok) return;

  const Json doc = Json::parse(read_file(ctx.cert1));
  check_figure_pattern(c, doc);

  const CliResult verify =
      run_cli(ctx.cli, "verify \"" + ctx.cert1.string() + "\"", ctx.dir / "c1_verify.log");
  c.require(verify.exit_code == 0, "verify exit code " + std::to_string(verify.exit_code));
  c.require(verify.output.find("VERIFIED") != std::string::npos, "verify output");
}

// ---------------------------------------------------------------------------
// Criterion 2: origin derivative norms.  Three independent routes must
// agree: the closed form n sqrt(1 + sech(n)^2) written directly against
// std::cosh, the generic 2x2 singular-value formula on the Jacobian, and a
// finite-difference Jacobian pushed through power iteration.
// ---------------------------------------------------------------------------

void criterion_2(Check& c) {
  const tubelab::DomainSpec figure = tubelab::build_figure1();
  for (int n = 1; n <= 50; ++n) {
    const double s = 1.0 / std::cosh(static_cast<double>(n));
    const double closed = static_cast<double>(n) * std::sqrt(1.0 + s * s);
    const double from_library = tubelab::origin_operator_norm(n);
    const double generic =
        tubelab::operator_norm(tubelab::jacobian_f(figure, n, {0.0, 0.0}));
    c.require(rel_diff(from_library, closed) <= kOpNormClosedFormRelTol,
              at("origin norm vs closed form", n));
    c.require(rel_diff(generic, closed) <= kOpNormClosedFormRelTol,
              at("generic operator norm vs closed form", n));
    const oracle::Jacobian fd = oracle::fd_jacobian(figure, n, 0.0, 0.0);
    const double from_differences = oracle::power_norm(fd.a, fd.b, fd.c, fd.d);
    c.require(rel_diff(from_library, from_differences) <= kOpNormFiniteDiffRelTol,
              at("origin norm vs finite differences", n));
  }
  c.require(tubelab::origin_operator_norm(50) > kOpNormFloorAt50, "norm floor at n=50");
}

// ---------------------------------------------------------------------------
// Criterion 3: containment certification, and its sensitivity.  Widening one
// bottom slit past the mid line must flip the verdict exactly at the first n
// whose band margin sech(n) drops below the widened overlap, with an escape
// point that provably leaves the domain.
// ---------------------------------------------------------------------------

void criterion_3(Check& c) {
  const tubelab::DomainSpec figure = tubelab::build_figure1();
  for (int n = 1; n <= 50; ++n) {
    c.require(tubelab::verify_containment(figure, n).status == tubelab::ImageStatus::Contained,
              at("containment", n));
  }

  tubelab::DomainSpec widened = figure;
  auto& slit = std::get<tubelab::VerticalSlit>(widened.obstacles[2]);
  c.require(slit.x == tubelab::figure_constants::kHalfPi && slit.span.hi == 2.0,
            "expected bottom slit at pi/2");
  slit.span.hi = 2.0 + kEscapeSechThreshold;

  int expected_flip = 1;
  while (1.0 / std::cosh(static_cast<double>(expected_flip)) > kEscapeSechThreshold) {
    ++expected_flip;
  }
  c.require(expected_flip == 2, "expected flip index");

  for (int n = 1; n <= 50; ++n) {
    const tubelab::ContainmentResult result = tubelab::verify_containment(widened, n);
    if (n < expected_flip) {
      c.require(result.status == tubelab::ImageStatus::Contained,
                at("widened-slit containment", n));
    } else {
      c.require(result.status == tubelab::ImageStatus::NotContained,
                at("widened-slit escape", n));
      c.require(result.escape_point.has_value(), at("escape point recorded", n));
      if (result.escape_point) {
        c.require(!tubelab::contains(widened, *result.escape_point),
                  at("escape point outside the domain", n));
      }
      if (n == expected_flip) {
        c.require(result.obstacle_index == 2, "escape obstacle index");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Criterion 4: the holomorphic family really is the analytic completion of
// the harmonic one.  Re g_n must match f_n on a 100x100 grid of the square,
// and the central-difference Cauchy-Riemann residual must shrink like h^2
// (ratio 4 +/- 10% under halving).
// ---------------------------------------------------------------------------

void criterion_4(Check& c) {
  const tubelab::DomainSpec figure = tubelab::build_figure1();
  const std::array<int, 3> indices{1, 5, 20};
  for (int n : indices) {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      for (int j = 0; j < 100; ++j) {
        const double x = -1.0 + 2.0 * i / 99.0;
        const double y = -1.0 + 2.0 * j / 99.0;
        const tubelab::Point2 f = tubelab::eval_f(figure, n, {x, y});
        const auto [g1, g2] = tubelab::eval_g(figure, n, {x, y});
        worst = std::max(worst, std::fabs(g1.real() - f.x1));
        worst = std::max(worst, std::fabs(g2.real() - f.x2));
      }
    }
    c.require(worst <= kHolomorphicMatchTol, at("harmonic/holomorphic match", n));

    const std::array<std::pair<double, double>, 3> points{
        {{0.37, -0.21}, {-0.53, 0.41}, {0.11, 0.67}}};
    const auto residual_sum = [&](double h) {
      double sum = 0.0;
      for (const auto& [x, y] : points) {
        for (int component = 0; component < 2; ++component) {
          const auto value = [&](double u, double v) {
            const auto [w1, w2] = tubelab::eval_g(figure, n, {u, v});
            return component == 0 ? w1 : w2;
          };
          const double re_x = (value(x + h, y).real() - value(x - h, y).real()) / (2.0 * h);
          const double re_y = (value(x, y + h).real() - value(x, y - h).real()) / (2.0 * h);
          const double im_x = (value(x + h, y).imag() - value(x - h, y).imag()) / (2.0 * h);
          const double im_y = (value(x, y + h).imag() - value(x, y - h).imag()) / (2.0 * h);
          sum += std::fabs(re_x - im_y) + std::fabs(re_y + im_x);
        }
      }
      return sum;
    };
    const double ratio = residual_sum(0.01) / residual_sum(0.005);
    c.require(kCauchyRiemannRatioLo <= ratio && ratio <= kCauchyRiemannRatioHi,
              at("Cauchy-Riemann residual ratio", n));
  }
}

// ---------------------------------------------------------------------------
// Criterion 5: metric plumbing.  The strip metric against an independent
// conformal-map oracle, the exact pi/8 anchor for the vertical direction at
// mid height, and the certified upper bounds decaying like 1/|df_n(0)|.
// ---------------------------------------------------------------------------

void criterion_5(Check& c) {
  std::mt19937_64 rng(0xC0FFEEull);
  std::uniform_real_distribution<double> height(0.05, 3.95);
  std::uniform_real_distribution<double> offset(-10.0, 10.0);
  std::uniform_real_distribution<double> component(-2.0, 2.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::complex<double> w(height(rng), offset(rng));
    std::complex<double> v(component(rng), component(rng));
    while (std::abs(v) < 1e-3) v = {component(rng), component(rng)};
    const double from_library = tubelab::strip_metric(w, v, 0.0, 4.0);
    const double from_oracle = oracle::strip_metric(w, v, 0.0, 4.0);
    c.require(rel_diff(from_library, from_oracle) <= kStripMetricRelTol,
              "strip metric vs conformal oracle at trial " + std::to_string(trial));
  }

  const double anchor = tubelab::tube_lower_bound(tubelab::build_strip(), {0.0, 2.0},
                                                  tubelab::CVec2{{0.0, 0.0}, {1.0, 0.0}});
  c.require(std::fabs(anchor - std::numbers::pi / 8.0) <= kLowerBoundAnchorTol,
            "vertical lower bound at mid height");

  const tubelab::DomainSpec figure = tubelab::build_figure1();
  const tubelab::Point2 base{0.0, 2.0};
  for (int n = 10; n <= 50; ++n) {
    const double s = 1.0 / std::cosh(static_cast<double>(n));
    const double scale = std::sqrt(1.0 + s * s);
    const tubelab::CVec2 v{{1.0 / scale, 0.0}, {s / scale, 0.0}};
    const auto upper =
        tubelab::upper_bound_from_disc(figure, tubelab::WitnessDisc{n, 1.0}, base, v);
    c.require(upper.has_value(), at("witness disc certified", n));
    if (upper) {
      const double expected = 1.0 / (static_cast<double>(n) * scale);
      c.require(std::fabs(*upper - expected) <= kDecayRelTol * expected,
                at("upper bound decay", n));
    }
  }
}

// ---------------------------------------------------------------------------
// Criterion 6: a generated corpus of fifty slit specs with analytically
// known level tables.  Three shapes whose outcomes are decidable by hand:
//
//   single  one vertical slit from one wall, protruding depth = |m - mid|
//           past the mid line (possibly negative).  A level k is refuted
//           exactly when the slit sits in the window (|x| <= k) and
//           depth >= 1/k; a single one-sided obstacle cannot reward slope,
//           so the affine table equals the constant table.
//   quad    the alternating four-slit pattern at +/-p (inner) and +/-q
//           (outer).  The constant family dies once the window reaches p
//           (first refuted level ceil(p) = 2); tilted lines survive until
//           the window reaches the outer pair, so the affine family dies
//           exactly at ceil(q).
//   far     one slit beyond |x| = 25: invisible to every window k <= 8,
//           both families survive everywhere with the exact mid witness.
//
// Draws keep a margin of at least 1e-3 from every decision threshold so the
// expected tables are robust.  Each domain round-trips through the spec
// file format before analysis.
// ---------------------------------------------------------------------------

double dist_to_int(double x) { return std::fabs(x - std::round(x)); }

bool near_depth_threshold(double m) {
  if (std::fabs(m - 2.0) < 1e-3) return true;
  for (int k = 1; k <= 20; ++k) {
    const double step = 1.0 / static_cast<double>(k);
    if (std::fabs(m - (2.0 + step)) < 1e-3 || std::fabs(m - (2.0 - step)) < 1e-3) return true;
  }
  return false;
}

struct GeneratedCase {
  tubelab::DomainSpec domain;
  std::array<bool, kSuiteMaxK> constant_refuted{};
  std::array<bool, kSuiteMaxK> affine_refuted{};
  bool far_shape = false;
  std::string label;
};

GeneratedCase generate_case(int index, std::mt19937_64& rng) {
  GeneratedCase out;
  out.domain.y_lo = 0.0;
  out.domain.y_hi = 4.0;
  out.domain.mid = 2.0;

  const int shape = index % 3;
  if (shape == 0) {
    const bool bottom = (rng() & 1ull) != 0;
    std::uniform_real_distribution<double> tip(1.2, 2.8);
    double m = tip(rng);
    while (near_depth_threshold(m)) m = tip(rng);
    std::uniform_real_distribution<double> abscissa(0.5, 7.0);
    double x = abscissa(rng);
    while (dist_to_int(x) < 1e-2) x = abscissa(rng);
    if ((rng() & 1ull) != 0) x = -x;
    const tubelab::Interval span = bottom ? tubelab::Interval{0.0, m} : tubelab::Interval{m, 4.0};
    out.domain.obstacles.push_back(tubelab::VerticalSlit{x, span});
    const double depth = bottom ? m - 2.0 : 2.0 - m;
    for (int k = 1; k <= kSuiteMaxK; ++k) {
      const bool seen = std::fabs(x) <= static_cast<double>(k);
      const bool refuted = seen && depth >= 1.0 / static_cast<double>(k);
      out.constant_refuted[k - 1] = refuted;
      out.affine_refuted[k - 1] = refuted;
    }
    out.label = "single";
  } else if (shape == 1) {
    std::uniform_real_distribution<double> inner(1.05, 1.95);
    const double p = inner(rng);
    std::uniform_real_distribution<double> outer(3.0, 6.5);
    double q = outer(rng);
    while (dist_to_int(q) < 1e-2) q = outer(rng);
    out.domain.obstacles.push_back(tubelab::VerticalSlit{-q, tubelab::Interval{0.0, 2.0}});
    out.domain.obstacles.push_back(tubelab::VerticalSlit{-p, tubelab::Interval{2.0, 4.0}});
    out.domain.obstacles.push_back(tubelab::VerticalSlit{p, tubelab::Interval{0.0, 2.0}});
    out.domain.obstacles.push_back(tubelab::VerticalSlit{q, tubelab::Interval{2.0, 4.0}});
    for (int k = 1; k <= kSuiteMaxK; ++k) {
      out.constant_refuted[k - 1] = static_cast<double>(k) >= p;
      out.affine_refuted[k - 1] = static_cast<double>(k) >= q;
    }
    out.label = "quad";
  } else {
    std::uniform_real_distribution<double> abscissa(25.0, 40.0);
    double x = abscissa(rng);
    while (dist_to_int(x) < 1e-2) x = abscissa(rng);
    if ((rng() & 1ull) != 0) x = -x;
    const bool bottom = (rng() & 1ull) != 0;
    const tubelab::Interval span =
        bottom ? tubelab::Interval{0.0, 2.0} : tubelab::Interval{2.0, 4.0};
    out.domain.obstacles.push_back(tubelab::VerticalSlit{x, span});
    out.far_shape = true;
    out.label = "far";
  }
  out.label += " case " + std::to_string(index);
  return out;
}

void criterion_6(Check& c) {
  std::mt19937_64 rng(kSuiteSeed);
  for (int index = 0; index < kSuiteCount; ++index) {
    const GeneratedCase expected = generate_case(index, rng);

    // Round-trip through the spec file format; analysis runs on the parse.
    const std::string text = tubelab::write_spec(expected.domain);
    const tubelab::DomainSpec domain = tubelab::parse_spec_text(text);
    c.require(domain.obstacles.size() == expected.domain.obstacles.size(),
              expected.label + ": spec round trip lost obstacles");
    for (std::size_t i = 0; i < domain.obstacles.size(); ++i) {
      const auto& got = std::get<tubelab::VerticalSlit>(domain.obstacles[i]);
      const auto& want = std::get<tubelab::VerticalSlit>(expected.domain.obstacles[i]);
      c.require(got.x == want.x && got.span.lo == want.span.lo && got.span.hi == want.span.hi,
                expected.label + ": spec round trip changed a slit");
    }
    if (!c.ok) return;

    const tubelab::ConstantPropertyReport constant =
        tubelab::check_constant_property(domain, kSuiteMaxK);
    const tubelab::AffinePropertyReport affine =
        tubelab::check_affine_property(domain, kSuiteMaxK);

    for (int k = 1; k <= kSuiteMaxK; ++k) {
      const auto& ce = constant.levels[k - 1];
      const auto& ae = affine.levels[k - 1];
      const bool expect_constant = expected.constant_refuted[k - 1];
      const bool expect_affine = expected.affine_refuted[k - 1];

      c.require(ce.outcome == (expect_constant ? tubelab::KOutcome::Refuted
                                               : tubelab::KOutcome::Witness),
                expected.label + ": " + at("constant outcome", k));
      if (ce.outcome == tubelab::KOutcome::Witness) {
        c.require(ce.witness_b.has_value() &&
                      tubelab::verify_constant_witness(domain, k, *ce.witness_b),
                  expected.label + ": " + at("constant witness verification", k));
        if (expected.far_shape) {
          c.require(ce.witness_b == 2.0, expected.label + ": " + at("mid witness", k));
        }
      } else {
        c.require(!ce.cover.empty(), expected.label + ": " + at("constant cover", k));
      }

      c.require(ae.outcome == (expect_affine ? tubelab::KOutcome::Refuted
                                             : tubelab::KOutcome::Witness),
                expected.label + ": " + at("affine outcome", k));
      c.require(!ae.budget_exhausted, expected.label + ": " + at("affine budget", k));
      if (ae.outcome == tubelab::KOutcome::Witness) {
        c.require(ae.witness.has_value() &&
                      tubelab::verify_affine_witness(domain, k, *ae.witness),
                  expected.label + ": " + at("affine witness verification", k));
      } else if (ae.outcome == tubelab::KOutcome::Refuted) {
        c.require(std::fabs(ae.coverage - 1.0) <= kCoverageTol,
                  expected.label + ": " + at("affine coverage", k));
      }
    }

    c.require(tubelab::check_implications(constant, affine).all_hold(),
              expected.label + ": implications");

    // Verdict-level consistency: if the constant family survives the whole
    // window the affine family must too, and the affine family can never
    // survive a window that kills the constant family.
    using PV = tubelab::PropertyVerdict;
    if (constant.verdict == PV::HoldsUpToK) {
      c.require(affine.verdict == PV::HoldsUpToK,
                expected.label + ": constant survival must lift to affine");
    }
    c.require(!(affine.verdict == PV::HoldsUpToK && constant.verdict == PV::FailsUpToK),
              expected.label + ": affine survival above a dead constant family");
    if (!c.ok) return;
  }
}

// ---------------------------------------------------------------------------
// Criterion 7: toothed preset, end to end through the command line, with the
// tooth/sine disjointness re-proved in process by interval arithmetic.
// ---------------------------------------------------------------------------

void criterion_7(Check& c, Context& ctx) {
  const CliResult run = run_cli(
      ctx.cli,
      "analyze --preset fig2 --K 20 --N 50 --out \"" + ctx.cert2.string() + "\"",
      ctx.dir / "c7_analyze.log");
  c.require(run.exit_code == 0, "analyze exit code " + std::to_string(run.exit_code));
  c.require(run.seconds < kCliTimeLimitSeconds,
            "analyze took " + std::to_string(run.seconds) + " s");
  c.require(fs::exists(ctx.cert2), "certificate file missing");
  if (!c.ok) return;

  const Json doc = Json::parse(read_file(ctx.cert2));
  c.require(doc.at("domain").at("obstacles").at(0).at("kind") == "tooth", "toothed domain");
  check_figure_pattern(c, doc);

  // The witness curve threads between the teeth: validation proves every
  // tooth disjoint from the mid sine graph by adaptive interval bisection
  // (build_figure2 would throw otherwise), and the top-level witness check
  // re-certifies the graph clearance over the widest window.
  const tubelab::DomainSpec figure = tubelab::build_figure2();
  c.require(tubelab::verify_analytic_witness(figure, 20, tubelab::ScaledSineCurve{1, 20, 2.0}),
            "interval verification of the sine witness at k=20");
}

// ---------------------------------------------------------------------------
// Criterion 8: certificates re-verify, and any single-field tamper is
// caught.  Two tampers: a semantic field edit (digest mismatch) and a digit
// flip inside the stored digest itself.
// ---------------------------------------------------------------------------

void criterion_8(Check& c, Context& ctx) {
  c.require(fs::exists(ctx.cert1) && fs::exists(ctx.cert2),
            "certificates from criteria 1 and 7 missing");
  if (!c.ok) return;

  for (const fs::path& cert : {ctx.cert1, ctx.cert2}) {
    const CliResult verify =
        run_cli(ctx.cli, "verify \"" + cert.string() + "\"", ctx.dir / "c8_verify.log");
    c.require(verify.exit_code == 0 && verify.output.find("VERIFIED") != std::string::npos,
              "re-verification of " + cert.filename().string());
  }

  const std::string original = read_file(ctx.cert1);

  std::string tampered = original;
  const std::string needle = "\"first_refuted\": 5";
  const std::size_t field_pos = tampered.find(needle);
  c.require(field_pos != std::string::npos, "tamper target field not found");
  if (field_pos != std::string::npos) {
    tampered[field_pos + needle.size() - 1] = '6';
    const fs::path path = ctx.dir / "tampered_field.json";
    std::ofstream(path) << tampered;
    const CliResult verify =
        run_cli(ctx.cli, "verify \"" + path.string() + "\"", ctx.dir / "c8_tamper1.log");
    c.require(verify.exit_code == 2,
              "tampered field exit code " + std::to_string(verify.exit_code));
    c.require(verify.output.find("digest") != std::string::npos &&
                  verify.output.find("FAILED") != std::string::npos,
              "tampered field must fail the digest check");
  }

  std::string redigested = original;
  const std::string prefix = "fnv1a64:";
  const std::size_t digest_pos = redigested.find(prefix);
  c.require(digest_pos != std::string::npos, "stored digest not found");
  if (digest_pos != std::string::npos) {
    char& digit = redigested[digest_pos + prefix.size()];
    digit = digit == '0' ? '1' : '0';
    const fs::path path = ctx.dir / "tampered_digest.json";
    std::ofstream(path) << redigested;
    const CliResult verify =
        run_cli(ctx.cli, "verify \"" + path.string() + "\"", ctx.dir / "c8_tamper2.log");
    c.require(verify.exit_code == 2,
              "tampered digest exit code " + std::to_string(verify.exit_code));
    c.require(verify.output.find("FAILED") != std::string::npos,
              "tampered digest must fail verification");
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-cli>\n";
    return 2;
  }
  Context ctx;
  ctx.cli = argv[1];
  if (!fs::exists(ctx.cli)) {
    std::cerr << "acceptance: no such binary: " << ctx.cli << "\n";
    return 2;
  }
  ctx.dir = fs::temp_directory_path() / "tubelab-acceptance";
  fs::create_directories(ctx.dir);
  ctx.cert1 = ctx.dir / "figure1.json";
  ctx.cert2 = ctx.dir / "figure2.json";

  std::cout << "acceptance gate: driving " << ctx.cli << "\n";
  std::cout << "artifacts: " << ctx.dir.string() << "\n";

  Gate gate;
  run_criterion(gate, 1, "four-slit preset analyzed and certified end to end",
                [&](Check& c) { criterion_1(c, ctx); });
  run_criterion(gate, 2, "origin derivative norms agree across three routes", criterion_2);
  run_criterion(gate, 3, "containment certification flips exactly at the widened slit",
                criterion_3);
  run_criterion(gate, 4, "holomorphic family matches and satisfies Cauchy-Riemann",
                criterion_4);
  run_criterion(gate, 5, "metric bounds: oracle agreement, exact anchor, certified decay",
                criterion_5);
  run_criterion(gate, 6, "generated fifty-spec corpus matches its analytic level tables",
                criterion_6);
  run_criterion(gate, 7, "toothed preset analyzed, certified, and interval-checked",
                [&](Check& c) { criterion_7(c, ctx); });
  run_criterion(gate, 8, "certificates re-verify and every tamper is detected",
                [&](Check& c) { criterion_8(c, ctx); });

  const int passed = 8 - gate.failures;
  std::cout << "acceptance: " << passed << "/8 criteria passed\n";
  if (gate.failures == 0) {
    std::error_code ec;
    fs::remove_all(ctx.dir, ec);
  }
  return gate.failures == 0 ? 0 : 1;
}
