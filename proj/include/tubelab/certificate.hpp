// SPDX-License-Identifier: Apache-2.0
//
// Certificates: a complete analysis report serialized to canonical JSON
// with an integrity digest, plus the reverse direction -- parsing a
// certificate back and re-verifying every claim it makes.
//
// Canonical form: objects hold sorted keys (the default std::map-backed
// JSON object) and numbers print in shortest round-trip form, so
// serialize -> parse -> serialize is byte-identical.  The digest is FNV-1a
// (64-bit) over the compact dump with the digest field blanked, making the
// certificate whitespace-insensitive but value-sensitive.
//
// Verification never re-runs any search.  Witnesses are re-checked through
// the public geometry queries; refutations are re-checked cell by cell /
// interval by interval against the recorded reasons; scan rows and metric
// bounds are recomputed deterministically and compared.

#pragma once

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tubelab/analysis.hpp"
#include "tubelab/errors.hpp"
#include "tubelab/version.hpp"

namespace tubelab {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Digest
// ---------------------------------------------------------------------------

[[nodiscard]] inline std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

[[nodiscard]] inline std::string digest_of(Json doc) {
  doc["digest"] = "";
  const std::string canonical = doc.dump();
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(canonical);
  return out.str();
}

// ---------------------------------------------------------------------------
// Enum <-> string
// ---------------------------------------------------------------------------

namespace detail {

[[nodiscard]] inline std::string to_string(KOutcome o) {
  switch (o) {
    case KOutcome::Witness: return "witness";
    case KOutcome::Refuted: return "refuted";
    default: return "unknown";
  }
}

[[nodiscard]] inline std::string to_string(PropertyVerdict v) {
  switch (v) {
    case PropertyVerdict::HoldsUpToK: return "holds_up_to_k";
    case PropertyVerdict::FailsUpToK: return "fails_up_to_k";
    default: return "inconclusive";
  }
}

[[nodiscard]] inline std::string to_string(ImageStatus s) {
  switch (s) {
    case ImageStatus::Contained: return "contained";
    case ImageStatus::NotContained: return "not_contained";
    default: return "undecided";
  }
}

[[nodiscard]] inline std::string to_string(ObstructionVerdict v) {
  return v == ObstructionVerdict::NonHyperbolicityWitness ? "non_hyperbolicity_witness"
                                                          : "not_established";
}

// Finite numbers serialize as numbers; infinities as null (JSON has no inf).
[[nodiscard]] inline Json finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

[[nodiscard]] inline Json to_json(const DomainSpec& d) {
  Json obstacles = Json::array();
  for (const Obstacle& ob : d.obstacles) {
    if (const auto* slit = std::get_if<VerticalSlit>(&ob)) {
      obstacles.push_back({{"kind", "slit"},
                           {"x", slit->x},
                           {"span", Json::array({slit->span.lo, slit->span.hi})}});
    } else {
      const auto& tooth = std::get<SmoothTooth>(ob);
      obstacles.push_back({{"kind", "tooth"},
                           {"side", tooth.side == ToothSide::Bottom ? "bottom" : "top"},
                           {"apex_x", tooth.apex_x},
                           {"half_width", tooth.half_width}});
    }
  }
  return {{"y_lo", d.y_lo}, {"y_hi", d.y_hi}, {"mid", d.mid}, {"obstacles", obstacles}};
}

[[nodiscard]] inline Json to_json(const RunConfig& c) {
  return {{"max_k", c.max_k},
          {"scan", {{"max_index", c.scan.max_index}, {"growth_factor", c.scan.growth_factor}}},
          {"search",
           {{"max_depth", c.search.max_depth},
            {"min_width", c.search.min_width},
            {"node_budget", c.search.node_budget}}},
          {"geometry",
           {{"max_depth", c.geometry.max_depth}, {"min_width", c.geometry.min_width}}}};
}

[[nodiscard]] inline Json to_json(const ConstantPropertyReport& r) {
  Json levels = Json::array();
  for (const ConstantEvidence& ev : r.levels) {
    Json level{{"k", ev.k}, {"outcome", detail::to_string(ev.outcome)}};
    if (ev.outcome == KOutcome::Witness) level["witness_b"] = *ev.witness_b;
    if (ev.outcome == KOutcome::Refuted) {
      Json cover = Json::array();
      for (const BlockedInterval& b : ev.cover) {
        cover.push_back({{"obstacle", b.obstacle_index},
                         {"range", Json::array({b.range.lo, b.range.hi})}});
      }
      level["cover"] = cover;
    }
    levels.push_back(level);
  }
  Json out{{"levels", levels}, {"verdict", detail::to_string(r.verdict)}};
  out["first_refuted"] = r.first_refuted ? Json(*r.first_refuted) : Json(nullptr);
  return out;
}

[[nodiscard]] inline Json to_json(const AffinePropertyReport& r) {
  Json levels = Json::array();
  for (const AffineEvidence& ev : r.levels) {
    Json level{{"k", ev.k},
               {"outcome", detail::to_string(ev.outcome)},
               {"nodes", ev.nodes_visited},
               {"budget_exhausted", ev.budget_exhausted}};
    if (ev.outcome == KOutcome::Witness) {
      level["witness"] = {{"slope", ev.witness->slope}, {"offset", ev.witness->offset}};
    }
    if (ev.outcome == KOutcome::Refuted) {
      Json cells = Json::array();
      for (const RefutedCell& cell : ev.cells) {
        cells.push_back({{"c", Json::array({cell.cell.x.lo, cell.cell.x.hi})},
                         {"d", Json::array({cell.cell.y.lo, cell.cell.y.hi})},
                         {"reason", cell.reason}});
      }
      level["cells"] = cells;
      level["coverage"] = ev.coverage;
    }
    levels.push_back(level);
  }
  Json out{{"levels", levels}, {"verdict", detail::to_string(r.verdict)}};
  out["first_refuted"] = r.first_refuted ? Json(*r.first_refuted) : Json(nullptr);
  return out;
}

[[nodiscard]] inline Json to_json(const AnalyticPropertyReport& r) {
  Json levels = Json::array();
  for (const AnalyticEvidence& ev : r.levels) {
    levels.push_back({{"k", ev.k},
                      {"outcome", detail::to_string(ev.outcome)},
                      {"curve",
                       {{"amp_num", ev.curve.amp_num},
                        {"amp_den", ev.curve.amp_den},
                        {"offset", ev.curve.offset}}}});
  }
  Json out{{"levels", levels}, {"verdict", detail::to_string(r.verdict)}};
  out["first_refuted"] = r.first_refuted ? Json(*r.first_refuted) : Json(nullptr);
  return out;
}

[[nodiscard]] inline Json to_json(const ObstructionScan& scan) {
  Json rows = Json::array();
  for (const ObstructionRow& row : scan.rows) {
    Json r{{"n", row.n},
           {"status", detail::to_string(row.status)},
           {"origin_norm", row.origin_norm},
           {"upper_bound", row.upper_bound}};
    r["escape"] =
        row.escape ? Json::array({row.escape->x1, row.escape->x2}) : Json(nullptr);
    rows.push_back(r);
  }
  return {{"base", Json::array({scan.base.x1, scan.base.x2})},
          {"rows", rows},
          {"verdict", detail::to_string(scan.verdict)}};
}

[[nodiscard]] inline Json to_json(const MetricSample& s) {
  Json out{{"point", Json::array({s.point.x1, s.point.x2})},
           {"direction",
            Json::array({Json::array({s.direction.v1.real(), s.direction.v1.imag()}),
                         Json::array({s.direction.v2.real(), s.direction.v2.imag()})})},
           {"lower", s.bracket.lower},
           {"upper", detail::finite_or_null(s.bracket.upper)},
           {"consistent", s.bracket.consistent}};
  if (s.upper_disc) {
    out["upper_disc"] = {{"type", s.upper_disc->type},
                         {"n", s.upper_disc->n},
                         {"radius", s.upper_disc->radius}};
  } else {
    out["upper_disc"] = nullptr;
  }
  return out;
}

[[nodiscard]] inline Json make_certificate(const HyperbolicityReport& report) {
  Json samples = Json::array();
  for (const MetricSample& s : report.samples) samples.push_back(to_json(s));
  Json doc{{"schema_version", kSchemaVersion},
           {"tool_version", kToolVersion},
           {"kind", "hyperbolicity_report"},
           {"domain", to_json(report.domain)},
           {"config", to_json(report.config)},
           {"results",
            {{"constant", to_json(report.constant)},
             {"affine", to_json(report.affine)},
             {"analytic", to_json(report.analytic)},
             {"obstruction", to_json(report.obstruction)},
             {"metric_samples", samples},
             {"implications",
              {{"constant_witness_lifts", report.implications.constant_witness_lifts},
               {"affine_refutation_dominates",
                report.implications.affine_refutation_dominates}}}}}};
  doc["digest"] = digest_of(doc);
  return doc;
}

// ---------------------------------------------------------------------------
// Parsing helpers
// ---------------------------------------------------------------------------

namespace detail {

[[nodiscard]] inline const Json& require(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw SpecError(key, "missing field");
  return *it;
}

[[nodiscard]] inline double require_number(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number()) throw SpecError(key, "expected a number");
  return v.get<double>();
}

[[nodiscard]] inline Interval require_pair(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw SpecError(key, "expected [lo, hi]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace detail

[[nodiscard]] inline DomainSpec domain_from_json(const Json& j) {
  DomainSpec d;
  d.y_lo = detail::require_number(j, "y_lo");
  d.y_hi = detail::require_number(j, "y_hi");
  d.mid = detail::require_number(j, "mid");
  const Json& obstacles = detail::require(j, "obstacles");
  if (!obstacles.is_array()) throw SpecError("obstacles", "expected an array");
  for (const Json& ob : obstacles) {
    const std::string kind = detail::require(ob, "kind").get<std::string>();
    if (kind == "slit") {
      d.obstacles.push_back(
          VerticalSlit{detail::require_number(ob, "x"), detail::require_pair(ob, "span")});
    } else if (kind == "tooth") {
      const std::string side = detail::require(ob, "side").get<std::string>();
      if (side != "bottom" && side != "top") throw SpecError("side", "expected bottom or top");
      d.obstacles.push_back(SmoothTooth{side == "bottom" ? ToothSide::Bottom : ToothSide::Top,
                                        detail::require_number(ob, "apex_x"),
                                        detail::require_number(ob, "half_width")});
    } else {
      throw SpecError("kind", "expected slit or tooth");
    }
  }
  return d;
}

[[nodiscard]] inline RunConfig config_from_json(const Json& j) {
  RunConfig c;
  c.max_k = detail::require(j, "max_k").get<int>();
  const Json& scan = detail::require(j, "scan");
  c.scan.max_index = detail::require(scan, "max_index").get<int>();
  c.scan.growth_factor = detail::require_number(scan, "growth_factor");
  const Json& search = detail::require(j, "search");
  c.search.max_depth = detail::require(search, "max_depth").get<int>();
  c.search.min_width = detail::require_number(search, "min_width");
  c.search.node_budget = detail::require(search, "node_budget").get<std::size_t>();
  const Json& geometry = detail::require(j, "geometry");
  c.geometry.max_depth = detail::require(geometry, "max_depth").get<int>();
  c.geometry.min_width = detail::require_number(geometry, "min_width");
  return c;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

struct VerifyOutcome {
  bool ok{true};
  std::vector<std::pair<std::string, bool>> checks;
  std::vector<std::string> errors;

  void record(const std::string& label, bool pass, const std::string& detail = "") {
    checks.emplace_back(label, pass);
    if (!pass) {
      ok = false;
      errors.push_back(detail.empty() ? label + ": failed" : label + ": " + detail);
    }
  }
};

namespace detail {

// Re-verifies a single recorded refutation reason on one (c, d) cell.
[[nodiscard]] inline bool reverify_refuted_cell(const DomainSpec& d, int k, const Box& cell,
                                                const std::string& reason) {
  const Interval C = cell.x;
  const Interval D = cell.y;
  if (reason == "deviation") {
    const Interval dev =
        Interval(static_cast<double>(k)) * abs(C) + abs(D - Interval(d.mid));
    return dev.lo > rational(1, k).hi;
  }
  const auto colon = reason.find(':');
  if (colon == std::string::npos) return false;
  const std::string tag = reason.substr(0, colon);
  std::size_t index = 0;
  try {
    index = static_cast<std::size_t>(std::stoul(reason.substr(colon + 1)));
  } catch (const std::exception&) {
    return false;
  }
  if (index >= d.obstacles.size()) return false;
  const Interval window{-static_cast<double>(k), static_cast<double>(k)};
  if (tag == "slit") {
    const auto* slit = std::get_if<VerticalSlit>(&d.obstacles[index]);
    if (slit == nullptr || !window.contains(slit->x)) return false;
    const Interval A = C * Interval(slit->x) + D;
    const bool bottom_type = slit->span.lo <= d.y_lo;
    const bool top_type = slit->span.hi >= d.y_hi;
    return (bottom_type && A.hi <= slit->span.hi) || (top_type && A.lo >= slit->span.lo) ||
           (A.lo >= slit->span.lo && A.hi <= slit->span.hi);
  }
  if (tag == "tooth") {
    const auto* tooth = std::get_if<SmoothTooth>(&d.obstacles[index]);
    if (tooth == nullptr) return false;
    const auto overlap = intersection(window, tooth->foot());
    if (!overlap) return false;
    const double x_star = std::clamp(tooth->apex_x, overlap->lo, overlap->hi);
    const Interval h = tooth_curve_enclosure(d, *tooth, Interval(x_star));
    const Interval A = C * Interval(x_star) + D;
    return tooth->side == ToothSide::Bottom ? A.hi <= h.lo : A.lo >= h.hi;
  }
  return false;
}

// Re-verifies one blocked-heights cover entry at level k.
[[nodiscard]] inline bool reverify_cover_entry(const DomainSpec& d, int k, int obstacle_index,
                                               const Interval& range) {
  if (obstacle_index < 0 || static_cast<std::size_t>(obstacle_index) >= d.obstacles.size()) {
    return false;
  }
  const auto& ob = d.obstacles[static_cast<std::size_t>(obstacle_index)];
  if (const auto* slit = std::get_if<VerticalSlit>(&ob)) {
    if (std::fabs(slit->x) > static_cast<double>(k)) return false;
    return range.lo >= slit->span.lo && range.hi <= slit->span.hi;
  }
  const auto& tooth = std::get<SmoothTooth>(ob);
  const auto overlap =
      intersection(Interval{-static_cast<double>(k), static_cast<double>(k)}, tooth.foot());
  if (!overlap) return false;
  const double x_star = std::clamp(tooth.apex_x, overlap->lo, overlap->hi);
  const Interval h = tooth_curve_enclosure(d, tooth, Interval(x_star));
  // Blocked heights extend downward from h for a bottom tooth (lower b hits
  // the tooth or the strip boundary), upward for a top tooth.
  return tooth.side == ToothSide::Bottom ? range.hi <= h.lo : range.lo >= h.hi;
}

}  // namespace detail

[[nodiscard]] inline VerifyOutcome verify_certificate(const Json& doc) {
  VerifyOutcome out;

  // Schema and digest come first: nothing else is meaningful without them.
  const auto version_it = doc.find("schema_version");
  const int version =
      version_it != doc.end() && version_it->is_number_integer() ? version_it->get<int>() : -1;
  if (version != kSchemaVersion) {
    out.record("schema_version", false,
               "unsupported schema_version " + std::to_string(version) + "; this tool reads " +
                   std::to_string(kSchemaVersion) +
                   " (regenerate the certificate with a matching tool version)");
    return out;
  }
  out.record("schema_version", true);

  const auto digest_it = doc.find("digest");
  const std::string stored = digest_it != doc.end() ? digest_it->get<std::string>() : "";
  const std::string recomputed = digest_of(doc);
  out.record("digest", stored == recomputed,
             "stored " + stored + " != recomputed " + recomputed);
  if (!out.ok) return out;

  DomainSpec d;
  RunConfig config;
  try {
    if (detail::require(doc, "kind").get<std::string>() != "hyperbolicity_report") {
      throw SpecError("kind", "expected hyperbolicity_report");
    }
    d = domain_from_json(detail::require(doc, "domain"));
    validate_domain(d);
    config = config_from_json(detail::require(doc, "config"));
    out.record("domain", true);
  } catch (const std::exception& e) {
    out.record("domain", false, e.what());
    return out;
  }

  const Json& results = doc["results"];

  // Constant property.
  {
    bool pass = true;
    std::string why;
    for (const Json& level : detail::require(results["constant"], "levels")) {
      const int k = level["k"].get<int>();
      const std::string outcome = level["outcome"].get<std::string>();
      if (outcome == "witness") {
        if (!verify_constant_witness(d, k, level["witness_b"].get<double>())) {
          pass = false;
          why = "k=" + std::to_string(k) + ": witness failed re-verification";
          break;
        }
      } else if (outcome == "refuted") {
        const Interval radius = rational(1, k);
        const double lo = std::max(d.y_lo, (Interval(d.mid) - radius).lo);
        const double hi = std::min(d.y_hi, (Interval(d.mid) + radius).hi);
        std::vector<Interval> pieces;
        bool entries_ok = true;
        for (const Json& entry : level["cover"]) {
          const Interval range = detail::require_pair(entry, "range");
          if (!detail::reverify_cover_entry(d, k, entry["obstacle"].get<int>(), range)) {
            entries_ok = false;
            break;
          }
          pieces.push_back(range);
        }
        if (!entries_ok || !intervals_cover(pieces, lo, hi)) {
          pass = false;
          why = "k=" + std::to_string(k) + ": refutation cover failed re-verification";
          break;
        }
      }
    }
    out.record("constant", pass, why);
  }

  // Affine property.
  {
    bool pass = true;
    std::string why;
    for (const Json& level : detail::require(results["affine"], "levels")) {
      const int k = level["k"].get<int>();
      const std::string outcome = level["outcome"].get<std::string>();
      if (outcome == "witness") {
        const AffineCurve curve{level["witness"]["slope"].get<double>(),
                                level["witness"]["offset"].get<double>()};
        if (!verify_affine_witness(d, k, curve, config.geometry)) {
          pass = false;
          why = "k=" + std::to_string(k) + ": witness failed re-verification";
          break;
        }
      } else if (outcome == "refuted") {
        const double c_half = rational(1, k * k).hi;
        const double d_half = rational(1, k).hi;
        const Box root{{-c_half, c_half}, {d.mid - d_half, d.mid + d_half}};
        const double root_area = root.x.width() * root.y.width();
        double covered = 0.0;
        bool cells_ok = true;
        for (const Json& cell_json : level["cells"]) {
          const Interval c_range = detail::require_pair(cell_json, "c");
          const Interval d_range = detail::require_pair(cell_json, "d");
          const Box cell{c_range, d_range};
          if (!(c_range.lo >= root.x.lo && c_range.hi <= root.x.hi &&
                d_range.lo >= root.y.lo && d_range.hi <= root.y.hi)) {
            cells_ok = false;
            break;
          }
          if (!detail::reverify_refuted_cell(d, k, cell,
                                             cell_json["reason"].get<std::string>())) {
            cells_ok = false;
            break;
          }
          covered += c_range.width() * d_range.width();
        }
        const bool area_ok =
            root_area > 0.0 && std::fabs(covered - root_area) <= 1e-12 * root_area;
        if (!cells_ok || !area_ok) {
          pass = false;
          why = "k=" + std::to_string(k) + ": refutation cells failed re-verification";
          break;
        }
      }
    }
    out.record("affine", pass, why);
  }

  // Analytic property.
  {
    bool pass = true;
    std::string why;
    for (const Json& level : detail::require(results["analytic"], "levels")) {
      const int k = level["k"].get<int>();
      if (level["outcome"].get<std::string>() == "witness") {
        const Json& curve_json = level["curve"];
        const ScaledSineCurve curve{curve_json["amp_num"].get<std::int64_t>(),
                                    curve_json["amp_den"].get<std::int64_t>(),
                                    curve_json["offset"].get<double>()};
        if (!verify_analytic_witness(d, k, curve, config.geometry)) {
          pass = false;
          why = "k=" + std::to_string(k) + ": witness failed re-verification";
          break;
        }
      }
    }
    out.record("analytic", pass, why);
  }

  // Obstruction scan.
  {
    bool pass = true;
    std::string why;
    const Json& scan = results["obstruction"];
    bool all_contained = true;
    bool strictly_increasing = true;
    double first_norm = 0.0;
    double last_norm = 0.0;
    double prev_norm = -1.0;
    std::size_t row_count = 0;
    for (const Json& row : detail::require(scan, "rows")) {
      const int n = row["n"].get<int>();
      const ContainmentResult c = verify_containment(d, n, config.geometry);
      const double norm = origin_operator_norm(n);
      const double claimed_norm = row["origin_norm"].get<double>();
      const double claimed_upper = row["upper_bound"].get<double>();
      if (detail::to_string(c.status) != row["status"].get<std::string>() ||
          std::fabs(claimed_norm - norm) > 1e-12 * norm ||
          std::fabs(claimed_upper - 1.0 / norm) > 1e-12 / norm) {
        pass = false;
        why = "n=" + std::to_string(n) + ": row failed recomputation";
        break;
      }
      if (c.status == ImageStatus::NotContained) {
        if (!row["escape"].is_array()) {
          pass = false;
          why = "n=" + std::to_string(n) + ": missing escape point";
          break;
        }
        const Point2 escape{row["escape"][0].get<double>(), row["escape"][1].get<double>()};
        const Interval fiber = band_enclosure(d, n, Interval(escape.x1));
        if (contains(d, escape) || !fiber.contains(escape.x2)) {
          pass = false;
          why = "n=" + std::to_string(n) + ": escape point failed re-verification";
          break;
        }
      }
      if (c.status != ImageStatus::Contained) all_contained = false;
      if (row_count > 0 && !(norm > prev_norm)) strictly_increasing = false;
      if (row_count == 0) first_norm = norm;
      last_norm = norm;
      prev_norm = norm;
      ++row_count;
    }
    if (pass) {
      const bool grew = row_count >= 2 && last_norm >= config.scan.growth_factor * first_norm;
      const std::string expected =
          detail::to_string(all_contained && strictly_increasing && grew
                                ? ObstructionVerdict::NonHyperbolicityWitness
                                : ObstructionVerdict::NotEstablished);
      if (expected != scan["verdict"].get<std::string>()) {
        pass = false;
        why = "verdict mismatch";
      }
    }
    out.record("obstruction", pass, why);
  }

  // Metric samples.
  {
    bool pass = true;
    std::string why;
    for (const Json& sample : detail::require(results, "metric_samples")) {
      const Point2 p{sample["point"][0].get<double>(), sample["point"][1].get<double>()};
      const CVec2 v{{sample["direction"][0][0].get<double>(),
                     sample["direction"][0][1].get<double>()},
                    {sample["direction"][1][0].get<double>(),
                     sample["direction"][1][1].get<double>()}};
      const double lower = tube_lower_bound(d, p, v);
      if (std::fabs(lower - sample["lower"].get<double>()) > 1e-12 * (1.0 + lower)) {
        pass = false;
        why = "lower bound failed recomputation";
        break;
      }
      const Json& disc_json = sample["upper_disc"];
      if (disc_json.is_null()) {
        if (!sample["upper"].is_null()) {
          pass = false;
          why = "upper bound present without a certifying disc";
          break;
        }
        continue;
      }
      const std::string type = disc_json["type"].get<std::string>();
      std::optional<double> upper;
      if (type == "affine") {
        upper = upper_bound_from_disc(
            d, AffineDisc{p, v, disc_json["radius"].get<double>()}, p, v);
      } else if (type == "witness") {
        upper = upper_bound_from_disc(
            d, WitnessDisc{disc_json["n"].get<int>(), disc_json["radius"].get<double>()}, p, v);
      }
      const double claimed = sample["upper"].get<double>();
      if (!upper || std::fabs(*upper - claimed) > 1e-9 * (1.0 + claimed)) {
        pass = false;
        why = "upper bound failed re-certification";
        break;
      }
      if (claimed < lower * (1.0 - 1e-9)) {
        pass = false;
        why = "bracket inconsistent: upper below lower";
        break;
      }
    }
    out.record("metric_samples", pass, why);
  }

  // Implications between the recorded per-level outcomes.
  {
    bool lifts = true;
    bool dominates = true;
    const Json& constant_levels = results["constant"]["levels"];
    const Json& affine_levels = results["affine"]["levels"];
    const std::size_t n = std::min(constant_levels.size(), affine_levels.size());
    for (std::size_t i = 0; i < n; ++i) {
      const std::string c = constant_levels[i]["outcome"].get<std::string>();
      const std::string a = affine_levels[i]["outcome"].get<std::string>();
      if (c == "witness" && a != "witness") lifts = false;
      if (a == "refuted" && c != "refuted") dominates = false;
    }
    const Json& claimed = results["implications"];
    const bool pass = claimed["constant_witness_lifts"].get<bool>() == lifts &&
                      claimed["affine_refutation_dominates"].get<bool>() == dominates &&
                      lifts && dominates;
    out.record("implications", pass, pass ? "" : "implication invariants violated");
  }

  return out;
}

}  // namespace tubelab
