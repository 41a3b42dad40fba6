// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: analyze | plot | verify | presets.
//
// Exit codes: 0 success, 1 usage error, 2 spec/certificate validation
// failure, 3 budget exhausted during search.

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "tubelab/analysis.hpp"
#include "tubelab/certificate.hpp"
#include "tubelab/errors.hpp"
#include "tubelab/plot.hpp"
#include "tubelab/spec_file.hpp"
#include "tubelab/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSpec = 2;
constexpr int kExitBudget = 3;

struct DomainArgs {
  std::string preset;
  std::string spec_path;
  double tooth_half_width{1.2};
  double tooth_apex_offset{0.0};
};

void add_domain_options(CLI::App* cmd, DomainArgs& args) {
  auto* preset = cmd->add_option("--preset", args.preset,
                                 "Built-in domain: figure1, figure2, strip");
  auto* spec = cmd->add_option("--spec", args.spec_path, "Path to a domain spec file");
  preset->excludes(spec);
  cmd->add_option("--tooth-half-width", args.tooth_half_width,
                  "Half width of the figure2 teeth (preset figure2 only)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tooth-apex-offset", args.tooth_apex_offset,
                  "Outward shift of the figure2 apexes (preset figure2 only)");
}

tubelab::DomainSpec load_domain(const DomainArgs& args) {
  if (!args.preset.empty()) {
    return tubelab::build_preset(args.preset, args.tooth_half_width, args.tooth_apex_offset);
  }
  if (!args.spec_path.empty()) {
    std::ifstream in(args.spec_path);
    if (!in) throw tubelab::SpecError("spec", "cannot open '" + args.spec_path + "'");
    return tubelab::parse_spec(in);
  }
  throw tubelab::SpecError("domain", "one of --preset or --spec is required");
}

std::string domain_label(const DomainArgs& args) {
  if (!args.preset.empty()) return args.preset;
  return args.spec_path;
}

tubelab::Point2 parse_point(const std::string& text) {
  const auto parse_part = [&](std::string part) {
    const auto first = part.find_first_not_of(" \t");
    const auto last = part.find_last_not_of(" \t");
    if (first == std::string::npos) throw tubelab::SpecError("point", "expected 'x1,x2'");
    part = part.substr(first, last - first + 1);
    double value = 0.0;
    const char* begin = part.data();
    const char* end = begin + part.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
      throw tubelab::SpecError("point", "malformed coordinate '" + part + "'");
    }
    return value;
  };
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
    throw tubelab::SpecError("point", "expected 'x1,x2'");
  }
  return {parse_part(text.substr(0, comma)), parse_part(text.substr(comma + 1))};
}

// Re-anchors the analysis at a chosen base point.  The pipeline works at
// (0, mid); the domain is invariant under horizontal translation, so anchoring
// at (x1, mid) is exactly a translation of every obstacle by -x1.  Points off
// the mid line are rejected because the witness families and the default
// metric samples are tied to the mid line by construction.
tubelab::DomainSpec anchored_at(tubelab::DomainSpec d, const tubelab::Point2& p) {
  if (p.x2 != d.mid) {
    std::ostringstream msg;
    msg << "base point must lie on the mid line x2 = " << d.mid;
    throw tubelab::SpecError("point", msg.str());
  }
  if (p.x1 != 0.0) {
    for (tubelab::Obstacle& ob : d.obstacles) {
      if (auto* slit = std::get_if<tubelab::VerticalSlit>(&ob)) {
        slit->x -= p.x1;
      } else {
        std::get<tubelab::SmoothTooth>(ob).apex_x -= p.x1;
      }
    }
    tubelab::validate_domain(d);
  }
  if (!tubelab::contains(d, {0.0, d.mid})) {
    throw tubelab::SpecError("point", "base point lies on an obstacle");
  }
  return d;
}

// Compresses per-level outcomes into runs, e.g. "witness k=1..4; refuted k=5..20".
template <typename Level>
std::string outcome_runs(const std::vector<Level>& levels) {
  std::ostringstream out;
  std::size_t i = 0;
  bool first = true;
  while (i < levels.size()) {
    std::size_t j = i;
    while (j + 1 < levels.size() && levels[j + 1].outcome == levels[i].outcome) ++j;
    const char* name = levels[i].outcome == tubelab::KOutcome::Witness   ? "witness"
                       : levels[i].outcome == tubelab::KOutcome::Refuted ? "refuted"
                                                                         : "unknown";
    if (!first) out << "; ";
    first = false;
    out << name << " k=" << levels[i].k;
    if (j > i) out << ".." << levels[j].k;
    i = j + 1;
  }
  return out.str();
}

const char* verdict_name(tubelab::PropertyVerdict v) {
  switch (v) {
    case tubelab::PropertyVerdict::HoldsUpToK: return "holds_up_to_k";
    case tubelab::PropertyVerdict::FailsUpToK: return "fails_up_to_k";
    default: return "inconclusive";
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw tubelab::SpecError("out", "cannot write '" + path + "'");
  out << content;
}

int cmd_analyze(const DomainArgs& domain_args, const std::string& point_str,
                const tubelab::RunConfig& config, const std::string& out_path) {
  tubelab::DomainSpec d = load_domain(domain_args);
  if (!point_str.empty()) d = anchored_at(std::move(d), parse_point(point_str));
  const tubelab::HyperbolicityReport report = tubelab::run_analysis(d, config);
  const tubelab::Json certificate = tubelab::make_certificate(report);
  const std::string rendered = certificate.dump(2) + "\n";

  std::ostream& info = out_path.empty() ? std::cerr : std::cout;
  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    write_text_file(out_path, rendered);
  }

  info << "domain: " << domain_label(domain_args) << " (" << d.obstacles.size()
       << " obstacles)\n";
  info << "constant:    " << outcome_runs(report.constant.levels) << " -> "
       << verdict_name(report.constant.verdict) << "\n";
  info << "affine:      " << outcome_runs(report.affine.levels) << " -> "
       << verdict_name(report.affine.verdict) << "\n";
  info << "analytic:    " << outcome_runs(report.analytic.levels) << " -> "
       << verdict_name(report.analytic.verdict) << "\n";
  const auto& rows = report.obstruction.rows;
  info << "obstruction: "
       << (report.obstruction.verdict == tubelab::ObstructionVerdict::NonHyperbolicityWitness
               ? "non_hyperbolicity_witness"
               : "not_established");
  if (!rows.empty()) {
    info << " (n=1.." << rows.back().n << ", |df_n(0)| " << rows.front().origin_norm << " -> "
         << rows.back().origin_norm << ")";
  }
  info << "\n";
  std::size_t consistent = 0;
  for (const auto& s : report.samples) consistent += s.bracket.consistent ? 1 : 0;
  info << "metric samples: " << consistent << "/" << report.samples.size() << " consistent\n";
  if (!out_path.empty()) {
    info << "certificate: " << out_path << " (" << certificate["digest"].get<std::string>()
         << ")\n";
  }

  if (report.budget_exhausted()) {
    std::cerr << "warning: search budget exhausted; some levels are unknown\n";
    return kExitBudget;
  }
  return kExitOk;
}

int cmd_plot(const DomainArgs& domain_args, const std::string& format,
             const std::string& out_path, std::optional<int> witness_k,
             std::optional<int> band_n, int scan_n) {
  const tubelab::DomainSpec d = load_domain(domain_args);
  if (format == "svg") {
    tubelab::PlotOptions opt;
    opt.witness_k = witness_k;
    opt.band_n = band_n;
    write_text_file(out_path, tubelab::render_svg(d, opt));
  } else if (format == "csv") {
    tubelab::ScanConfig scan;
    scan.max_index = scan_n;
    write_text_file(out_path, tubelab::write_scan_csv(tubelab::obstruction_scan(d, scan)));
  } else {
    throw tubelab::SpecError("format", "expected svg or csv");
  }
  std::cout << "wrote " << format << " to " << out_path << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& in_path) {
  std::ifstream in(in_path);
  if (!in) throw tubelab::SpecError("input", "cannot open '" + in_path + "'");
  tubelab::Json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw tubelab::SpecError("input", std::string("malformed JSON: ") + e.what());
  }
  const tubelab::VerifyOutcome outcome = tubelab::verify_certificate(doc);
  for (const auto& [label, pass] : outcome.checks) {
    std::cout << "  [" << (pass ? " ok " : "FAIL") << "] " << label << "\n";
  }
  for (const std::string& err : outcome.errors) std::cout << "  error: " << err << "\n";
  std::cout << (outcome.ok ? "VERIFIED" : "FAILED") << "\n";
  return outcome.ok ? kExitOk : kExitSpec;
}

int cmd_presets() {
  std::cout << "figure1  strip 0 < x2 < 4 with four vertical slits alternating between the\n"
            << "         bottom and top halves at -3pi/2, -pi/2, pi/2, 3pi/2 (alias fig1)\n"
            << "figure2  (alias fig2) the same strip with the slits replaced by smooth teeth\n"
            << "         (apexes touching the mid line; options --tooth-half-width,\n"
            << "         --tooth-apex-offset)\n"
            << "strip    the bare strip 0 < x2 < 4 with no obstacles\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rigorous analysis of tube-domain bases: witness-family properties,\n"
               "containment certificates, and two-sided Kobayashi metric bounds."};
  app.set_version_flag("--version", std::string(tubelab::kToolVersion));
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Run the full analysis and emit a certificate");
  DomainArgs analyze_domain;
  add_domain_options(analyze, analyze_domain);
  tubelab::RunConfig config;
  std::string out_path;
  std::string point_str;
  analyze->add_option("--point", point_str,
                      "Base point 'x1,x2' for the analysis (must lie on the mid line; "
                      "the domain is re-anchored by an exact horizontal translation)");
  analyze->add_option("--K", config.max_k, "Highest property level to decide")
      ->check(CLI::Range(1, 64));
  analyze->add_option("--N", config.scan.max_index, "Highest witness index in the scan")
      ->check(CLI::Range(1, tubelab::kMaxWitnessIndex));
  analyze->add_option("--growth", config.scan.growth_factor,
                      "Required overall derivative growth for the obstruction verdict")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--depth", config.search.max_depth, "Max subdivision depth of the search")
      ->check(CLI::Range(1, 64));
  analyze->add_option("--graph-depth", config.geometry.max_depth,
                      "Max subdivision depth of graph containment checks")
      ->check(CLI::Range(1, 64));
  analyze->add_option("--budget", config.search.node_budget,
                      "Node budget per search level");
  analyze->add_option("--out", out_path, "Write the certificate to this file");

  // plot
  auto* plot = app.add_subcommand("plot", "Render the domain (svg) or scan data (csv)");
  DomainArgs plot_domain;
  add_domain_options(plot, plot_domain);
  std::string plot_out;
  std::string plot_format{"svg"};
  int plot_witness_k = 0;
  int plot_band_n = 0;
  int plot_scan_n = 50;
  plot->add_option("--out", plot_out, "Output file")->required();
  plot->add_option("--format", plot_format, "svg or csv")
      ->check(CLI::IsMember({"svg", "csv"}));
  plot->add_option("--witness-k", plot_witness_k,
                   "Overlay the analytic witness at this level (svg)")
      ->check(CLI::Range(1, 64));
  plot->add_option("--band-n", plot_band_n, "Shade the image band of f_n (svg)")
      ->check(CLI::Range(1, tubelab::kMaxWitnessIndex));
  plot->add_option("--N", plot_scan_n, "Scan rows for csv output")
      ->check(CLI::Range(1, tubelab::kMaxWitnessIndex));

  // verify
  auto* verify = app.add_subcommand("verify", "Check a certificate's digest and claims");
  std::string verify_in;
  verify->add_option("input", verify_in, "Certificate JSON file")->required();

  // presets
  app.add_subcommand("presets", "List the built-in domains");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand("analyze")) {
      return cmd_analyze(analyze_domain, point_str, config, out_path);
    }
    if (app.got_subcommand("plot")) {
      return cmd_plot(plot_domain, plot_format, plot_out,
                      plot_witness_k > 0 ? std::optional<int>(plot_witness_k) : std::nullopt,
                      plot_band_n > 0 ? std::optional<int>(plot_band_n) : std::nullopt,
                      plot_scan_n);
    }
    if (app.got_subcommand("verify")) return cmd_verify(verify_in);
    if (app.got_subcommand("presets")) return cmd_presets();
  } catch (const tubelab::SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSpec;
  } catch (const tubelab::BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSpec;
  }
  return kExitUsage;
}
