#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "e4/acceptance.hpp"
#include "e4/error.hpp"
#include "e4/io.hpp"
#include "e4/loci.hpp"
#include "e4/topology.hpp"
#include "e4/tracer.hpp"

namespace {

using e4::Error;
using e4::ErrorKind;
using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNumerical = 3 };

struct RunConfig {
  std::vector<double> axes;
  double eps_deg = e4::kDefaultEpsDeg;
  double step = 0.0;
  double max_arclen = 0.0;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 20240601;
  int grid = 24;
  std::vector<double> point;
  int field = 1;
  std::vector<std::string> curve_files;
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidAxes:
    case ErrorKind::DomainViolation:
    case ErrorKind::OnCoordinateHyperplane:
    case ErrorKind::PoleContact:
    case ErrorKind::SeedDegenerate:
    case ErrorKind::WrongSignature:
    case ErrorKind::CurvesTooClose:
    case ErrorKind::Io:
    case ErrorKind::Usage: return kUsage;
    default: return kNumerical;
  }
}

e4::Ellipsoid4 surface_of(const RunConfig& c) {
  if (c.axes.size() != 4) throw Error(ErrorKind::Usage, "--axes needs four semi-axes");
  for (double a : c.axes)
    if (!(std::isfinite(a) && a > 0)) throw Error(ErrorKind::InvalidAxes, "semi-axes must be positive and finite");
  return e4::Ellipsoid4(std::array<double, 4>{c.axes[0], c.axes[1], c.axes[2], c.axes[3]});
}

json report(const e4::Ellipsoid4& s, const std::string& command, json params) {
  json j;
  j["surface"] = e4::surface_json(s);
  j["command"] = command;
  j["params"] = std::move(params);
  return j;
}

// Writes to --out, or to stdout when no path is given.
void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, "cannot write " + c.out);
  f << text;
}

std::string file_stem(const std::string& name) {
  std::string s;
  for (char ch : name) {
    if (ch == '+') s += "_plus";
    else if (ch == '-') s += "_minus";
    else if (std::isalnum(static_cast<unsigned char>(ch))) s += ch;
    else s += '_';
  }
  return s;
}

int cmd_classify(const RunConfig& c, bool as_json) {
  const e4::Ellipsoid4 s = surface_of(c);
  const e4::CanonicalForm cf = s.canonical();
  if (as_json) {
    json j = report(s, "classify", json::object());
    j["results"] = {{"canonical_axes", cf.surface.axes()}, {"permutation", cf.perm}};
    j["residuals"] = json::object();
    j["pass"] = true;
    emit(c, j.dump(2) + "\n");
    return kOk;
  }
  std::ostringstream os;
  os << e4::to_string(s.axis_class()) << "\ncanonical axes:";
  for (double a : cf.surface.axes()) os << ' ' << e4::format_real(a);
  os << "\npermutation:";
  for (int p : cf.perm) os << ' ' << p;
  os << '\n';
  emit(c, os.str());
  return kOk;
}

int cmd_loci(const RunConfig& c) {
  const e4::Ellipsoid4 s = surface_of(c);
  const double h = c.step > 0 ? c.step : 0.01 * s.diameter();
  const auto umbilics = e4::umbilic_points(s);
  const auto curves = e4::partially_umbilic_curves(s, h);
  const bool sphere = s.axis_class() == e4::AxisClass::AllEqual;

  json res = json::object(), resid = json::object();
  bool pass = true;
  std::vector<e4::Vec4> points;
  for (const auto& u : umbilics)
    if (u.kind == e4::LocusKind::UmbilicPoint) points.insert(points.end(), u.points.begin(), u.points.end());
  res["totally_umbilic"] = sphere;
  res["umbilics"] = e4::points_json(points);
  res["curves"] = json::array();
  for (const auto& l : curves) {
    res["curves"].push_back(e4::locus_json(l));
    const e4::LocusReport r = e4::verify_locus(s, l, c.eps_deg);
    resid[l.name] = {{"samples", r.samples},
                     {"max_pair_gap", r.max_pair_gap},
                     {"min_third_separation", r.min_third_separation},
                     {"max_discriminant", r.max_discriminant},
                     {"pass", r.pass}};
    pass &= r.pass;
  }
  if (sphere) std::cerr << "totally umbilic\n";

  if (c.format == "csv") {
    if (c.out.empty()) throw Error(ErrorKind::Usage, "--format csv needs --out DIRECTORY");
    std::filesystem::create_directories(c.out);
    auto write = [&](const std::string& file, const std::vector<e4::Vec4>& pts) {
      std::ofstream f(std::filesystem::path(c.out) / file, std::ios::binary);
      if (!f) throw Error(ErrorKind::Io, "cannot write into " + c.out);
      e4::write_curve_csv(f, s, pts, {}, c.eps_deg);
    };
    write("umbilics.csv", points);
    for (const auto& l : curves)
      if (l.is_curve()) write(file_stem(l.name) + ".csv", l.curve.samples);
    std::cout << points.size() << " umbilic points, " << curves.size() << " loci written to " << c.out << '\n';
  } else {
    json j = report(s, "loci", {{"h", h}, {"eps_deg", c.eps_deg}});
    j["results"] = std::move(res);
    j["residuals"] = std::move(resid);
    j["pass"] = pass;
    emit(c, j.dump(2) + "\n");
  }
  return pass ? kOk : kVerifyFailed;
}

int cmd_trace(const RunConfig& c) {
  const e4::Ellipsoid4 s = surface_of(c);
  if (c.point.size() != 4) throw Error(ErrorKind::Usage, "--point needs four coordinates");
  const e4::Vec4 seed(c.point[0], c.point[1], c.point[2], c.point[3]);
  e4::TraceOptions opt;
  opt.h = c.step;
  opt.max_length = c.max_arclen;
  opt.eps_deg = c.eps_deg;
  const e4::LeafTrace t = e4::trace_principal_line(s, seed, c.field, opt);
  const bool closed = t.termination == e4::Termination::Closed;
  std::ostringstream summary;
  summary << "termination=" << e4::to_string(t.termination) << " closed=" << (closed ? "true" : "false")
          << " samples=" << t.samples.size() << " period=" << e4::format_real(t.period)
          << " gap=" << e4::format_real(t.closure_gap) << '\n';
  if (c.format == "csv") {
    std::ostringstream os;
    e4::write_curve_csv(os, s, t.samples, t.arclength, c.eps_deg);
    emit(c, os.str());
    (c.out.empty() ? std::cerr : std::cout) << summary.str();
  } else {
    json j = report(s, "trace",
                    {{"seed", {seed[0], seed[1], seed[2], seed[3]}},
                     {"field", c.field},
                     {"step", c.step},
                     {"max_arclen", c.max_arclen},
                     {"eps_deg", c.eps_deg}});
    j["results"] = e4::trace_json(t);
    j["residuals"] = {{"closure_gap", t.closure_gap}};
    j["pass"] = true;
    emit(c, j.dump(2) + "\n");
    if (!c.out.empty()) std::cout << summary.str();
  }
  return kOk;
}

int cmd_link(const RunConfig& c) {
  const e4::Ellipsoid4 s = surface_of(c);
  if (c.curve_files.size() != 2) throw Error(ErrorKind::Usage, "link needs two curve files");
  e4::ClosedCurve a, b;
  a.samples = e4::read_curve_file(c.curve_files[0]);
  b.samples = e4::read_curve_file(c.curve_files[1]);
  const e4::Linking l = e4::link_curves(s, a, b);
  json j = report(s, "link", {{"curves", c.curve_files}});
  j["results"] = {{"linking_number", l.crossing}, {"gauss_integral", l.gauss}, {"projection_attempts", l.attempts}};
  j["residuals"] = {{"gauss_minus_integer", l.gauss - l.crossing}};
  j["pass"] = std::abs(l.gauss - l.crossing) < 0.05;
  if (c.format == "csv") {
    emit(c, "linking_number,gauss_integral\n" + std::to_string(l.crossing) + "," + e4::format_real(l.gauss) + "\n");
  } else {
    emit(c, j.dump(2) + "\n");
  }
  return j["pass"].get<bool>() ? kOk : kVerifyFailed;
}

int cmd_verify(const RunConfig& c) {
  e4::AcceptanceConfig cfg;
  cfg.eps_deg = c.eps_deg;
  cfg.seed = c.seed;
  bool all = true;
  json results = json::array();
  for (const auto& r : e4::run_acceptance(cfg)) {
    std::cout << e4::format_result(r) << std::endl;
    all &= r.pass;
    results.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
  }
  if (!c.out.empty()) {
    json j;
    j["surface"] = json::array({"(2,2,1,1)", "(2,√3,√2,1)", "(2,√2,√2,1)"});
    j["command"] = "verify";
    j["params"] = {{"eps_deg", c.eps_deg}, {"seed", c.seed}};
    j["results"] = std::move(results);
    j["residuals"] = json::object();
    j["pass"] = all;
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, "cannot write " + c.out);
    f << j.dump(2) << '\n';
  }
  return all ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"Principal curvature structure of ellipsoids in R^4"};
  app.require_subcommand(1);
  auto* axes = app.add_option("--axes", c.axes, "semi-axes a b c d")->expected(4);
  app.add_option("--eps-deg", c.eps_deg, "curvature coincidence tolerance")->check(CLI::PositiveNumber);
  app.add_option("--step", c.step, "sampling step (loci) or largest trace step")->check(CLI::NonNegativeNumber);
  app.add_option("--max-arclen", c.max_arclen, "trace length cap")->check(CLI::NonNegativeNumber);
  auto* format = app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", c.out, "output file (directory for csv loci)");
  app.add_option("--seed", c.seed, "seed for deterministic sampling");
  app.add_option("--grid", c.grid, "grid size")->check(CLI::PositiveNumber);

  auto* classify = app.add_subcommand("classify", "axis class and canonical layout");
  std::vector<double> positional;
  classify->add_option("semi_axes", positional, "semi-axes a b c d")->expected(4);
  auto* loci = app.add_subcommand("loci", "umbilic points and partially umbilic curves");
  auto* trace = app.add_subcommand("trace", "trace a principal line");
  trace->add_option("--point", c.point, "seed point x1 x2 x3 x4")->expected(4)->required();
  trace->add_option("--field", c.field, "principal field 1, 2 or 3")->check(CLI::Range(1, 3))->required();
  auto* link = app.add_subcommand("link", "linking number of two closed curves");
  link->add_option("curves", c.curve_files, "two curve files (csv or json)")->expected(2)->required();
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  for (auto* sub : {classify, loci, trace, link, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*classify) {
      if (!positional.empty()) c.axes = positional;
      return cmd_classify(c, format->count() > 0);
    }
    if (*loci) return cmd_loci(c);
    if (*trace) return cmd_trace(c);
    if (*link) return cmd_link(c);
    if (*verify) return cmd_verify(c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kNumerical;
  }
  (void)axes;
  return kUsage;
}
