#include "e4/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "e4/error.hpp"

namespace e4 {

std::string format_real(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

void write_curve_csv(std::ostream& os, const Ellipsoid4& surface, const std::vector<Vec4>& samples,
                     const std::vector<double>& arclength, double eps_deg) {
  os << kCurveCsvHeader << '\n';
  double s = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Vec4& x = samples[i];
    if (!arclength.empty()) s = arclength[i];
    else if (i > 0) s += (x - samples[i - 1]).norm();
    const auto k = principal_curvatures(surface, x);
    os << i << ',' << format_real(s);
    for (int j = 0; j < 4; ++j) os << ',' << format_real(x[j]);
    for (double kj : k) os << ',' << format_real(kj);
    os << ',' << to_string(classify_gaps(k, eps_deg)) << '\n';
  }
}

std::vector<Vec4> read_curve_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCurveCsvHeader)
    throw Error(ErrorKind::Io, "curve CSV must start with the header " + std::string(kCurveCsvHeader));
  std::vector<Vec4> out;
  int row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != 10) throw Error(ErrorKind::Io, "row " + std::to_string(row) + " does not have 10 fields");
    Vec4 x;
    for (int j = 0; j < 4; ++j) {
      const std::string& c = cells[2 + j];
      const auto r = std::from_chars(c.data(), c.data() + c.size(), x[j]);
      if (r.ec != std::errc() || r.ptr != c.data() + c.size())
        throw Error(ErrorKind::Io, "row " + std::to_string(row) + ": bad number '" + c + "'");
    }
    out.push_back(x);
  }
  return out;
}

std::vector<Vec4> read_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Io, path + ": " + e.what());
    }
    const nlohmann::json* node = &j;
    if (!node->contains("samples") && node->contains("results")) node = &(*node)["results"];
    if (!node->is_object() || !node->contains("samples")) throw Error(ErrorKind::Io, path + ": no samples array");
    std::vector<Vec4> out;
    for (const auto& p : (*node)["samples"]) {
      if (!p.is_array() || p.size() != 4) throw Error(ErrorKind::Io, path + ": samples must be 4-vectors");
      out.emplace_back(p[0].get<double>(), p[1].get<double>(), p[2].get<double>(), p[3].get<double>());
    }
    return out;
  }
  return read_curve_csv(in);
}

nlohmann::ordered_json surface_json(const Ellipsoid4& surface) {
  nlohmann::ordered_json j;
  j["axes"] = surface.axes();
  j["class"] = std::string(to_string(surface.axis_class()));
  return j;
}

nlohmann::ordered_json points_json(const std::vector<Vec4>& points) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (const Vec4& x : points) a.push_back({x[0], x[1], x[2], x[3]});
  return a;
}

nlohmann::ordered_json locus_json(const SingularLocus& l) {
  nlohmann::ordered_json j;
  j["name"] = l.name;
  j["kind"] = std::string(to_string(l.kind));
  j["provenance"] = l.provenance;
  j["symbolic"] = l.symbolic;
  if (l.kind == LocusKind::UmbilicPoint) j["points"] = points_json(l.points);
  if (l.is_curve()) {
    j["closed"] = l.curve.closed;
    j["resolution"] = l.curve.resolution;
    j["samples"] = points_json(l.curve.samples);
  }
  return j;
}

nlohmann::ordered_json trace_json(const LeafTrace& t) {
  nlohmann::ordered_json j;
  j["field"] = t.field;
  j["termination"] = std::string(to_string(t.termination));
  j["closed"] = t.termination == Termination::Closed;
  j["closure_gap"] = t.closure_gap;
  j["period"] = t.period;
  j["arclength"] = t.arclength;
  j["samples"] = points_json(t.samples);
  return j;
}

}  // namespace e4
