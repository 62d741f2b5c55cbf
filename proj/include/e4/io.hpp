#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "e4/ellipsoid.hpp"
#include "e4/loci.hpp"
#include "e4/principal.hpp"
#include "e4/tracer.hpp"

namespace e4 {

inline constexpr const char* kCurveCsvHeader = "idx,s,x1,x2,x3,x4,k1,k2,k3,tag";

/// 17 significant digits, enough for a lossless double round trip.
std::string format_real(double x);

/// One row per sample with arclength (cumulative chord length when
/// `arclength` is empty), curvatures and tag.
void write_curve_csv(std::ostream& os, const Ellipsoid4& surface, const std::vector<Vec4>& samples,
                     const std::vector<double>& arclength = {}, double eps_deg = kDefaultEpsDeg);

/// Samples of a curve file: CSV with the header above, or JSON holding a
/// "samples" array of 4-vectors (top level or under "results").  Raises Io.
std::vector<Vec4> read_curve_file(const std::string& path);
std::vector<Vec4> read_curve_csv(std::istream& is);

nlohmann::ordered_json surface_json(const Ellipsoid4& surface);
nlohmann::ordered_json points_json(const std::vector<Vec4>& points);
nlohmann::ordered_json locus_json(const SingularLocus& locus);
nlohmann::ordered_json trace_json(const LeafTrace& trace);

}  // namespace e4
