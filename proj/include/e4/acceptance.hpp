#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "e4/principal.hpp"

namespace e4 {

struct AcceptanceConfig {
  double eps_deg = kDefaultEpsDeg;
  std::uint64_t seed = 20240601;
  int curvature_samples = 1000;    // criterion 1
  int umbilic_search = 100000;     // criterion 2
  int traces_per_field = 50;       // criterion 6
  unsigned threads = 0;            // trace pool; 0 means hardware concurrency
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
};

/// Runs criteria 1 to 10 in order.  A criterion that throws is reported as a
/// failure carrying the error message.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg = {});

/// "PASS [3] title: detail"
std::string format_result(const CriterionResult& r);

}  // namespace e4
