#include <iostream>

#include <CLI11.hpp>

#include "e4/acceptance.hpp"

int main(int argc, char** argv) {
  e4::AcceptanceConfig cfg;
  CLI::App app{"Acceptance suite: one PASS/FAIL line per criterion"};
  app.add_option("--eps-deg", cfg.eps_deg, "curvature coincidence tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed for the random samples");
  app.add_option("--threads", cfg.threads, "trace workers (0 = all cores)");
  CLI11_PARSE(app, argc, argv);

  bool all = true;
  for (const auto& r : e4::run_acceptance(cfg)) {
    std::cout << e4::format_result(r) << std::endl;
    all &= r.pass;
  }
  return all ? 0 : 1;
}
