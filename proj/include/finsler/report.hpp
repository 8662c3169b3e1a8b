#ifndef FINSLER_REPORT_HPP
#define FINSLER_REPORT_HPP

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "finsler/check_report.hpp"
#include "finsler/product_metric.hpp"

namespace finsler {

// Parsed run configuration.  `checks` must all be registered; `tolerances`
// overrides the per-check defaults by name.
struct RunManifest {
  std::vector<FactorMetric> factors;
  std::vector<double> t_grid;
  std::vector<int> k_grid;
  int samples = 10;
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;
  std::vector<std::string> checks;
};

// Throws InvalidInputError naming the first offending field.
RunManifest parse_manifest(const std::string& json_text);
void validate_manifest(const RunManifest& m);

// Registered check names with their default tolerances.
const std::map<std::string, double>& registered_checks();

struct CheckCell {
  std::string check;
  double t;
  int k;
  bool skipped = false;  // check not applicable to this factor mix
  CheckReport report;
};

struct RunReport {
  RunManifest manifest;
  std::vector<CheckCell> cells;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  double wall_time_s = 0.0;

  bool all_pass() const { return failed == 0; }
};

// Runs every requested check over the t_grid x k_grid x samples grid.
// Deterministic for a fixed seed: each grid cell draws from a generator
// seeded by (seed, cell index), so results are independent of worker order.
// FINSLERLAB_THREADS caps the worker count.
RunReport run_checks(const RunManifest& m);

std::string emit_json(const RunReport& r);
std::string emit_csv(const RunReport& r);

// Sampling helpers shared by the orchestrator and the test suites.  Bounded
// factor blocks land inside the given sub-ball radius; unbounded blocks are
// Gaussian.  Tangents are standard complex Gaussians.
CVec random_point(const ProductManifold& mfd, std::mt19937_64& rng,
                  double radius = 0.7);
CVec random_tangent(const ProductManifold& mfd, std::mt19937_64& rng);

// Generator for grid cell `index` under the manifest seed.
std::mt19937_64 cell_rng(std::uint64_t seed, std::uint64_t index);

}  // namespace finsler

#endif  // FINSLER_REPORT_HPP
