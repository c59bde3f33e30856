#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace leglab::acceptance {

struct Check {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  std::string relation = "<=";  // how value compares to bound
  bool pass = false;
  bool timing = false;  // wall-clock check, excluded from deterministic output
};

struct CriterionResult {
  int id = 0;
  std::string name;
  std::vector<Check> checks;
  double seconds = 0.0;
  bool pass() const;
};

// Factor applied to every numeric tolerance; read from LEGLAB_TOL_OVERRIDE (default 1).
double tolerance_scale();

const std::vector<int>& criterion_ids();
std::string criterion_name(int id);
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_all();

// "[PASS] 3 bypass-metrics  chord_arc 1.57 <= 1.57 ... (0.21 s)"
std::string format_line(const CriterionResult& r);

// One {"check", "value", "bound", "pass"} record per check.
nlohmann::json to_json(const std::vector<CriterionResult>& results, bool timings);

}  // namespace leglab::acceptance
