#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace dust {

struct ExperimentConfig {
  std::string kind;  // rates, simulate, dust, passage, occupancy, expfunc, vchain,
                     // verify-tau, verify-collisions, verify-stationary
  std::string measure = "lebesgue";
  std::vector<std::int64_t> n{100};
  std::int64_t replicates = 1000;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out;     // CSV path; the JSON summary goes next to it
  std::string regime;  // override for the classified limit regime
  std::map<std::string, double> tolerances;

  std::int64_t m = 10;         // rates
  double horizon = 0.0;        // vchain / verify-stationary / expfunc (0: default)
  double burn_in = -1.0;       // vchain (negative: horizon / 10)
  double gamma = 1.0;          // expfunc
  double epsilon = 1e-4;       // expfunc truncation
  std::int64_t truncation = 50;  // balance equations
};

extern const std::vector<std::string> kExperimentKinds;

/// Runs one experiment. Returns the process exit status: 0 on success,
/// 1 when a verification fails. Errors are thrown as dust::Error.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& log);

}  // namespace dust
