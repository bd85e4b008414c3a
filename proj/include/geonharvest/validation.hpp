#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "geonharvest/oracle.hpp"

namespace geonharvest {

struct Check {
  std::string name;
  bool passed = false;
  double measured = 0.0;   // worst value seen
  double threshold = 0.0;  // pass iff measured <= threshold (unless noted)
  std::string detail;
};

enum class Tier { Quick, Full };

Tier tier_from_string(std::string_view name);

// Closed form against the brute-force double integrals: P within 1%, |X|
// within 2%, concurrence within 3% where it exceeds 0.01.
//   quick: BTZ, M in {1, 0.01}, gap in {0.1, 1}            (4 points)
//   full:  both families, M in {1, 0.01}, gap in {0.01, 0.1, 1}  (12 points)
// Detectors at d = 1, S = 0.5, l = 10, zeta = 1.
std::vector<Check> oracle_checks(Tier tier, const OracleSpec& spec = {});

// Structural properties of the closed-form layer.
std::vector<Check> invariant_checks();

}  // namespace geonharvest
