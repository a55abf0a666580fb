#ifndef WEYLWIG_REPORT_HPP
#define WEYLWIG_REPORT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "weylwig/grid.hpp"

namespace weylwig {

struct CheckEntry {
  std::string name;
  double measured = 0.0;   // the error measure compared against tolerance
  double tolerance = 0.0;
  bool pass = false;
  std::map<std::string, std::string> meta;  // extra values, stringified
};

struct CheckReport {
  GridSpec grid;
  std::vector<CheckEntry> entries;  // sorted by name
  bool all_pass() const;
};

// Suites: "reps", "kernels", "xi-sqrt", "symbol", "phase-point", "marginals",
// "bounds". "default" expands to every suite except the slow quadrature suite
// "xi-sqrt", which runs only when named. tol_override > 0 replaces every entry
// tolerance. Unknown suite name throws std::invalid_argument.
CheckReport run_check_suites(const GridSpec& g, const std::vector<std::string>& suites,
                             double tol_override, std::uint64_t seed, int threads);

std::vector<std::string> known_suites();

// {"grid":{...},"entries":[{"name":...,"measured":...,"tolerance":...,
//  "pass":...,"meta":{...}},...],"all_pass":...} with entries sorted by name
std::string check_report_json(const CheckReport& r);

}  // namespace weylwig

#endif
