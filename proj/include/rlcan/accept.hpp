#ifndef RLCAN_ACCEPT_HPP
#define RLCAN_ACCEPT_HPP

#include <ostream>
#include <string>
#include <vector>

namespace rlcan {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Runs the acceptance criteria (all of them, or the listed subset), printing
// one PASS/FAIL line per criterion to `log`. Returns the per-criterion
// results; the suite passes when every entry does.
std::vector<CriterionResult> run_acceptance(std::ostream& log,
                                            const std::vector<int>& only = {});

}  // namespace rlcan

#endif
