#ifndef RLCAN_SEARCH_HPP
#define RLCAN_SEARCH_HPP

#include <cstdint>
#include <map>
#include <string>

#include "rlcan/semantics.hpp"
#include "rlcan/syntax.hpp"

namespace rlcan {

struct SearchBounds {
  int max_carrier = 4;
  int max_worlds = 4;
  std::uint64_t seed = 0;
  long budget = 200000;  // candidate structures examined, wall-clock free
};

struct SearchOutcome {
  bool found = false;
  ResourceFrame frame;
  std::map<std::string, Mask> valuation;
  std::string origin;  // which candidate produced the model
  long examined = 0;
};

// Bounded countermodel search for an inequation in the RL (or RL+dual)
// fragment. Stage 1 enumerates residuated algebras on small carriers and
// converts the first failing one through its canonical frame; stage 2
// enumerates tensor-reconstructed frames (bi-closed tensor maps filtered by
// RCC),
// exhaustively up to 3 worlds and seeded-randomly beyond. Deterministic
// given the seed. Error: FragmentViolation for modal inequations.
Result<SearchOutcome> countermodel_search(const Inequation& e,
                                          SearchBounds bounds = {});

}  // namespace rlcan

#endif
