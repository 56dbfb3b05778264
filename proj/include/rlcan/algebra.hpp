#ifndef RLCAN_ALGEBRA_HPP
#define RLCAN_ALGEBRA_HPP

#include <map>
#include <string>
#include <vector>

#include "rlcan/lattice.hpp"
#include "rlcan/syntax.hpp"

namespace rlcan {

// A finite distributive lattice expansion: operation tables over a carrier,
// for the signature blocks that are enabled. Binary tables are row-major
// (arg1 * n + arg2); the residual tables follow the formula orientation:
// lres[a][c] interprets a -* c, rres[c][b] interprets c *- b.
struct DLE {
  FiniteDL carrier;
  unsigned signature = 0;  // kFragRL | kFragDual | kFragML (+ bounds bit)

  int unit_i = -1;
  std::vector<int> fuse, lres, rres;
  int unit_j = -1;
  std::vector<int> par, dlres, drres;
  std::vector<int> dia, box;

  std::string name;  // fixture label; informational only

  int size() const { return carrier.size(); }
  bool has(unsigned bits) const { return (signature & bits) == bits; }
  int op2(Kind k, int a, int b) const;
  int op1(Kind k, int a) const;
};

// Total assignment of carrier elements to variable names.
using Valuation = std::map<std::string, int>;

// validate_dle: checks table totality/arity and the distribution laws of
// every enabled block (DL1-DL6, ML1-ML2, DLd1-DLd6); empty-set conventions
// apply only when the carrier is bounded.
// Errors: ArityMismatch, LawViolated (code carries the law id, witness the
// elements).
Result<DLE> validate_dle(DLE candidate);

// eval_term: the term function t^A at v. Errors: FragmentViolation,
// UnboundVariable.
Result<int> eval_term(const Formula& t, const DLE& a, const Valuation& v);

struct HoldsReport {
  bool holds = false;
  Valuation witness;  // falsifying valuation when !holds
};

// holds: exhaustive over all valuations of e's variables.
HoldsReport holds(const DLE& a, const Inequation& e);

struct ResiduationReport {
  bool residuated = false;
  std::vector<int> witness;  // {a, b, c} on failure
};

// check_residuated: a*b <= c  iff  b <= a -* c  iff  a <= c *- b, for all
// triples. Requires the RL block.
ResiduationReport check_residuated(const DLE& a);

struct EnumLimits {
  int max_carrier = 4;
  long max_structures = -1;  // cap on results; -1 = no cap
  long sample = -1;          // if >0, seeded subsample of the full stream
  std::uint64_t seed = 0;
};

// enumerate_residuated: every residuated DLE structure on A, deterministic
// order (ascending lexicographic on the generating join-irreducible table).
// Tensor tables are enumerated as join-distributive monotone maps with a
// unit; residuals are derived as maxima and structures lacking one are
// dropped.
std::vector<DLE> enumerate_residuated(const FiniteDL& a, EnumLimits limits = {});

// Dual block enumeration: every "co-residuated" (+, J, -+, +-) structure on
// A, obtained by enumerating residuated structures on the order dual.
std::vector<DLE> enumerate_dual_residuated(const FiniteDL& a,
                                           EnumLimits limits = {});

// Merge the dual block of `dual` into `base` (same carrier required).
DLE fuse_blocks(const DLE& base, const DLE& dual);

// Named fixtures used across tests and regression suites.
DLE two_element_boolean();
DLE two_chain_meet();           // 2-chain, * = /\, I = T
DLE three_chain_lukasiewicz();  // {0, 1/2, 1}, a*b = max(0, a+b-1)
DLE diamond_boolean_meet();     // 2x2 with * = /\, I = T

// The fixed regression suite: the four fixtures above plus every structure
// from enumerate_residuated on carriers of size <= 4 (deduplicated from the
// fixtures).
std::vector<DLE> regression_suite();

}  // namespace rlcan

#endif
