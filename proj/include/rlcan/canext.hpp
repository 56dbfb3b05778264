#ifndef RLCAN_CANEXT_HPP
#define RLCAN_CANEXT_HPP

#include <vector>

#include "rlcan/algebra.hpp"
#include "rlcan/lattice.hpp"

namespace rlcan {

// The canonical extension of a finite distributive lattice: the upset
// lattice of its poset of prime filters, with the embedding a |-> {F : a in F}
// and the closed/open element sets computed from their definitions (meets,
// resp. joins, of embedded elements).
struct CanonicalExtension {
  FiniteDL base;
  PrimeFilterPoset pf;
  UpsetLattice ups;          // carrier A^sigma = ups.lattice
  std::vector<int> embed;    // base element -> carrier element
  Mask closed = 0, open = 0; // K(A), O(A) as masks over carrier indices

  const FiniteDL& carrier() const { return ups.lattice; }
};

// Error: SizeLimitExceeded.
Result<CanonicalExtension> canonical_extension(const FiniteDL& a,
                                               int max_elements = 64);

// An n-ary map on a carrier of size `dom`, tabulated with mixed-radix
// indexing (first argument least significant).
struct TableFn {
  int arity = 0;
  int dom = 1;
  std::vector<int> vals;

  int at(const std::vector<int>& args) const;
  static size_t table_size(int arity, int dom);
};

TableFn tensor_table(const DLE& a, Kind binary_op);  // 2-ary view of a DLE op
TableFn unary_table(const DLE& a, Kind unary_op);
TableFn constant_table(int arity, int dom, int value);
// Term function t^A over the given variable order (defaults to t's sorted
// variable list).
TableFn term_function(const Formula& t, const DLE& a,
                      const std::vector<std::string>& vars);

bool is_monotone(const TableFn& f, const FiniteDL& carrier);

// f^sigma(x) = \/ { /\ f[d,u] : K^n ∋ d <= x <= u ∈ O^n }, computed
// literally from the displayed formula; f^pi dually.
TableFn sigma_ext(const TableFn& f, const CanonicalExtension& ce);
TableFn pi_ext(const TableFn& f, const CanonicalExtension& ce);

struct ExtensionPropsReport {
  bool extends = false;        // f^sigma and f^pi restrict to f on clopens
  bool sigma_below_pi = false; // pointwise
  bool monotone = false;       // hypothesis for the smoothness clause
  bool smooth_on_ko = true;    // equality on (K u O)^n, monotone f only
  std::vector<int> witness;
  bool all_ok() const {
    return extends && sigma_below_pi && (!monotone || smooth_on_ko);
  }
};

ExtensionPropsReport check_extension_props(const TableFn& f,
                                           const CanonicalExtension& ce);

enum class SlotProperty { PreservesJoins, PreservesMeets, AntiJoins, AntiMeets };

struct PreservationReport {
  bool ok = false;
  std::vector<int> witness;
};

// If f has `prop` for binary joins/meets in argument `slot` on A, asserts
// that sigma_ext(f) has the all-non-empty version on A^sigma.
// Error: PropertyNotSatisfiedByF when the hypothesis already fails on A.
Result<PreservationReport> check_preservation(const TableFn& f,
                                              const CanonicalExtension& ce,
                                              SlotProperty prop, int slot);

// The canonical extension of a DLE: carrier A^sigma, every table
// sigma-extended. Errors propagate from canonical_extension/validate_dle.
Result<DLE> canonically_extend(const DLE& a);

enum class TermClass { Stable, Expanding, Contracting, None };

// Compares (t^A)^sigma with t^(A^sigma) pointwise; the suite form reports
// one class per algebra.
Result<TermClass> classify_term(const Formula& t, const DLE& a);
Result<std::vector<TermClass>> classify_term(const Formula& t,
                                             const std::vector<DLE>& suite);

struct CanonicityReport {
  bool holds_in_base = false;
  Valuation base_witness;      // when the hypothesis fails
  bool extension_checked = false;
  bool holds_in_extension = false;
  Valuation extension_witness;
  // A finite refutation would be holds_in_base && !holds_in_extension.
  bool refuted() const {
    return extension_checked && holds_in_base && !holds_in_extension;
  }
};

Result<CanonicityReport> canonicity_check(const DLE& a, const Inequation& e);

}  // namespace rlcan

#endif
