#ifndef RLCAN_LATTICE_HPP
#define RLCAN_LATTICE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "rlcan/common.hpp"

namespace rlcan {

// A finite partial order over indices 0..n-1.
class FinitePoset {
 public:
  // Validates reflexivity, antisymmetry, transitivity.
  // Error: NotAPartialOrder.
  static Result<FinitePoset> make(int n,
                                  const std::vector<std::pair<int, int>>& leq);

  // Trusted constructor for relations already known to be partial orders
  // (throws std::invalid_argument if they are not).
  static FinitePoset from_leq_matrix(int n, const std::vector<Mask>& above);

  int size() const { return n_; }
  bool leq(int a, int b) const { return has(above_[a], b); }
  Mask above(int a) const { return above_[a]; }  // {b : a <= b}
  Mask below(int a) const { return below_[a]; }  // {b : b <= a}

  bool is_upset(Mask m) const;
  bool is_downset(Mask m) const;
  Mask up_closure(Mask m) const;
  Mask down_closure(Mask m) const;

  // All upward-closed subsets, ascending lexicographic on masks.
  // Requires size() small enough to scan subsets (guarded by callers).
  std::vector<Mask> upsets() const;

  bool operator==(const FinitePoset& o) const = default;

 private:
  int n_ = 0;
  std::vector<Mask> above_, below_;
};

// A finite (bounded) distributive lattice over element indices 0..n-1 with
// cached meet/join tables. `bounded` records whether the bounds are part of
// the signature; the minimum and maximum elements exist either way.
class FiniteDL {
 public:
  // validate_dl: checks partial order, existence of all binary glbs/lubs,
  // and distributivity of meet over join. Returns the first failed law.
  // Errors: NotAPartialOrder, NotALattice(a,b), NotDistributive(a,b,c).
  static Result<FiniteDL> validate(int n,
                                   const std::vector<std::pair<int, int>>& leq,
                                   bool bounded);
  static Result<FiniteDL> validate(FinitePoset order, bool bounded);

  int size() const { return order_.size(); }
  bool bounded() const { return bounded_; }
  const FinitePoset& order() const { return order_; }
  bool leq(int a, int b) const { return order_.leq(a, b); }
  int meet(int a, int b) const { return meet_[a * size() + b]; }
  int join(int a, int b) const { return join_[a * size() + b]; }
  int bottom() const { return bottom_; }
  int top() const { return top_; }

  int meet_all(Mask m) const;  // empty meet = top
  int join_all(Mask m) const;  // empty join = bottom

  // Boolean algebras are detected, not a separate type.
  bool is_boolean() const;

  // Join-irreducible elements (nonzero elements with a unique lower cover),
  // equivalently join-prime in a distributive lattice.
  std::vector<int> join_irreducibles() const;

  bool operator==(const FiniteDL& o) const = default;

 private:
  FinitePoset order_;
  bool bounded_ = true;
  std::vector<int> meet_, join_;
  int bottom_ = 0, top_ = 0;
};

enum class FilterKind { Filter, Ideal, PrimeFilter };

struct FilterSet {
  Mask members = 0;
  FilterKind kind = FilterKind::Filter;
};

// Definitional predicates (these double as the independent oracle for the
// enumeration below).
bool is_filter(const FiniteDL& a, Mask f);       // proper not required
bool is_ideal(const FiniteDL& a, Mask i);
bool is_prime_filter(const FiniteDL& a, Mask f);  // proper + prime

Mask principal_filter(const FiniteDL& a, int e);  // up(e)
Mask principal_ideal(const FiniteDL& a, int e);   // down(e)
Mask filter_generated(const FiniteDL& a, Mask seed);  // up(meet of seed); empty seed -> up(top)
Mask ideal_generated(const FiniteDL& a, Mask seed);   // down(join of seed); empty seed -> down(bottom)

// prime_filters: exact, duplicate-free enumeration of all prime filters,
// ascending lexicographic on membership masks, plus their inclusion poset.
struct PrimeFilterPoset {
  std::vector<Mask> filters;  // ascending by mask
  FinitePoset order;          // inclusion order on `filters`
};
PrimeFilterPoset prime_filters(const FiniteDL& a);

// upset_lattice: the distributive lattice of upsets of P ordered by
// inclusion; meets/joins are intersection/union. Element i of the lattice
// is `upsets[i]`. Error: SizeLimitExceeded.
struct UpsetLattice {
  FiniteDL lattice;
  std::vector<Mask> upsets;  // ascending by mask
  int index_of(Mask u) const;  // -1 when not an upset
};
Result<UpsetLattice> upset_lattice(const FinitePoset& p, int max_elements = 64);

// separate: a prime filter extending F and avoiding I (finite prime ideal
// theorem). Deterministic: first in enumeration order. Error: NotDisjoint.
Result<FilterSet> separate(const FiniteDL& a, Mask filter, Mask ideal);

// Lattice isomorphism (used by the Birkhoff round-trip and enumeration
// dedup; exhaustive over permutations, intended for small sizes).
std::optional<std::vector<int>> find_lattice_iso(const FiniteDL& a,
                                                 const FiniteDL& b);

// All distributive lattices with `min_size <= size <= max_size`, up to
// isomorphism, in a deterministic order (ascending size, then canonical
// order-matrix key). Generated via upset lattices of small posets.
std::vector<FiniteDL> enumerate_distributive_lattices(int max_size,
                                                      int min_size = 1);

// All partial orders on n labeled points, deterministic order.
std::vector<FinitePoset> enumerate_posets(int n);

}  // namespace rlcan

#endif
