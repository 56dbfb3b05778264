#include "rlcan/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace rlcan {

Result<FinitePoset> FinitePoset::make(
    int n, const std::vector<std::pair<int, int>>& leq) {
  if (n < 0 || n > kMaxElements)
    return make_error("SizeLimitExceeded", {n},
                      "poset size outside 0..64");
  std::vector<Mask> above(n, 0);
  for (auto [i, j] : leq) {
    if (i < 0 || i >= n || j < 0 || j >= n)
      return make_error("NotAPartialOrder", {i, j}, "index out of range");
    above[i] |= bit(j);
  }
  for (int i = 0; i < n; ++i)
    if (!has(above[i], i))
      return make_error("NotAPartialOrder", {i}, "missing reflexive pair");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i != j && has(above[i], j) && has(above[j], i))
        return make_error("NotAPartialOrder", {i, j}, "antisymmetry fails");
      if (has(above[i], j) && (above[j] & ~above[i]))
        return make_error("NotAPartialOrder", {i, j, first_bit(above[j] & ~above[i])},
                          "transitivity fails");
    }
  FinitePoset p;
  p.n_ = n;
  p.above_ = std::move(above);
  p.below_.assign(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (p.leq(j, i)) p.below_[i] |= bit(j);
  return p;
}

FinitePoset FinitePoset::from_leq_matrix(int n, const std::vector<Mask>& above) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for_each_bit(above[i], [&](int j) { pairs.emplace_back(i, j); });
  auto r = make(n, pairs);
  if (!is_ok(r)) throw std::invalid_argument("from_leq_matrix: not a partial order");
  return take(std::move(r));
}

bool FinitePoset::is_upset(Mask m) const {
  Mask up = 0;
  for_each_bit(m, [&](int i) { up |= above_[i]; });
  return (up & ~m) == 0;
}

bool FinitePoset::is_downset(Mask m) const {
  Mask dn = 0;
  for_each_bit(m, [&](int i) { dn |= below_[i]; });
  return (dn | m) == m;
}

Mask FinitePoset::up_closure(Mask m) const {
  Mask up = 0;
  for_each_bit(m, [&](int i) { up |= above_[i]; });
  return up;
}

Mask FinitePoset::down_closure(Mask m) const {
  Mask dn = 0;
  for_each_bit(m, [&](int i) { dn |= below_[i]; });
  return dn;
}

std::vector<Mask> FinitePoset::upsets() const {
  if (n_ > 24) throw std::invalid_argument("upsets: poset too large to scan");
  std::vector<Mask> out;
  const Mask all = full_mask(n_);
  for (Mask m = 0;; ++m) {
    if (is_upset(m)) out.push_back(m);
    if (m == all) break;
  }
  return out;
}

namespace {

// Greatest lower bound of {a,b} under `p`, or -1.
int glb(const FinitePoset& p, int a, int b) {
  Mask lower = p.below(a) & p.below(b);
  int best = -1;
  for_each_bit(lower, [&](int c) {
    if ((lower & ~p.below(c)) == 0) best = best < 0 ? c : best;
  });
  return best;
}

int lub(const FinitePoset& p, int a, int b) {
  Mask upper = p.above(a) & p.above(b);
  int best = -1;
  for_each_bit(upper, [&](int c) {
    if ((upper & ~p.above(c)) == 0) best = best < 0 ? c : best;
  });
  return best;
}

}  // namespace

Result<FiniteDL> FiniteDL::validate(int n,
                                    const std::vector<std::pair<int, int>>& leq,
                                    bool bounded) {
  auto p = FinitePoset::make(n, leq);
  if (!is_ok(p)) return error(p);
  return validate(take(std::move(p)), bounded);
}

Result<FiniteDL> FiniteDL::validate(FinitePoset order, bool bounded) {
  const int n = order.size();
  if (n < 1)
    return make_error("NotALattice", {}, "empty carrier has no bounds");
  FiniteDL a;
  a.order_ = std::move(order);
  a.bounded_ = bounded;
  a.meet_.assign(size_t(n) * n, -1);
  a.join_.assign(size_t(n) * n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int m = glb(a.order_, i, j);
      int v = lub(a.order_, i, j);
      if (m < 0 || v < 0)
        return make_error("NotALattice", {i, j},
                          m < 0 ? "no greatest lower bound" : "no least upper bound");
      a.meet_[i * n + j] = m;
      a.join_[i * n + j] = v;
    }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (a.meet(x, a.join(y, z)) != a.join(a.meet(x, y), a.meet(x, z)))
          return make_error("NotDistributive", {x, y, z});
  a.bottom_ = a.meet_all(full_mask(n));
  a.top_ = a.join_all(full_mask(n));
  return a;
}

int FiniteDL::meet_all(Mask m) const {
  int acc = top_;
  bool first = true;
  for_each_bit(m, [&](int i) {
    acc = first ? i : meet(acc, i);
    first = false;
  });
  return acc;
}

int FiniteDL::join_all(Mask m) const {
  int acc = bottom_;
  bool first = true;
  for_each_bit(m, [&](int i) {
    acc = first ? i : join(acc, i);
    first = false;
  });
  return acc;
}

bool FiniteDL::is_boolean() const {
  for (int x = 0; x < size(); ++x) {
    bool complemented = false;
    for (int y = 0; y < size() && !complemented; ++y)
      complemented = meet(x, y) == bottom_ && join(x, y) == top_;
    if (!complemented) return false;
  }
  return true;
}

std::vector<int> FiniteDL::join_irreducibles() const {
  std::vector<int> out;
  for (int x = 0; x < size(); ++x) {
    if (x == bottom_) continue;
    Mask strictly_below = order_.below(x) & ~bit(x);
    if (join_all(strictly_below) != x) out.push_back(x);
  }
  return out;
}

bool is_filter(const FiniteDL& a, Mask f) {
  if (!a.order().is_upset(f)) return false;
  bool ok = true;
  for_each_bit(f, [&](int x) {
    for_each_bit(f, [&](int y) { ok = ok && has(f, a.meet(x, y)); });
  });
  return ok;
}

bool is_ideal(const FiniteDL& a, Mask i) {
  if (!a.order().is_downset(i)) return false;
  bool ok = true;
  for_each_bit(i, [&](int x) {
    for_each_bit(i, [&](int y) { ok = ok && has(i, a.join(x, y)); });
  });
  return ok;
}

bool is_prime_filter(const FiniteDL& a, Mask f) {
  if (f == 0 || f == full_mask(a.size())) return false;  // proper and nonempty
  if (!is_filter(a, f)) return false;
  const int n = a.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (has(f, a.join(x, y)) && !has(f, x) && !has(f, y)) return false;
  return true;
}

Mask principal_filter(const FiniteDL& a, int e) { return a.order().above(e); }
Mask principal_ideal(const FiniteDL& a, int e) { return a.order().below(e); }

Mask filter_generated(const FiniteDL& a, Mask seed) {
  return principal_filter(a, a.meet_all(seed));  // empty -> up(top)
}

Mask ideal_generated(const FiniteDL& a, Mask seed) {
  return principal_ideal(a, a.join_all(seed));  // empty -> down(bottom)
}

PrimeFilterPoset prime_filters(const FiniteDL& a) {
  const int n = a.size();
  if (n > 24) throw std::invalid_argument("prime_filters: carrier too large");
  std::vector<Mask> found;
  const Mask all = full_mask(n);
  // Every prime filter contains the maximum element.
  const Mask seed = bit(a.top());
  for (Mask m = 0;; ++m) {
    if ((m & seed) == seed && is_prime_filter(a, m)) found.push_back(m);
    if (m == all) break;
  }
  // Masks were produced in ascending order already.
  PrimeFilterPoset out;
  out.filters = std::move(found);
  const int k = int(out.filters.size());
  std::vector<std::pair<int, int>> incl;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if ((out.filters[i] & ~out.filters[j]) == 0) incl.emplace_back(i, j);
  out.order = take(FinitePoset::make(k, incl));
  return out;
}

int UpsetLattice::index_of(Mask u) const {
  auto it = std::lower_bound(upsets.begin(), upsets.end(), u);
  if (it == upsets.end() || *it != u) return -1;
  return int(it - upsets.begin());
}

Result<UpsetLattice> upset_lattice(const FinitePoset& p, int max_elements) {
  if (p.size() > 24)
    return make_error("SizeLimitExceeded", {p.size()}, "poset too large");
  max_elements = std::min(max_elements, kMaxElements);
  UpsetLattice out;
  out.upsets = p.upsets();
  if (int(out.upsets.size()) > max_elements)
    return make_error("SizeLimitExceeded", {int(out.upsets.size())},
                      "upset count exceeds the element cap");
  const int k = int(out.upsets.size());
  std::vector<std::pair<int, int>> incl;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if ((out.upsets[i] & ~out.upsets[j]) == 0) incl.emplace_back(i, j);
  auto dl = FiniteDL::validate(take(FinitePoset::make(k, incl)), true);
  out.lattice = take(std::move(dl));  // inclusion order of upsets is always a DL
  return out;
}

Result<FilterSet> separate(const FiniteDL& a, Mask filter, Mask ideal) {
  if (filter & ideal) {
    return make_error("NotDisjoint", {first_bit(filter & ideal)},
                      "filter and ideal share an element");
  }
  auto pf = prime_filters(a);
  for (Mask cand : pf.filters)
    if ((filter & ~cand) == 0 && (cand & ideal) == 0)
      return FilterSet{cand, FilterKind::PrimeFilter};
  // Unreachable for disjoint filter/ideal pairs over a distributive lattice
  // with a nonempty proper filter; a 1-element lattice has no prime filters.
  return make_error("NotDisjoint", {}, "no separating prime filter exists");
}

std::optional<std::vector<int>> find_lattice_iso(const FiniteDL& a,
                                                 const FiniteDL& b) {
  if (a.size() != b.size()) return std::nullopt;
  const int n = a.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j)
        ok = a.leq(i, j) == b.leq(perm[i], perm[j]);
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

std::vector<FinitePoset> enumerate_posets(int n) {
  std::vector<FinitePoset> out;
  if (n == 0) {
    out.push_back(take(FinitePoset::make(0, {})));
    return out;
  }
  if (n > 5) throw std::invalid_argument("enumerate_posets: n too large");
  // Strict-order candidate bits for off-diagonal pairs, checked for
  // transitivity and antisymmetry.
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) slots.emplace_back(i, j);
  const int k = int(slots.size());
  for (std::uint32_t c = 0; c < (1u << k); ++c) {
    std::vector<Mask> above(n, 0);
    for (int i = 0; i < n; ++i) above[i] = bit(i);
    for (int s = 0; s < k; ++s)
      if ((c >> s) & 1) above[slots[s].first] |= bit(slots[s].second);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) {
        if (i != j && has(above[i], j) && has(above[j], i)) ok = false;
        if (ok && has(above[i], j) && (above[j] & ~above[i])) ok = false;
      }
    if (!ok) continue;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
      for_each_bit(above[i], [&](int j) { pairs.emplace_back(i, j); });
    out.push_back(take(FinitePoset::make(n, pairs)));
  }
  return out;
}

namespace {

// Canonical key of a lattice: lexicographically least row-major order
// matrix over all permutations of the carrier.
std::vector<char> canonical_order_key(const FiniteDL& a) {
  const int n = a.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<char> best;
  do {
    std::vector<char> key(size_t(n) * n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        key[perm[i] * n + perm[j]] = a.leq(i, j) ? 1 : 0;
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

std::vector<FiniteDL> enumerate_distributive_lattices(int max_size, int min_size) {
  // Birkhoff: every finite DL is the upset lattice of a poset (of its
  // join-irreducibles); posets on <= 5 points cover all DLs up to 6 elements
  // and beyond (an n-element DL has at most n-1 join-irreducibles).
  if (max_size > 6 + 2)
    throw std::invalid_argument("enumerate_distributive_lattices: size cap too large");
  std::map<std::pair<int, std::vector<char>>, FiniteDL> seen;
  for (int pn = 0; pn <= 5; ++pn) {
    for (const auto& p : enumerate_posets(pn)) {
      auto ur = upset_lattice(p, 1 << (pn + 1));
      if (!is_ok(ur)) continue;
      const FiniteDL& dl = value(ur).lattice;
      if (dl.size() < min_size || dl.size() > max_size) continue;
      seen.emplace(std::make_pair(dl.size(), canonical_order_key(dl)), dl);
    }
  }
  std::vector<FiniteDL> out;
  out.reserve(seen.size());
  for (auto& [k, v] : seen) out.push_back(std::move(v));
  return out;
}

}  // namespace rlcan
