#include "rlcan/algebra.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace rlcan {

int DLE::op2(Kind k, int a, int b) const {
  const int n = size();
  switch (k) {
    case Kind::And: return carrier.meet(a, b);
    case Kind::Or: return carrier.join(a, b);
    case Kind::Fuse: return fuse[a * n + b];
    case Kind::LRes: return lres[a * n + b];
    case Kind::RRes: return rres[a * n + b];
    case Kind::Par: return par[a * n + b];
    case Kind::DLRes: return dlres[a * n + b];
    case Kind::DRRes: return drres[a * n + b];
    default: throw std::invalid_argument("op2: not a binary symbol");
  }
}

int DLE::op1(Kind k, int a) const {
  switch (k) {
    case Kind::Dia: return dia[a];
    case Kind::Box: return box[a];
    default: throw std::invalid_argument("op1: not a unary symbol");
  }
}

namespace {

bool in_range(const std::vector<int>& t, int n) {
  for (int v : t)
    if (v < 0 || v >= n) return false;
  return true;
}

struct LawChecker {
  const DLE& a;
  const int n;
  const bool bounded;

  // f(x, y) with one argument fixed; slot selects which argument varies.
  int app(const std::vector<int>& t, int slot, int fixed, int x) const {
    return slot == 0 ? t[x * n + fixed] : t[fixed * n + x];
  }

  // Checks `t` in argument `slot` against x (op) y |-> app(x) (res) app(y)
  // plus the empty-set convention app(unit_in) = unit_out when bounded.
  Result<bool> distributes(const char* law, const std::vector<int>& t,
                           int slot, bool arg_join, bool out_join,
                           int unit_in, int unit_out) const {
    for (int fixed = 0; fixed < n; ++fixed) {
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          int lhs = app(t, slot, fixed,
                        arg_join ? a.carrier.join(x, y) : a.carrier.meet(x, y));
          int l = app(t, slot, fixed, x), r = app(t, slot, fixed, y);
          int rhs = out_join ? a.carrier.join(l, r) : a.carrier.meet(l, r);
          if (lhs != rhs) {
            std::vector<int> w = slot == 0 ? std::vector<int>{x, y, fixed}
                                           : std::vector<int>{fixed, x, y};
            return make_error(law, w, "binary distribution law fails");
          }
        }
      if (bounded && app(t, slot, fixed, unit_in) != unit_out)
        return make_error(law, {fixed, unit_in},
                          "empty-set convention fails");
    }
    return true;
  }
};

#define CHECK_LAW(expr)                    \
  do {                                     \
    auto r__ = (expr);                     \
    if (!is_ok(r__)) return error(r__);    \
  } while (0)

}  // namespace

Result<DLE> validate_dle(DLE c) {
  const int n = c.size();
  const size_t nn = size_t(n) * n;
  if (n == 0) return make_error("ArityMismatch", {}, "empty carrier");
  c.signature =
      (c.signature & ~unsigned(kFragBounds)) |
      (c.carrier.bounded() ? unsigned(kFragBounds) : 0u);
  const int bot = c.carrier.bottom(), top = c.carrier.top();
  LawChecker chk{c, n, c.carrier.bounded()};

  if (c.has(kFragRL)) {
    if (c.unit_i < 0 || c.unit_i >= n)
      return make_error("ArityMismatch", {}, "missing unit I");
    for (auto* t : {&c.fuse, &c.lres, &c.rres})
      if (t->size() != nn || !in_range(*t, n))
        return make_error("ArityMismatch", {},
                          "RL tables must be total n*n element tables");
    CHECK_LAW(chk.distributes("DL1", c.fuse, 0, true, true, bot, bot));
    CHECK_LAW(chk.distributes("DL2", c.fuse, 1, true, true, bot, bot));
    CHECK_LAW(chk.distributes("DL3", c.lres, 1, false, false, top, top));
    CHECK_LAW(chk.distributes("DL4", c.lres, 0, true, false, bot, top));
    CHECK_LAW(chk.distributes("DL5", c.rres, 0, false, false, top, top));
    CHECK_LAW(chk.distributes("DL6", c.rres, 1, true, false, bot, top));
  }
  if (c.has(kFragDual)) {
    if (c.unit_j < 0 || c.unit_j >= n)
      return make_error("ArityMismatch", {}, "missing unit J");
    for (auto* t : {&c.par, &c.dlres, &c.drres})
      if (t->size() != nn || !in_range(*t, n))
        return make_error("ArityMismatch", {},
                          "dual tables must be total n*n element tables");
    CHECK_LAW(chk.distributes("DLd1", c.par, 0, false, false, top, top));
    CHECK_LAW(chk.distributes("DLd2", c.par, 1, false, false, top, top));
    CHECK_LAW(chk.distributes("DLd3", c.dlres, 1, true, true, bot, bot));
    CHECK_LAW(chk.distributes("DLd4", c.dlres, 0, false, true, top, bot));
    CHECK_LAW(chk.distributes("DLd5", c.drres, 0, true, true, bot, bot));
    CHECK_LAW(chk.distributes("DLd6", c.drres, 1, false, true, top, bot));
  }
  if (c.has(kFragML)) {
    for (auto* t : {&c.dia, &c.box})
      if (t->size() != size_t(n) || !in_range(*t, n))
        return make_error("ArityMismatch", {},
                          "modal tables must be total unary tables");
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        int j = c.carrier.join(x, y), m = c.carrier.meet(x, y);
        if (c.dia[j] != c.carrier.join(c.dia[x], c.dia[y]))
          return make_error("ML1", {x, y});
        if (c.box[m] != c.carrier.meet(c.box[x], c.box[y]))
          return make_error("ML2", {x, y});
      }
    if (c.carrier.bounded()) {
      if (c.dia[bot] != bot) return make_error("ML1", {bot});
      if (c.box[top] != top) return make_error("ML2", {top});
    }
  }
  return c;
}

Result<int> eval_term(const Formula& t, const DLE& a, const Valuation& v) {
  unsigned avail = (a.signature & ~unsigned(kFragBounds)) |
                   (a.carrier.bounded() ? unsigned(kFragBounds) : 0u);
  if (t.fragment() & ~avail)
    return make_error("FragmentViolation", {},
                      "term uses symbols outside the algebra's signature");
  struct Ev {
    const DLE& a;
    const Valuation& v;
    Result<int> go(const Formula& f) {
      switch (f.kind()) {
        case Kind::Var: {
          auto it = v.find(f.var_name());
          if (it == v.end())
            return make_error("UnboundVariable", {}, f.var_name());
          return it->second;
        }
        case Kind::Top: return a.carrier.top();
        case Kind::Bot: return a.carrier.bottom();
        case Kind::UnitI: return a.unit_i;
        case Kind::UnitJ: return a.unit_j;
        case Kind::Dia:
        case Kind::Box: {
          auto x = go(f.child());
          if (!is_ok(x)) return x;
          return a.op1(f.kind(), value(x));
        }
        default: {
          auto l = go(f.left());
          if (!is_ok(l)) return l;
          auto r = go(f.right());
          if (!is_ok(r)) return r;
          return a.op2(f.kind(), value(l), value(r));
        }
      }
    }
  } ev{a, v};
  return ev.go(t);
}

HoldsReport holds(const DLE& a, const Inequation& e) {
  const auto vars = e.variables();
  const int n = a.size();
  std::vector<int> idx(vars.size(), 0);
  Valuation v;
  for (;;) {
    for (size_t i = 0; i < vars.size(); ++i) v[vars[i]] = idx[i];
    auto l = eval_term(e.lhs, a, v);
    auto r = eval_term(e.rhs, a, v);
    if (!is_ok(l) || !is_ok(r))
      throw std::invalid_argument("holds: inequation outside signature");
    bool ok = e.equality ? value(l) == value(r)
                         : a.carrier.leq(value(l), value(r));
    if (!ok) return {false, v};
    size_t k = 0;
    while (k < idx.size() && ++idx[k] == n) idx[k++] = 0;
    if (k == idx.size() && !idx.empty()) break;
    if (idx.empty()) break;
  }
  return {true, {}};
}

ResiduationReport check_residuated(const DLE& alg) {
  if (!alg.has(kFragRL))
    throw std::invalid_argument("check_residuated: RL block missing");
  const int n = alg.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        bool t1 = alg.carrier.leq(alg.fuse[a * n + b], c);
        bool t2 = alg.carrier.leq(b, alg.lres[a * n + c]);
        bool t3 = alg.carrier.leq(a, alg.rres[c * n + b]);
        if (t1 != t2 || t2 != t3) return {false, {a, b, c}};
      }
  return {true, {}};
}

namespace {

// Derive residual tables from a tensor table; false when some maximum is
// missing (the structure is not residuated).
bool derive_residuals(const FiniteDL& L, const std::vector<int>& fuse,
                      std::vector<int>& lres, std::vector<int>& rres) {
  const int n = L.size();
  lres.assign(size_t(n) * n, -1);
  rres.assign(size_t(n) * n, -1);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) {
      Mask bs = 0;
      for (int b = 0; b < n; ++b)
        if (L.leq(fuse[a * n + b], c)) bs |= bit(b);
      if (!bs) return false;
      int m = L.join_all(bs);
      if (!L.leq(fuse[a * n + m], c)) return false;
      lres[a * n + c] = m;
    }
  for (int c = 0; c < n; ++c)
    for (int b = 0; b < n; ++b) {
      Mask as = 0;
      for (int a = 0; a < n; ++a)
        if (L.leq(fuse[a * n + b], c)) as |= bit(a);
      if (!as) return false;
      int m = L.join_all(as);
      if (!L.leq(fuse[m * n + b], c)) return false;
      rres[c * n + b] = m;
    }
  return true;
}

// Expand a join-irreducible generator table to the full carrier.
std::vector<int> expand_generators(const FiniteDL& L,
                                   const std::vector<int>& ji,
                                   const std::vector<int>& g) {
  const int n = L.size();
  const int m = int(ji.size());
  std::vector<Mask> ji_below(n, 0);  // join-irreducibles below each element
  for (int x = 0; x < n; ++x)
    for (int k = 0; k < m; ++k)
      if (L.leq(ji[k], x)) ji_below[x] |= bit(k);
  std::vector<int> fuse(size_t(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      Mask acc = 0;
      for_each_bit(ji_below[x], [&](int p) {
        for_each_bit(ji_below[y], [&](int q) { acc |= bit(g[p * m + q]); });
      });
      fuse[x * n + y] = L.join_all(acc);
    }
  return fuse;
}

int find_unit(const FiniteDL& L, const std::vector<int>& fuse) {
  const int n = L.size();
  for (int u = 0; u < n; ++u) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      ok = fuse[x * n + u] == x && fuse[u * n + x] == x;
    if (ok) return u;
  }
  return -1;
}

}  // namespace

std::vector<DLE> enumerate_residuated(const FiniteDL& a, EnumLimits limits) {
  std::vector<DLE> out;
  if (a.size() > limits.max_carrier) return out;
  const auto ji = a.join_irreducibles();
  const int m = int(ji.size());
  const int n = a.size();

  // Join-distributive tensors are exactly joins of monotone maps on
  // join-irreducible pairs; enumerate those maps in lexicographic order.
  std::vector<int> g(size_t(m) * m, 0);
  auto mono_ok = [&](int cell) {
    int p = cell / m, q = cell % m;
    for (int c = 0; c < cell; ++c) {
      int cp = c / m, cq = c % m;
      if (a.leq(ji[cp], ji[p]) && a.leq(ji[cq], ji[q]) &&
          !a.leq(g[c], g[cell]))
        return false;
      if (a.leq(ji[p], ji[cp]) && a.leq(ji[q], ji[cq]) &&
          !a.leq(g[cell], g[c]))
        return false;
    }
    return true;
  };

  const long cap = limits.max_structures < 0 ? -1 : limits.max_structures;
  auto emit = [&](const std::vector<int>& gen) {
    std::vector<int> fuse = expand_generators(a, ji, gen);
    int unit = find_unit(a, fuse);
    if (unit < 0) return;
    DLE d;
    d.carrier = a;
    d.signature = kFragRL;
    d.unit_i = unit;
    d.fuse = std::move(fuse);
    if (!derive_residuals(a, d.fuse, d.lres, d.rres)) return;
    auto v = validate_dle(std::move(d));
    if (is_ok(v)) out.push_back(take(std::move(v)));
  };

  // DFS over the m*m cells, value ascending; m == 0 gives the single
  // structure on a one-element lattice.
  struct Dfs {
    std::vector<int>& g;
    const int m, n;
    decltype(mono_ok)& mono;
    decltype(emit)& sink;
    const long cap;
    std::vector<DLE>& out;
    void go(int cell) {
      if (cap >= 0 && long(out.size()) >= cap) return;
      if (cell == m * m) {
        sink(g);
        return;
      }
      for (int v = 0; v < n; ++v) {
        g[cell] = v;
        if (mono(cell)) go(cell + 1);
        if (cap >= 0 && long(out.size()) >= cap) return;
      }
    }
  } dfs{g, m, n, mono_ok, emit, cap, out};
  dfs.go(0);

  if (limits.sample > 0 && long(out.size()) > limits.sample) {
    std::mt19937_64 rng(limits.seed);
    std::shuffle(out.begin(), out.end(), rng);
    out.resize(size_t(limits.sample));
  }
  return out;
}

std::vector<DLE> enumerate_dual_residuated(const FiniteDL& a,
                                           EnumLimits limits) {
  // A dual-residuated block on A is a residuated block on the order dual.
  const int n = a.size();
  std::vector<std::pair<int, int>> rev;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (a.leq(j, i)) rev.emplace_back(i, j);
  FiniteDL dual = take(FiniteDL::validate(n, rev, a.bounded()));
  std::vector<DLE> duals = enumerate_residuated(dual, limits);
  std::vector<DLE> out;
  for (auto& d : duals) {
    DLE r;
    r.carrier = a;
    r.signature = kFragDual;
    r.unit_j = d.unit_i;
    r.par = d.fuse;
    r.dlres = d.lres;
    r.drres = d.rres;
    auto v = validate_dle(std::move(r));
    if (!is_ok(v)) continue;  // unreachable: dual laws mirror exactly
    out.push_back(take(std::move(v)));
  }
  return out;
}

DLE fuse_blocks(const DLE& base, const DLE& dual) {
  if (!(base.carrier == dual.carrier))
    throw std::invalid_argument("fuse_blocks: carriers differ");
  DLE d = base;
  d.signature |= dual.signature & (kFragDual | kFragML);
  d.unit_j = dual.unit_j;
  d.par = dual.par;
  d.dlres = dual.dlres;
  d.drres = dual.drres;
  if (dual.has(kFragML)) {
    d.dia = dual.dia;
    d.box = dual.box;
  }
  return take(validate_dle(std::move(d)));
}

namespace {

FiniteDL chain(int n) {
  std::vector<std::pair<int, int>> leq;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) leq.emplace_back(i, j);
  return take(FiniteDL::validate(n, leq, true));
}

FiniteDL diamond() {
  // 0 = bottom, 1 = x, 2 = y, 3 = top
  std::vector<std::pair<int, int>> leq{{0, 0}, {1, 1}, {2, 2}, {3, 3},
                                       {0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}};
  return take(FiniteDL::validate(4, leq, true));
}

DLE meet_monoid(FiniteDL L, std::string name) {
  DLE d;
  const int n = L.size();
  d.carrier = std::move(L);
  d.signature = kFragRL;
  d.unit_i = d.carrier.top();
  d.fuse.resize(size_t(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) d.fuse[x * n + y] = d.carrier.meet(x, y);
  if (!derive_residuals(d.carrier, d.fuse, d.lres, d.rres))
    throw std::logic_error("meet monoid must be residuated");
  d.name = std::move(name);
  return take(validate_dle(std::move(d)));
}

}  // namespace

DLE two_element_boolean() { return meet_monoid(chain(2), "two-element-boolean"); }
DLE two_chain_meet() { return meet_monoid(chain(2), "two-chain-meet"); }

DLE three_chain_lukasiewicz() {
  DLE d;
  d.carrier = chain(3);
  d.signature = kFragRL;
  d.unit_i = 2;
  const int n = 3;
  d.fuse.resize(9);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) d.fuse[x * n + y] = std::max(0, x + y - 2);
  if (!derive_residuals(d.carrier, d.fuse, d.lres, d.rres))
    throw std::logic_error("Lukasiewicz chain must be residuated");
  d.name = "three-chain-lukasiewicz";
  return take(validate_dle(std::move(d)));
}

DLE diamond_boolean_meet() { return meet_monoid(diamond(), "diamond-boolean-meet"); }

std::vector<DLE> regression_suite() {
  std::vector<DLE> suite{two_element_boolean(), two_chain_meet(),
                         three_chain_lukasiewicz(), diamond_boolean_meet()};
  for (const auto& L : enumerate_distributive_lattices(4)) {
    for (auto& d : enumerate_residuated(L)) {
      bool dup = false;
      for (const auto& s : suite)
        dup = dup || (s.carrier == d.carrier && s.fuse == d.fuse &&
                      s.unit_i == d.unit_i);
      if (!dup) suite.push_back(std::move(d));
    }
  }
  return suite;
}

}  // namespace rlcan
