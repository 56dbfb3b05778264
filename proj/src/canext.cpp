#include "rlcan/canext.hpp"

#include <stdexcept>

namespace rlcan {

Result<CanonicalExtension> canonical_extension(const FiniteDL& a,
                                               int max_elements) {
  CanonicalExtension ce;
  ce.base = a;
  ce.pf = prime_filters(a);
  auto ur = upset_lattice(ce.pf.order, max_elements);
  if (!is_ok(ur)) return error(ur);
  ce.ups = take(std::move(ur));

  ce.embed.resize(a.size());
  for (int x = 0; x < a.size(); ++x) {
    Mask m = 0;
    for (size_t i = 0; i < ce.pf.filters.size(); ++i)
      if (has(ce.pf.filters[i], x)) m |= bit(int(i));
    int idx = ce.ups.index_of(m);
    if (idx < 0) throw std::logic_error("embedding image is not an upset");
    ce.embed[x] = idx;
  }

  // K(A): close the image under binary meets (plus the empty meet);
  // O(A): dually under joins.
  const FiniteDL& s = ce.carrier();
  Mask image = 0;
  for (int e : ce.embed) image |= bit(e);
  Mask closed = image | bit(s.top());
  for (bool grew = true; grew;) {
    grew = false;
    Mask next = closed;
    for_each_bit(closed, [&](int x) {
      for_each_bit(closed, [&](int y) { next |= bit(s.meet(x, y)); });
    });
    grew = next != closed;
    closed = next;
  }
  Mask open = image | bit(s.bottom());
  for (bool grew = true; grew;) {
    grew = false;
    Mask next = open;
    for_each_bit(open, [&](int x) {
      for_each_bit(open, [&](int y) { next |= bit(s.join(x, y)); });
    });
    grew = next != open;
    open = next;
  }
  ce.closed = closed;
  ce.open = open;
  return ce;
}

size_t TableFn::table_size(int arity, int dom) {
  size_t s = 1;
  for (int i = 0; i < arity; ++i) s *= size_t(dom);
  return s;
}

int TableFn::at(const std::vector<int>& args) const {
  size_t idx = 0, mul = 1;
  for (int i = 0; i < arity; ++i) {
    idx += size_t(args[i]) * mul;
    mul *= size_t(dom);
  }
  return vals[idx];
}

TableFn tensor_table(const DLE& a, Kind k) {
  TableFn f{2, a.size(), {}};
  f.vals.resize(TableFn::table_size(2, f.dom));
  for (int y = 0; y < f.dom; ++y)
    for (int x = 0; x < f.dom; ++x)
      f.vals[size_t(y) * f.dom + x] = a.op2(k, x, y);
  return f;
}

TableFn unary_table(const DLE& a, Kind k) {
  TableFn f{1, a.size(), {}};
  f.vals.resize(size_t(f.dom));
  for (int x = 0; x < f.dom; ++x) f.vals[x] = a.op1(k, x);
  return f;
}

TableFn constant_table(int arity, int dom, int value) {
  TableFn f{arity, dom, {}};
  f.vals.assign(TableFn::table_size(arity, dom), value);
  return f;
}

namespace {

// Iterate all tuples in dom^arity, first coordinate fastest.
template <class F>
void for_each_tuple(int arity, int dom, F&& body) {
  std::vector<int> t(arity, 0);
  for (;;) {
    body(t);
    int k = 0;
    while (k < arity && ++t[k] == dom) t[k++] = 0;
    if (k == arity) break;
  }
}

}  // namespace

TableFn term_function(const Formula& t, const DLE& a,
                      const std::vector<std::string>& vars) {
  TableFn f{int(vars.size()), a.size(), {}};
  f.vals.reserve(TableFn::table_size(f.arity, f.dom));
  for_each_tuple(f.arity, f.dom, [&](const std::vector<int>& tup) {
    Valuation v;
    for (size_t i = 0; i < vars.size(); ++i) v[vars[i]] = tup[i];
    auto r = eval_term(t, a, v);
    if (!is_ok(r)) throw std::invalid_argument("term outside signature");
    f.vals.push_back(value(r));
  });
  return f;
}

bool is_monotone(const TableFn& f, const FiniteDL& c) {
  bool ok = true;
  for_each_tuple(f.arity, f.dom, [&](const std::vector<int>& x) {
    for (int k = 0; k < f.arity && ok; ++k) {
      std::vector<int> y = x;
      for (int v = 0; v < f.dom && ok; ++v) {
        if (!c.leq(x[k], v)) continue;
        y[k] = v;
        ok = c.leq(f.at(x), f.at(y));
      }
      y[k] = x[k];
    }
  });
  return ok;
}

namespace {

// Shared interval scan: picks join-of-meets (sigma) or meet-of-joins (pi).
TableFn extend(const TableFn& f, const CanonicalExtension& ce, bool sigma) {
  const FiniteDL& s = ce.carrier();
  const int n = f.arity;
  TableFn out{n, s.size(), {}};
  out.vals.reserve(TableFn::table_size(n, out.dom));

  std::vector<int> closed, open;
  for_each_bit(ce.closed, [&](int e) { closed.push_back(e); });
  for_each_bit(ce.open, [&](int e) { open.push_back(e); });

  // Precompute, per (d, u) interval tuple, the meet (sigma) or join (pi) of
  // f over base tuples embedded inside it. Intervals are scanned afresh for
  // every output point; the (d, u) aggregate is cached in a flat map keyed
  // by mixed radix over closed/open index lists.
  const size_t kC = closed.size(), kO = open.size();
  std::vector<int> cache;
  cache.assign(TableFn::table_size(n, int(kC * kO)), -2);
  auto agg_of = [&](const std::vector<int>& dc, const std::vector<int>& uo) {
    size_t key = 0, mul = 1;
    for (int i = 0; i < n; ++i) {
      key += (size_t(dc[i]) * kO + size_t(uo[i])) * mul;
      mul *= kC * kO;
    }
    int& slot = cache[key];
    if (slot != -2) return slot;
    int acc = -1;
    for_each_tuple(n, f.dom, [&](const std::vector<int>& a) {
      for (int i = 0; i < n; ++i) {
        int ea = ce.embed[a[i]];
        if (!s.leq(closed[dc[i]], ea) || !s.leq(ea, open[uo[i]])) return;
      }
      int v = ce.embed[f.at(a)];
      acc = acc < 0 ? v : (sigma ? s.meet(acc, v) : s.join(acc, v));
    });
    slot = acc;  // -1 when the interval contains no base tuple
    return acc;
  };

  for_each_tuple(n, out.dom, [&](const std::vector<int>& x) {
    int best = -1;
    std::vector<int> dc(n, 0), uo(n, 0);
    // Double loop over closed lower and open upper interval endpoints.
    for_each_tuple(n, int(kC), [&](const std::vector<int>& di) {
      for (int i = 0; i < n; ++i)
        if (!s.leq(closed[di[i]], x[i])) return;
      for_each_tuple(n, int(kO), [&](const std::vector<int>& ui) {
        for (int i = 0; i < n; ++i)
          if (!s.leq(x[i], open[ui[i]])) return;
        int v = agg_of(di, ui);
        if (v < 0) return;
        best = best < 0 ? v : (sigma ? s.join(best, v) : s.meet(best, v));
      });
    });
    if (best < 0)
      throw std::logic_error("empty interval scan: compactness violated");
    out.vals.push_back(best);
  });
  return out;
}

}  // namespace

TableFn sigma_ext(const TableFn& f, const CanonicalExtension& ce) {
  return extend(f, ce, true);
}

TableFn pi_ext(const TableFn& f, const CanonicalExtension& ce) {
  return extend(f, ce, false);
}

ExtensionPropsReport check_extension_props(const TableFn& f,
                                           const CanonicalExtension& ce) {
  ExtensionPropsReport rep;
  const FiniteDL& s = ce.carrier();
  TableFn fs = sigma_ext(f, ce), fp = pi_ext(f, ce);

  rep.extends = true;
  for_each_tuple(f.arity, f.dom, [&](const std::vector<int>& a) {
    std::vector<int> ea(f.arity);
    for (int i = 0; i < f.arity; ++i) ea[i] = ce.embed[a[i]];
    int want = ce.embed[f.at(a)];
    if (fs.at(ea) != want || fp.at(ea) != want) {
      if (rep.extends) rep.witness = a;
      rep.extends = false;
    }
  });

  rep.sigma_below_pi = true;
  for_each_tuple(f.arity, s.size(), [&](const std::vector<int>& x) {
    if (!s.leq(fs.at(x), fp.at(x))) {
      if (rep.sigma_below_pi) rep.witness = x;
      rep.sigma_below_pi = false;
    }
  });

  rep.monotone = is_monotone(f, ce.base);
  if (rep.monotone) {
    // On finite carriers K u O covers everything, so this is equality
    // everywhere; the scan still restricts to K u O per the statement.
    rep.smooth_on_ko = true;
    Mask ko = ce.closed | ce.open;
    for_each_tuple(f.arity, s.size(), [&](const std::vector<int>& x) {
      for (int i = 0; i < f.arity; ++i)
        if (!has(ko, x[i])) return;
      if (fs.at(x) != fp.at(x)) {
        if (rep.smooth_on_ko) rep.witness = x;
        rep.smooth_on_ko = false;
      }
    });
  }
  return rep;
}

namespace {

int combine(const FiniteDL& c, SlotProperty p, int x, int y) {
  switch (p) {
    case SlotProperty::PreservesJoins: return c.join(x, y);
    case SlotProperty::PreservesMeets: return c.meet(x, y);
    case SlotProperty::AntiJoins: return c.meet(x, y);   // output side
    case SlotProperty::AntiMeets: return c.join(x, y);
  }
  return -1;
}

int arg_combine(const FiniteDL& c, SlotProperty p, int x, int y) {
  switch (p) {
    case SlotProperty::PreservesJoins: case SlotProperty::AntiJoins:
      return c.join(x, y);
    default:
      return c.meet(x, y);
  }
}

}  // namespace

Result<PreservationReport> check_preservation(const TableFn& f,
                                              const CanonicalExtension& ce,
                                              SlotProperty prop, int slot) {
  const FiniteDL& base = ce.base;
  // Hypothesis: binary version on A.
  bool hyp = true;
  std::vector<int> hyp_witness;
  for_each_tuple(f.arity, f.dom, [&](const std::vector<int>& a) {
    for (int y = 0; y < f.dom && hyp; ++y) {
      std::vector<int> ax = a, ay = a;
      ay[slot] = y;
      std::vector<int> aj = a;
      aj[slot] = arg_combine(base, prop, a[slot], y);
      if (f.at(aj) != combine(base, prop, f.at(ax), f.at(ay))) {
        hyp = false;
        hyp_witness = a;
        hyp_witness.push_back(y);
      }
    }
  });
  if (!hyp)
    return make_error("PropertyNotSatisfiedByF", hyp_witness,
                      "the binary property already fails on A");

  // Conclusion: all-non-empty version for sigma_ext(f) on A^sigma.
  const FiniteDL& s = ce.carrier();
  TableFn fs = sigma_ext(f, ce);
  PreservationReport rep;
  rep.ok = true;
  const Mask all = full_mask(s.size());
  for_each_tuple(f.arity, s.size(), [&](const std::vector<int>& x) {
    if (!rep.ok) return;
    for (Mask sub = 1; sub <= all && rep.ok; ++sub) {
      int argv = (prop == SlotProperty::PreservesJoins ||
                  prop == SlotProperty::AntiJoins)
                     ? s.join_all(sub)
                     : s.meet_all(sub);
      std::vector<int> xa = x;
      xa[slot] = argv;
      int lhs = fs.at(xa);
      int acc = -1;
      for_each_bit(sub, [&](int e) {
        std::vector<int> xe = x;
        xe[slot] = e;
        int v = fs.at(xe);
        acc = acc < 0 ? v : combine(s, prop, acc, v);
      });
      if (lhs != acc) {
        rep.ok = false;
        rep.witness = x;
        rep.witness.push_back(int(sub & 0xffff));
      }
    }
  });
  return rep;
}

Result<DLE> canonically_extend(const DLE& a) {
  auto cer = canonical_extension(a.carrier);
  if (!is_ok(cer)) return error(cer);
  const CanonicalExtension ce = take(std::move(cer));
  DLE e;
  e.carrier = ce.carrier();
  e.signature = a.signature;
  const int n = e.carrier.size();
  auto lift2 = [&](Kind k, std::vector<int>& into) {
    TableFn fs = sigma_ext(tensor_table(a, k), ce);
    into.resize(size_t(n) * n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        into[x * n + y] = fs.vals[size_t(y) * n + x];
  };
  if (a.has(kFragRL)) {
    e.unit_i = ce.embed[a.unit_i];
    lift2(Kind::Fuse, e.fuse);
    lift2(Kind::LRes, e.lres);
    lift2(Kind::RRes, e.rres);
  }
  if (a.has(kFragDual)) {
    e.unit_j = ce.embed[a.unit_j];
    lift2(Kind::Par, e.par);
    lift2(Kind::DLRes, e.dlres);
    lift2(Kind::DRRes, e.drres);
  }
  if (a.has(kFragML)) {
    TableFn ds = sigma_ext(unary_table(a, Kind::Dia), ce);
    TableFn bs = sigma_ext(unary_table(a, Kind::Box), ce);
    e.dia = ds.vals;
    e.box = bs.vals;
  }
  e.name = a.name.empty() ? "" : a.name + "-sigma";
  return validate_dle(std::move(e));
}

Result<TermClass> classify_term(const Formula& t, const DLE& a) {
  auto vars = t.variables();
  auto cer = canonical_extension(a.carrier);
  if (!is_ok(cer)) return error(cer);
  const CanonicalExtension ce = take(std::move(cer));
  auto extr = canonically_extend(a);
  if (!is_ok(extr)) return error(extr);
  const DLE ext = take(std::move(extr));

  TableFn lhs = sigma_ext(term_function(t, a, vars), ce);
  TableFn rhs = term_function(t, ext, vars);
  bool leq = true, geq = true;
  for_each_tuple(lhs.arity, lhs.dom, [&](const std::vector<int>& x) {
    leq = leq && ce.carrier().leq(lhs.at(x), rhs.at(x));
    geq = geq && ce.carrier().leq(rhs.at(x), lhs.at(x));
  });
  if (leq && geq) return TermClass::Stable;
  if (leq) return TermClass::Expanding;
  if (geq) return TermClass::Contracting;
  return TermClass::None;
}

Result<std::vector<TermClass>> classify_term(const Formula& t,
                                             const std::vector<DLE>& suite) {
  std::vector<TermClass> out;
  for (const auto& a : suite) {
    auto r = classify_term(t, a);
    if (!is_ok(r)) return error(r);
    out.push_back(value(r));
  }
  return out;
}

Result<CanonicityReport> canonicity_check(const DLE& a, const Inequation& e) {
  CanonicityReport rep;
  auto base = holds(a, e);
  rep.holds_in_base = base.holds;
  rep.base_witness = base.witness;
  if (!base.holds) return rep;  // hypothesis false: extension check skipped
  auto extr = canonically_extend(a);
  if (!is_ok(extr)) return error(extr);
  auto extended = holds(take(std::move(extr)), e);
  rep.extension_checked = true;
  rep.holds_in_extension = extended.holds;
  rep.extension_witness = extended.witness;
  return rep;
}

}  // namespace rlcan
