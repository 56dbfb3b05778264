#include "rlcan/jt.hpp"

#include <stdexcept>

namespace rlcan {

Result<CanonicalFrame> canonical_frame(const DLE& a, int max_worlds) {
  if (!a.has(kFragRL))
    return make_error("NotResiduated", {}, "RL block missing");
  auto res = check_residuated(a);
  if (!res.residuated)
    return make_error("NotResiduated", res.witness);
  CanonicalFrame cf;
  cf.pf = prime_filters(a.carrier);
  const int k = int(cf.pf.filters.size());
  if (k > max_worlds)
    return make_error("SizeLimitExceeded", {k}, "prime filter count");

  const int n = a.size();
  ResourceFrame f;
  f.worlds = cf.pf.order;
  f.gammaI.resize(k);
  f.tensor.assign(k, PairSet(k));
  f.lres.assign(k, PairSet(k));
  f.rres.assign(k, PairSet(k));
  for (int w = 0; w < k; ++w) {
    const Mask F = cf.pf.filters[w];
    f.gammaI[w] = has(F, a.unit_i) ? 0 : 1;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        const Mask Fi = cf.pf.filters[i], Fj = cf.pf.filters[j];
        bool tensor_ok = true, lres_ok = true, rres_ok = true;
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y) {
            if (has(Fi, x) && has(Fj, y) && !has(F, a.fuse[x * n + y]))
              tensor_ok = false;
            if (has(F, a.lres[x * n + y]) && has(Fi, x) && !has(Fj, y))
              lres_ok = false;
            // rres[x][y] interprets x *- y: y in H2 must force x in H1.
            if (has(F, a.rres[x * n + y]) && has(Fj, y) && !has(Fi, x))
              rres_ok = false;
          }
        if (tensor_ok) f.tensor[w].set(i, j);
        if (lres_ok) f.lres[w].set(i, j);
        if (rres_ok) f.rres[w].set(i, j);
      }
  }
  auto vr = validate_frame(std::move(f));
  if (!is_ok(vr)) return error(vr);
  cf.frame = take(std::move(vr));
  return cf;
}

std::map<std::string, Mask> canonical_valuation(const CanonicalFrame& cf,
                                                const Valuation& v) {
  std::map<std::string, Mask> out;
  for (const auto& [name, elem] : v) {
    Mask worlds = 0;
    for (size_t i = 0; i < cf.pf.filters.size(); ++i)
      if (has(cf.pf.filters[i], elem)) worlds |= bit(int(i));
    out[name] = worlds;
  }
  return out;
}

Result<DLE> jt_extension(const DLE& a) {
  auto cfr = canonical_frame(a);
  if (!is_ok(cfr)) return error(cfr);
  const CanonicalFrame cf = take(std::move(cfr));
  auto upr = upset_lattice(cf.pf.order);
  if (!is_ok(upr)) return error(upr);
  const UpsetLattice ups = take(std::move(upr));
  const int k = int(ups.upsets.size());

  DLE out;
  out.carrier = ups.lattice;
  out.signature = kFragRL;
  out.name = a.name.empty() ? "" : a.name + "-jt";

  Model m{cf.frame, {}};
  auto cell = [&](Kind op, int u, int v) {
    m.valuation["x"] = ups.upsets[u];
    m.valuation["y"] = ups.upsets[v];
    auto d = denote(Formula::make(op, Formula::var("x"), Formula::var("y")), m);
    int idx = ups.index_of(value(d));
    if (idx < 0)
      throw std::logic_error("jt table cell is not an upset of Pf A");
    return idx;
  };
  auto du = denote(Formula::unit_i(), m);
  out.unit_i = ups.index_of(value(du));
  if (out.unit_i < 0)
    throw std::logic_error("jt unit is not an upset of Pf A");
  out.fuse.resize(size_t(k) * k);
  out.lres.resize(size_t(k) * k);
  out.rres.resize(size_t(k) * k);
  for (int u = 0; u < k; ++u)
    for (int v = 0; v < k; ++v) {
      out.fuse[u * k + v] = cell(Kind::Fuse, u, v);
      out.lres[u * k + v] = cell(Kind::LRes, u, v);
      out.rres[u * k + v] = cell(Kind::RRes, u, v);
    }
  return validate_dle(std::move(out));
}

Result<JtCompareReport> compare_jt_canext(const DLE& a) {
  auto jtr = jt_extension(a);
  if (!is_ok(jtr)) return error(jtr);
  auto cer = canonically_extend(a);
  if (!is_ok(cer)) return error(cer);
  const DLE jt = take(std::move(jtr)), ce = take(std::move(cer));
  JtCompareReport rep;
  if (!(jt.carrier == ce.carrier)) {
    rep.mismatches.push_back("carriers differ");
    return rep;
  }
  const int k = jt.size();
  auto diff = [&](const char* tag, const std::vector<int>& x,
                  const std::vector<int>& y) {
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (x[i * k + j] != y[i * k + j])
          rep.mismatches.push_back(std::string(tag) + "[" +
                                   std::to_string(i) + "][" +
                                   std::to_string(j) + "]: " +
                                   std::to_string(x[i * k + j]) + " vs " +
                                   std::to_string(y[i * k + j]));
  };
  if (jt.unit_i != ce.unit_i) rep.mismatches.push_back("unit I differs");
  diff("fuse", jt.fuse, ce.fuse);
  diff("lres", jt.lres, ce.lres);
  diff("rres", jt.rres, ce.rres);
  rep.equal = rep.mismatches.empty();
  return rep;
}

Result<TruthLemmaOutcome> truth_lemma_check(const DLE& a,
                                            const std::vector<Formula>& phi,
                                            const std::vector<Formula>& psi,
                                            const Valuation& v) {
  Mask phi_vals = 0, psi_vals = 0;
  for (const auto& t : phi) {
    auto r = eval_term(t, a, v);
    if (!is_ok(r)) return error(r);
    phi_vals |= bit(value(r));
  }
  for (const auto& t : psi) {
    auto r = eval_term(t, a, v);
    if (!is_ok(r)) return error(r);
    psi_vals |= bit(value(r));
  }
  const int meet_phi = a.carrier.meet_all(phi_vals);  // empty -> top
  const int join_psi = a.carrier.join_all(psi_vals);  // empty -> bottom
  TruthLemmaOutcome out;
  if (a.carrier.leq(meet_phi, join_psi)) {
    out.consistent = false;
    out.meet_phi = meet_phi;
    out.join_psi = join_psi;
    return out;
  }
  auto sep = separate(a.carrier, principal_filter(a.carrier, meet_phi),
                      principal_ideal(a.carrier, join_psi));
  if (!is_ok(sep)) return error(sep);
  auto cfr = canonical_frame(a);
  if (!is_ok(cfr)) return error(cfr);
  const CanonicalFrame cf = take(std::move(cfr));
  out.consistent = true;
  out.world = -1;
  for (size_t i = 0; i < cf.pf.filters.size(); ++i)
    if (cf.pf.filters[i] == value(sep).members) out.world = int(i);
  if (out.world < 0) throw std::logic_error("separating filter not a world");
  return out;
}

Result<ExistenceReport> verify_existence_lemmas(const DLE& a) {
  auto cfr = canonical_frame(a);
  if (!is_ok(cfr)) return error(cfr);
  const CanonicalFrame cf = take(std::move(cfr));
  const int n = a.size(), k = int(cf.pf.filters.size());
  ExistenceReport rep;
  rep.ok = true;
  auto note = [&](const char* lemma, int F, int x, int y) {
    rep.ok = false;
    rep.failures.push_back(std::string(lemma) + " fails at F=" +
                           std::to_string(F) + " a=" + std::to_string(x) +
                           " b=" + std::to_string(y));
  };
  for (int w = 0; w < k; ++w) {
    const Mask F = cf.pf.filters[w];
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        bool fuse_in = has(F, a.fuse[x * n + y]);
        bool witness = false;
        cf.frame.tensor[w].for_each([&](int i, int j) {
          witness = witness || (has(cf.pf.filters[i], x) &&
                                has(cf.pf.filters[j], y));
        });
        if (fuse_in != witness) note("(i)", w, x, y);

        bool lres_in = has(F, a.lres[x * n + y]);
        bool all_map = true;
        cf.frame.lres[w].for_each([&](int i, int j) {
          if (has(cf.pf.filters[i], x) && !has(cf.pf.filters[j], y))
            all_map = false;
        });
        if (lres_in != all_map) note("(ii)", w, x, y);

        bool rres_in = has(F, a.rres[x * n + y]);
        bool all_rmap = true;
        cf.frame.rres[w].for_each([&](int i, int j) {
          if (has(cf.pf.filters[j], y) && !has(cf.pf.filters[i], x))
            all_rmap = false;
        });
        if (rres_in != all_rmap) note("(iii)", w, x, y);
      }
  }
  return rep;
}

}  // namespace rlcan
