#include "rlcan/search.hpp"

#include <algorithm>
#include <random>

#include "rlcan/jt.hpp"

namespace rlcan {

namespace {

// A falsifying upset valuation, first in ascending mask order, or nothing.
std::optional<std::map<std::string, Mask>> falsify(const ResourceFrame& f,
                                                   const Inequation& e) {
  auto r = frame_valid(f, e, int(e.variables().size()));
  if (!is_ok(r) || value(r).valid) return std::nullopt;
  return value(r).counter_valuation;
}

// Enforce the bi-closure chain condition along the world order.
void chain_close(const FinitePoset& w, SuccessorMap& g) {
  for (bool grew = true; grew;) {
    grew = false;
    for (int x = 0; x < w.size(); ++x)
      for (int y = 0; y < w.size(); ++y) {
        if (x == y || !w.leq(x, y)) continue;
        if (!g[x].bits().subset_of(g[y].bits())) {
          g[y].bits() |= g[x].bits();
          grew = true;
        }
      }
  }
}

struct Stage2 {
  const Inequation& e;
  const SearchBounds& bounds;
  SearchOutcome& out;
  const bool wants_unit, wants_dual_unit, wants_dual;

  bool over_budget() const { return out.examined >= bounds.budget; }

  // Returns true when a countermodel was recorded.
  bool try_candidate(const FinitePoset& w, const SuccessorMap& tensor,
                     Mask unit_set, const SuccessorMap* par, Mask dual_unit,
                     const std::string& origin) {
    ++out.examined;
    const int n = w.size();
    std::vector<int> gammaI(n);
    for (int x = 0; x < n; ++x) gammaI[x] = has(unit_set, x) ? 0 : 1;
    auto fr = frame_from_tensor(w, std::move(gammaI), tensor);
    if (!is_ok(fr)) return false;  // RCC filter
    ResourceFrame frame = take(std::move(fr));
    if (par) {
      std::vector<int> gammaJ(n);
      for (int x = 0; x < n; ++x) gammaJ[x] = has(dual_unit, x) ? 1 : 0;
      auto dr = attach_dual_from_par(std::move(frame), std::move(gammaJ), *par);
      if (!is_ok(dr)) return false;
      frame = take(std::move(dr));
    }
    if (wants_unit && !check_unit_condition(frame).ok) return false;
    auto cv = falsify(frame, e);
    if (!cv) return false;
    out.found = true;
    out.frame = std::move(frame);
    out.valuation = std::move(*cv);
    out.origin = origin;
    return true;
  }

  // Exhaustive enumeration over one poset: every bi-closed tensor map (and
  // dual map when required), every unit upset on demand.
  bool exhaustive(const FinitePoset& w, int poset_idx) {
    const int n = w.size();
    const auto downs = pair_downsets(w, kPolTensor);
    const auto ups_pairs =
        wants_dual ? pair_downsets(w, PairPolarity{true, true})
                   : std::vector<PairSet>{};
    const auto unit_sets =
        wants_unit ? w.upsets() : std::vector<Mask>{Mask{0}};
    const auto dual_unit_sets =
        wants_dual_unit ? w.upsets() : std::vector<Mask>{Mask{0}};

    std::vector<size_t> idx(n, 0);
    for (;;) {
      SuccessorMap tensor;
      bool chain_ok = true;
      for (int x = 0; x < n; ++x) tensor.push_back(downs[idx[x]]);
      for (int x = 0; x < n && chain_ok; ++x)
        for (int y = 0; y < n && chain_ok; ++y)
          if (x != y && w.leq(x, y))
            chain_ok = tensor[x].bits().subset_of(tensor[y].bits());
      if (chain_ok) {
        if (!wants_dual) {
          for (Mask us : unit_sets) {
            if (over_budget()) return false;
            if (try_candidate(w, tensor, us, nullptr, 0,
                              "frame-enum poset=" + std::to_string(poset_idx)))
              return true;
          }
        } else {
          std::vector<size_t> jdx(n, 0);
          for (;;) {
            SuccessorMap par;
            bool jchain = true;
            for (int x = 0; x < n; ++x) par.push_back(ups_pairs[jdx[x]]);
            // Dual maps shrink upward: g(y) subset of g(x) for x <= y.
            for (int x = 0; x < n && jchain; ++x)
              for (int y = 0; y < n && jchain; ++y)
                if (x != y && w.leq(x, y))
                  jchain = par[y].bits().subset_of(par[x].bits());
            if (jchain) {
              for (Mask us : unit_sets)
                for (Mask ds : dual_unit_sets) {
                  if (over_budget()) return false;
                  if (try_candidate(w, tensor, us, &par, ds,
                                    "frame-enum poset=" +
                                        std::to_string(poset_idx)))
                    return true;
                }
            }
            size_t c = 0;
            while (c < jdx.size() && ++jdx[c] == ups_pairs.size()) jdx[c++] = 0;
            if (c == jdx.size()) break;
          }
        }
      }
      size_t c = 0;
      while (c < idx.size() && ++idx[c] == downs.size()) idx[c++] = 0;
      if (c == idx.size()) break;
      if (over_budget()) return false;
    }
    return false;
  }

  // Seeded random candidates for larger world counts.
  bool sampled(const std::vector<FinitePoset>& posets, std::mt19937_64& rng) {
    while (!over_budget()) {
      const FinitePoset& w = posets[rng() % posets.size()];
      const int n = w.size();
      SuccessorMap tensor(n, PairSet(n));
      for (int x = 0; x < n; ++x)
        for (int i = 0; i < n * n; ++i)
          if (rng() & 1) tensor[x].set(i / n, i % n);
      tensor = close_pairs(w, tensor, true, true);
      chain_close(w, tensor);
      Mask us = 0;
      if (wants_unit) us = w.up_closure(rng() & full_mask(n));
      SuccessorMap par;
      Mask ds = 0;
      if (wants_dual) {
        par.assign(n, PairSet(n));
        for (int x = 0; x < n; ++x)
          for (int i = 0; i < n * n; ++i)
            if (rng() & 1) par[x].set(i / n, i % n);
        par = close_pairs(w, par, false, false);
        // Dual chain: reversed inclusion along the order.
        for (bool grew = true; grew;) {
          grew = false;
          for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
              if (x == y || !w.leq(x, y)) continue;
              if (!par[y].bits().subset_of(par[x].bits())) {
                par[x].bits() |= par[y].bits();
                grew = true;
              }
            }
        }
        if (wants_dual_unit) ds = w.up_closure(rng() & full_mask(n));
      }
      if (try_candidate(w, tensor, us, wants_dual ? &par : nullptr, ds,
                        "frame-sample worlds=" + std::to_string(n)))
        return true;
    }
    return false;
  }
};

}  // namespace

Result<SearchOutcome> countermodel_search(const Inequation& e,
                                          SearchBounds bounds) {
  const unsigned frag = e.fragment();
  if (frag & kFragML)
    return make_error("FragmentViolation", {},
                      "countermodel search covers the RL and RL+dual fragments");
  SearchOutcome out;
  const bool wants_dual = frag & kFragDual;

  // Stage 1: algebraic. Enumerate residuated structures on small carriers,
  // convert the first failing algebra through its canonical frame.
  if (!wants_dual) {
    long structure_idx = 0;
    for (const auto& L : enumerate_distributive_lattices(bounds.max_carrier)) {
      EnumLimits lim;
      lim.max_carrier = bounds.max_carrier;
      for (const auto& A : enumerate_residuated(L, lim)) {
        ++structure_idx;
        if (++out.examined > bounds.budget) return out;
        auto rep = holds(A, e);
        if (rep.holds) continue;
        auto cfr = canonical_frame(A);
        if (!is_ok(cfr)) continue;
        CanonicalFrame cf = take(std::move(cfr));
        auto val = canonical_valuation(cf, rep.witness);
        Model m{cf.frame, val};
        auto l = denote(e.lhs, m), r = denote(e.rhs, m);
        bool counter = is_ok(l) && is_ok(r) &&
                       (e.equality ? value(l) != value(r)
                                   : (value(l) & ~value(r)) != 0);
        if (!counter) continue;  // would signal a truth-lemma violation
        out.found = true;
        out.frame = std::move(cf.frame);
        out.valuation = std::move(val);
        out.origin = "algebra carrier=" + std::to_string(A.size()) +
                     " #" + std::to_string(structure_idx);
        return out;
      }
    }
  }

  // Stage 2: direct frame enumeration; exhaustive through 3 worlds, seeded
  // sampling beyond.
  Stage2 st{e, bounds, out, (frag & kFragRL) != 0, (frag & kFragDual) != 0,
            wants_dual};
  for (int n = 1; n <= std::min(bounds.max_worlds, 3); ++n) {
    auto posets = enumerate_posets(n);
    for (size_t p = 0; p < posets.size(); ++p) {
      if (st.exhaustive(posets[p], int(p))) return out;
      if (st.over_budget()) return out;
    }
  }
  if (bounds.max_worlds > 3) {
    std::vector<FinitePoset> posets;
    for (int n = 4; n <= std::min(bounds.max_worlds, 5); ++n)
      for (auto& p : enumerate_posets(n)) posets.push_back(std::move(p));
    if (!posets.empty()) {
      std::mt19937_64 rng(bounds.seed);
      if (st.sampled(posets, rng)) return out;
    }
  }
  return out;
}

}  // namespace rlcan
