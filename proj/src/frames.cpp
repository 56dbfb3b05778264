#include "rlcan/frames.hpp"

#include <stdexcept>

namespace rlcan {

bool pair_leq(const FinitePoset& w, PairPolarity pol, int x1, int y1, int x2,
              int y2) {
  bool first = pol.rev_first ? w.leq(x2, x1) : w.leq(x1, x2);
  bool second = pol.rev_second ? w.leq(y2, y1) : w.leq(y1, y2);
  return first && second;
}

namespace {

// Lower (Hoare) clause: every element of u lies below some element of v.
bool em_lower(const FinitePoset& w, PairPolarity pol, const PairSet& u,
              const PairSet& v) {
  bool ok = true;
  u.for_each([&](int x, int y) {
    if (!ok) return;
    bool found = false;
    v.for_each([&](int a, int b) {
      found = found || pair_leq(w, pol, x, y, a, b);
    });
    ok = found;
  });
  return ok;
}

// Upper (Smyth) clause: every element of v lies above some element of u.
bool em_upper(const FinitePoset& w, PairPolarity pol, const PairSet& u,
              const PairSet& v) {
  bool ok = true;
  v.for_each([&](int a, int b) {
    if (!ok) return;
    bool found = false;
    u.for_each([&](int x, int y) {
      found = found || pair_leq(w, pol, x, y, a, b);
    });
    ok = found;
  });
  return ok;
}

}  // namespace

bool egli_milner_leq(const FinitePoset& w, PairPolarity pol, const PairSet& u,
                     const PairSet& v) {
  if (u.worlds() != v.worlds() || u.worlds() != w.size())
    throw std::invalid_argument("egli_milner_leq: base mismatch");
  return em_lower(w, pol, u, v) && em_upper(w, pol, u, v);
}

bool is_convex(const FinitePoset& w, PairPolarity pol, const PairSet& u) {
  // x <= y <= z with x, z in u forces y in u.
  const int n = w.size();
  bool ok = true;
  u.for_each([&](int x1, int y1) {
    u.for_each([&](int x2, int y2) {
      if (!ok) return;
      for (int a = 0; a < n && ok; ++a)
        for (int b = 0; b < n && ok; ++b) {
          if (u.test(a, b)) continue;
          if (pair_leq(w, pol, x1, y1, a, b) && pair_leq(w, pol, a, b, x2, y2))
            ok = false;
        }
    });
  });
  return ok;
}

SuccessorMap close_pairs(const FinitePoset& w, const SuccessorMap& g,
                         bool down_first, bool down_second) {
  const int n = w.size();
  SuccessorMap out(g.size(), PairSet(n));
  for (size_t i = 0; i < g.size(); ++i) {
    g[i].for_each([&](int x, int y) {
      Mask xs = down_first ? w.below(x) : w.above(x);
      Mask ys = down_second ? w.below(y) : w.above(y);
      for_each_bit(xs, [&](int a) {
        for_each_bit(ys, [&](int b) { out[i].set(a, b); });
      });
    });
  }
  return out;
}

SuccessorMap close_tensor(const FinitePoset& w, const SuccessorMap& g) {
  return close_pairs(w, g, true, true);
}
SuccessorMap close_lres(const FinitePoset& w, const SuccessorMap& g) {
  return close_pairs(w, g, true, false);
}
SuccessorMap close_rres(const FinitePoset& w, const SuccessorMap& g) {
  return close_pairs(w, g, false, true);
}

SuccessorMap overline(const FinitePoset& w, const SuccessorMap& g) {
  const int n = w.size();
  SuccessorMap out(n, PairSet(n));
  for (int x = 0; x < n; ++x)
    g[x].for_each([&](int y, int z) { out[z].set(y, x); });
  return out;
}

SuccessorMap underline(const FinitePoset& w, const SuccessorMap& g) {
  const int n = w.size();
  SuccessorMap out(n, PairSet(n));
  for (int x = 0; x < n; ++x)
    g[x].for_each([&](int y, int z) { out[y].set(x, z); });
  return out;
}

RccReport check_rcc(const FinitePoset& w, const SuccessorMap& g) {
  // The reconstruction of the residual components from a tensor map uses the
  // upper Egli-Milner clause of the displayed inequalities (the clause the
  // universally interpreted components need); the lower clause can fail on
  // perfectly good resource models, heaps with two values among them.
  const int n = w.size();
  SuccessorMap over = overline(w, g), under = underline(w, g);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!w.leq(a, b) || a == b) continue;
      if (!em_upper(w, kPolLRes, over[a], over[b]))
        return {false, {a, b, 0}};
      if (!em_upper(w, kPolRRes, under[a], under[b]))
        return {false, {a, b, 1}};
    }
  return {true, {}};
}

RccReport check_rcc_dual(const FinitePoset& w, const SuccessorMap& g) {
  // Dual reconstruction: the transposes interpret existential connectives,
  // so the lower clause is the operative one.
  const int n = w.size();
  SuccessorMap over = overline(w, g), under = underline(w, g);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!w.leq(a, b) || a == b) continue;
      if (!em_lower(w, kPolLRes, over[a], over[b]))
        return {false, {a, b, 0}};
      if (!em_lower(w, kPolRRes, under[a], under[b]))
        return {false, {a, b, 1}};
    }
  return {true, {}};
}

namespace {

enum class EmMode { Both, Lower, Upper };

struct Component {
  const SuccessorMap* map;
  PairPolarity pol;
  EmMode mode;
  int id;
};

Result<bool> check_component(const FinitePoset& w, const Component& c) {
  const int n = w.size();
  if (int(c.map->size()) != n)
    return make_error("NotMonotone", {c.id}, "component not total");
  for (int x = 0; x < n; ++x)
    if (!is_convex(w, c.pol, (*c.map)[x]))
      return make_error("NotConvex", {x, c.id});
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!w.leq(x, y) || x == y) continue;
      const PairSet& u = (*c.map)[x];
      const PairSet& v = (*c.map)[y];
      bool ok = true;
      switch (c.mode) {
        case EmMode::Both: ok = egli_milner_leq(w, c.pol, u, v); break;
        case EmMode::Lower: ok = em_lower(w, c.pol, u, v); break;
        case EmMode::Upper: ok = em_upper(w, c.pol, u, v); break;
      }
      if (!ok) return make_error("NotMonotone", {x, y, c.id});
    }
  return true;
}

}  // namespace

Result<ResourceFrame> validate_frame(ResourceFrame f) {
  // The tensor and par maps carry the frame's data and are monotone in the
  // full Egli-Milner order. The residual components only ever support
  // universally (lres, rres) or existentially (dlres, drres) interpreted
  // connectives, and are required monotone in the corresponding one-sided
  // clause; the full order fails on heap models with conflicting values.
  const int n = f.size();
  if (int(f.gammaI.size()) != n)
    return make_error("NotMonotone", {0}, "gammaI not total");
  std::vector<Component> comps{{&f.tensor, kPolTensor, EmMode::Both, 0},
                               {&f.lres, kPolLRes, EmMode::Upper, 1},
                               {&f.rres, kPolRRes, EmMode::Upper, 2}};
  if (f.has_dual) {
    if (int(f.gammaJ.size()) != n)
      return make_error("NotMonotone", {3}, "gammaJ not total");
    comps.push_back({&f.par, kPolTensor, EmMode::Both, 3});
    comps.push_back({&f.dlres, kPolLRes, EmMode::Lower, 4});
    comps.push_back({&f.drres, kPolRRes, EmMode::Lower, 5});
  }
  for (const auto& c : comps) {
    auto r = check_component(f.worlds, c);
    if (!is_ok(r)) return error(r);
  }
  if (f.has_modal) {
    // Convex-set values in P_c(W), Egli-Milner monotone maps.
    for (int id = 6; id <= 7; ++id) {
      const auto& m = id == 6 ? f.dia : f.box;
      if (int(m.size()) != n)
        return make_error("NotMonotone", {id}, "modal component not total");
      for (int x = 0; x < n; ++x) {
        Mask s = m[x];
        bool convex = true;
        for_each_bit(s, [&](int a) {
          for_each_bit(s, [&](int b) {
            Mask between = f.worlds.above(a) & f.worlds.below(b);
            convex = convex && (between & ~s) == 0;
          });
        });
        if (!convex) return make_error("NotConvex", {x, id});
      }
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          if (!f.worlds.leq(x, y) || x == y) continue;
          bool ok = true;
          for_each_bit(m[x], [&](int a) {
            ok = ok && (f.worlds.above(a) & m[y]);
          });
          for_each_bit(m[y], [&](int b) {
            ok = ok && (f.worlds.below(b) & m[x]);
          });
          if (!ok) return make_error("NotMonotone", {x, y, id});
        }
    }
  }
  return f;
}

UnitOrientationReport unit_orientation_report(const ResourceFrame& f,
                                              bool dual_block) {
  UnitOrientationReport rep;
  const auto& g = dual_block ? f.gammaJ : f.gammaI;
  const int unit_value = dual_block ? 1 : 0;
  rep.monotone_01 = rep.monotone_10 = true;
  const int n = f.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!f.worlds.leq(x, y)) continue;
      if (g[x] > g[y]) rep.monotone_01 = false;  // needs 0 <= 1
      if (g[x] < g[y]) rep.monotone_10 = false;  // needs 1 <= 0
    }
  Mask unit_set = 0;
  for (int x = 0; x < n; ++x)
    if (g[x] == unit_value) unit_set |= bit(x);
  rep.unit_set_is_upset = f.worlds.is_upset(unit_set);
  return rep;
}

Result<ResourceFrame> frame_from_tensor(const FinitePoset& w,
                                        std::vector<int> gammaI,
                                        const SuccessorMap& tensor) {
  const int n = w.size();
  for (int x = 0; x < n; ++x)
    if (!is_convex(w, kPolTensor, tensor[x]))
      return make_error("NotConvex", {x, 0});
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!w.leq(x, y) || x == y) continue;
      if (!egli_milner_leq(w, kPolTensor, tensor[x], tensor[y]))
        return make_error("NotMonotone", {x, y, 0});
    }
  auto rcc = check_rcc(w, tensor);
  if (!rcc.ok) return make_error("RCCViolated", rcc.witness);
  ResourceFrame f;
  f.worlds = w;
  f.gammaI = std::move(gammaI);
  f.tensor = tensor;
  f.lres = overline(w, tensor);
  f.rres = underline(w, tensor);
  return validate_frame(std::move(f));
}

Result<ResourceFrame> attach_dual_from_par(ResourceFrame frame,
                                           std::vector<int> gammaJ,
                                           const SuccessorMap& par) {
  const FinitePoset& w = frame.worlds;
  const int n = w.size();
  for (int x = 0; x < n; ++x)
    if (!is_convex(w, kPolTensor, par[x]))
      return make_error("NotConvex", {x, 3});
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!w.leq(x, y) || x == y) continue;
      if (!egli_milner_leq(w, kPolTensor, par[x], par[y]))
        return make_error("NotMonotone", {x, y, 3});
    }
  auto rcc = check_rcc_dual(w, par);
  if (!rcc.ok) return make_error("RCCViolated", rcc.witness);
  frame.has_dual = true;
  frame.gammaJ = std::move(gammaJ);
  frame.par = par;
  frame.dlres = overline(w, par);
  frame.drres = underline(w, par);
  return validate_frame(std::move(frame));
}

bool is_tensor_reconstructed(const ResourceFrame& f, ReconstructionMode mode) {
  SuccessorMap over = overline(f.worlds, f.tensor);
  SuccessorMap under = underline(f.worlds, f.tensor);
  if (mode == ReconstructionMode::Exact)
    return f.lres == over && f.rres == under;
  auto cl_l = close_pairs(f.worlds, f.lres, true, false);
  auto cl_r = close_pairs(f.worlds, f.rres, false, true);
  return close_pairs(f.worlds, over, true, false) == cl_l &&
         close_pairs(f.worlds, under, false, true) == cl_r;
}

Result<StructuralReport> check_structural(const ResourceFrame& f,
                                          const std::string& rule) {
  const int n = f.size();
  if (rule == "e") {
    auto closed = close_tensor(f.worlds, f.tensor);
    for (int x = 0; x < n; ++x) {
      StructuralReport rep{false, {x}};
      bool ok = true;
      f.tensor[x].for_each([&](int y, int z) {
        ok = ok && closed[x].test(z, y);
      });
      if (!ok) return rep;
    }
    return StructuralReport{true, {}};
  }
  if (rule == "c") {
    for (int x = 0; x < n; ++x) {
      bool found = false;
      f.tensor[x].for_each([&](int y, int z) {
        found = found || (f.worlds.leq(x, y) && f.worlds.leq(x, z));
      });
      if (!found) return StructuralReport{false, {x}};
    }
    return StructuralReport{true, {}};
  }
  if (rule == "lw") {
    for (int x = 0; x < n; ++x)
      if (f.gammaI[x] != 0) return StructuralReport{false, {x}};
    return StructuralReport{true, {}};
  }
  if (rule == "rw") {
    if (!f.has_dual)
      return make_error("DualBlockMissing", {},
                        "rule rw needs the dual block");
    for (int x = 0; x < n; ++x)
      if (f.gammaJ[x] != 0) return StructuralReport{false, {x}};
    return StructuralReport{true, {}};
  }
  return make_error("UnknownRule", {}, rule);
}

namespace {

int ipow(int b, int e) {
  int r = 1;
  while (e--) r *= b;
  return r;
}

int heap_digit(int world, int addr, int vals) {
  return (world / ipow(vals + 1, addr)) % (vals + 1);
}

// f <= g iff g extends f.
bool heap_leq(int f, int g, int addrs, int vals) {
  for (int a = 0; a < addrs; ++a) {
    int df = heap_digit(f, a, vals);
    if (df != 0 && df != heap_digit(g, a, vals)) return false;
  }
  return true;
}

}  // namespace

std::string heap_world_name(int addrs, int vals, int world) {
  std::string s = "{";
  bool first = true;
  for (int a = 0; a < addrs; ++a) {
    int d = heap_digit(world, a, vals);
    if (d == 0) continue;
    if (!first) s += ",";
    first = false;
    s += std::to_string(a + 1) + "->" + std::to_string(d);
  }
  return s + "}";
}

Result<ResourceFrame> heap_frame(int addrs, int vals,
                                 std::optional<Mask> unit_upset,
                                 int max_worlds) {
  if (addrs < 0 || vals < 0)
    return make_error("SizeLimitExceeded", {addrs, vals});
  long count = 1;
  for (int a = 0; a < addrs; ++a) {
    count *= vals + 1;
    if (count > std::min(max_worlds, kMaxElements))
      return make_error("SizeLimitExceeded", {addrs, vals},
                        "(vals+1)^addrs exceeds the world cap");
  }
  const int n = int(count);
  std::vector<std::pair<int, int>> leq;
  for (int f = 0; f < n; ++f)
    for (int g = 0; g < n; ++g)
      if (heap_leq(f, g, addrs, vals)) leq.emplace_back(f, g);
  auto pr = FinitePoset::make(n, leq);
  if (!is_ok(pr)) return error(pr);
  FinitePoset w = take(std::move(pr));

  std::vector<int> gammaI(n);
  for (int f = 0; f < n; ++f) gammaI[f] = f == 0 ? 0 : 1;

  auto dom = [&](int f) {
    Mask d = 0;
    for (int a = 0; a < addrs; ++a)
      if (heap_digit(f, a, vals) != 0) d |= bit(a);
    return d;
  };
  auto restrict_to = [&](int f, Mask d) {
    int out = 0;
    for (int a = 0; a < addrs; ++a)
      if (has(d, a)) out += heap_digit(f, a, vals) * ipow(vals + 1, a);
    return out;
  };

  SuccessorMap tensor(n, PairSet(n));
  for (int f = 0; f < n; ++f)
    for (int g = 0; g < n; ++g)
      for (int h = 0; h < n; ++h) {
        if (dom(g) & dom(h)) continue;
        if (restrict_to(f, dom(g)) == g && restrict_to(f, dom(h)) == h)
          tensor[f].set(g, h);
      }

  auto fr = frame_from_tensor(w, std::move(gammaI), tensor);
  if (!is_ok(fr) || !unit_upset) return fr;

  ResourceFrame frame = take(std::move(fr));
  Mask u = *unit_upset & full_mask(n);
  u = w.up_closure(u);
  std::vector<int> gammaJ(n);
  for (int f = 0; f < n; ++f) gammaJ[f] = has(u, f) ? 1 : 0;
  // dom(f) = dom(g) n dom(h) and g, h agree on dom(f).
  SuccessorMap par(n, PairSet(n));
  for (int f = 0; f < n; ++f)
    for (int g = 0; g < n; ++g)
      for (int h = 0; h < n; ++h) {
        Mask df = dom(f);
        if ((dom(g) & dom(h)) != df) continue;
        if (restrict_to(g, df) == restrict_to(h, df)) par[f].set(g, h);
      }
  return attach_dual_from_par(std::move(frame), std::move(gammaJ), par);
}

std::vector<PairSet> pair_downsets(const FinitePoset& w, PairPolarity pol) {
  const int n = w.size();
  if (n * n > 20)
    throw std::invalid_argument("pair_downsets: world poset too large");
  std::vector<PairSet> out;
  const int total = 1 << (n * n);
  for (int m = 0; m < total; ++m) {
    PairSet s(n);
    for (int i = 0; i < n * n; ++i)
      if ((m >> i) & 1) s.set(i / n, i % n);
    // Down-closed under the (polarized) product order.
    bool ok = true;
    s.for_each([&](int x, int y) {
      for (int a = 0; a < n && ok; ++a)
        for (int b = 0; b < n && ok; ++b)
          if (!s.test(a, b) && pair_leq(w, pol, a, b, x, y)) ok = false;
    });
    if (ok) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace rlcan
