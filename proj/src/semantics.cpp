#include "rlcan/semantics.hpp"

#include <stdexcept>

namespace rlcan {

Result<Model> make_model(ResourceFrame frame,
                         std::map<std::string, Mask> valuation) {
  for (const auto& [name, worlds] : valuation)
    if (!frame.worlds.is_upset(worlds))
      return make_error("NotAnUpset", {}, "valuation of " + name);
  return Model{std::move(frame), std::move(valuation)};
}

Result<Mask> denote(const Formula& phi, const Model& m) {
  const ResourceFrame& f = m.frame;
  const int n = f.size();
  const Mask all = full_mask(n);
  switch (phi.kind()) {
    case Kind::Var: {
      auto it = m.valuation.find(phi.var_name());
      if (it == m.valuation.end())
        return make_error("UnboundVariable", {}, phi.var_name());
      return it->second;
    }
    case Kind::Top: return all;
    case Kind::Bot: return Mask{0};
    case Kind::UnitI: {
      Mask out = 0;
      for (int w = 0; w < n; ++w)
        if (f.gammaI[w] == 0) out |= bit(w);
      return out;
    }
    case Kind::UnitJ: {
      if (!f.has_dual) return make_error("MissingDualBlock", {}, "J");
      Mask out = 0;
      for (int w = 0; w < n; ++w)
        if (f.gammaJ[w] == 1) out |= bit(w);
      return out;
    }
    case Kind::And: case Kind::Or: {
      auto l = denote(phi.left(), m);
      if (!is_ok(l)) return l;
      auto r = denote(phi.right(), m);
      if (!is_ok(r)) return r;
      return phi.kind() == Kind::And ? (value(l) & value(r))
                                     : (value(l) | value(r));
    }
    case Kind::Dia: case Kind::Box: {
      if (!f.has_modal)
        return make_error("FragmentViolation", {}, "modal block missing");
      auto a = denote(phi.child(), m);
      if (!is_ok(a)) return a;
      Mask out = 0;
      for (int w = 0; w < n; ++w) {
        bool in = phi.kind() == Kind::Dia ? (f.dia[w] & value(a)) != 0
                                          : (f.box[w] & ~value(a)) == 0;
        if (in) out |= bit(w);
      }
      return out;
    }
    default: break;
  }
  if ((phi.fragment() & kFragDual) && !f.has_dual)
    return make_error("MissingDualBlock", {}, print(phi));
  auto lr = denote(phi.left(), m);
  if (!is_ok(lr)) return lr;
  auto rr = denote(phi.right(), m);
  if (!is_ok(rr)) return rr;
  const Mask u = value(lr), v = value(rr);
  Mask out = 0;
  for (int w = 0; w < n; ++w) {
    bool in = false;
    switch (phi.kind()) {
      case Kind::Fuse:  // exists (x, y): x in [[l]], y in [[r]]
        f.tensor[w].for_each([&](int x, int y) {
          in = in || (has(u, x) && has(v, y));
        });
        break;
      case Kind::LRes:  // forall (x, y): x in [[l]] -> y in [[r]]
        in = true;
        f.lres[w].for_each([&](int x, int y) {
          in = in && (!has(u, x) || has(v, y));
        });
        break;
      case Kind::RRes:  // forall (x, y): y in [[r]] -> x in [[l]]
        in = true;
        f.rres[w].for_each([&](int x, int y) {
          in = in && (!has(v, y) || has(u, x));
        });
        break;
      case Kind::Par:  // forall (x, y): x in [[l]] or y in [[r]]
        in = true;
        f.par[w].for_each([&](int x, int y) {
          in = in && (has(u, x) || has(v, y));
        });
        break;
      case Kind::DLRes:  // exists (x, y): x not in [[l]], y in [[r]]
        f.dlres[w].for_each([&](int x, int y) {
          in = in || (!has(u, x) && has(v, y));
        });
        break;
      case Kind::DRRes:  // exists (x, y): y not in [[r]], x in [[l]]
        f.drres[w].for_each([&](int x, int y) {
          in = in || (!has(v, y) && has(u, x));
        });
        break;
      default:
        throw std::logic_error("denote: unhandled connective");
    }
    if (in) out |= bit(w);
  }
  return out;
}

Result<Mask> fused_denote(const Formula& phi, const Model& m) {
  if (!m.frame.has_dual)
    return make_error("MissingDualBlock", {},
                      "fused interpretation needs the product coalgebra");
  return denote(phi, m);
}

Result<bool> upset_check(const Formula& phi, const Model& m) {
  auto d = denote(phi, m);
  if (!is_ok(d)) return error(d);
  return m.frame.worlds.is_upset(value(d));
}

Result<FrameValidityReport> frame_valid(const ResourceFrame& f,
                                        const Inequation& e, int var_cap) {
  const auto vars = e.variables();
  if (int(vars.size()) > var_cap)
    throw std::invalid_argument("frame_valid: variable cap exceeded");
  const auto upsets = f.worlds.upsets();
  const size_t k = vars.size();
  std::vector<size_t> idx(k, 0);
  Model m{f, {}};
  for (;;) {
    for (size_t i = 0; i < k; ++i) m.valuation[vars[i]] = upsets[idx[i]];
    auto l = denote(e.lhs, m);
    if (!is_ok(l)) return error(l);
    auto r = denote(e.rhs, m);
    if (!is_ok(r)) return error(r);
    bool ok = e.equality ? value(l) == value(r)
                         : (value(l) & ~value(r)) == 0;
    if (!ok) return FrameValidityReport{false, m.valuation};
    size_t c = 0;
    while (c < k && ++idx[c] == upsets.size()) idx[c++] = 0;
    if (c == k) break;
  }
  return FrameValidityReport{true, {}};
}

ResourceFrame closure_frame(const ResourceFrame& f) {
  ResourceFrame out = f;
  out.tensor = close_pairs(f.worlds, f.tensor, true, true);
  out.lres = close_pairs(f.worlds, f.lres, true, false);
  out.rres = close_pairs(f.worlds, f.rres, false, true);
  if (f.has_dual) {
    out.par = close_pairs(f.worlds, f.par, false, false);
    out.dlres = close_pairs(f.worlds, f.dlres, false, true);
    out.drres = close_pairs(f.worlds, f.drres, true, false);
  }
  return out;
}

UnitConditionReport check_unit_condition(const ResourceFrame& f) {
  UnitConditionReport rep;
  rep.ok = true;
  const auto* fc1 = find_schema("FC1");
  std::map<std::string, Formula> asg{{"a", Formula::var("a")}};
  const auto insts = take(instantiate(*fc1, asg));
  for (const auto& inst : insts) {
    auto r = frame_valid(f, inst, 1);
    if (!is_ok(r)) continue;  // fragment errors cannot arise: FC1 is RL-only
    if (!value(r).valid) {
      rep.ok = false;
      rep.counter_valuation = value(r).counter_valuation;
      break;
    }
  }

  // Structural diagnostic, read off the (down, down) closure.
  rep.structural_ok = true;
  const int n = f.size();
  auto closed = close_tensor(f.worlds, f.tensor);
  auto unit = [&](int w) { return f.gammaI[w] == 0; };
  for (int w = 0; w < n && rep.structural_ok; ++w) {
    bool right = false, left = false, only_form = true;
    closed[w].for_each([&](int x, int y) {
      if (x == w && unit(y)) right = true;
      if (y == w && unit(x)) left = true;
      if (unit(y) && !f.worlds.leq(x, w)) only_form = false;
      if (unit(x) && !f.worlds.leq(y, w)) only_form = false;
    });
    if (!(right && left && only_form)) {
      rep.structural_ok = false;
      rep.structural_witness = {w};
    }
  }
  return rep;
}

}  // namespace rlcan
