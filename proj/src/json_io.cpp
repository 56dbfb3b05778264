#include "rlcan/json_io.hpp"

namespace rlcan {

namespace {

Json mask_to_array(Mask m) {
  Json a = Json::array();
  for_each_bit(m, [&](int i) { a.push_back(i); });
  return a;
}

Result<Mask> mask_from_array(const Json& j, int limit) {
  if (!j.is_array()) return make_error("BadInput", {}, "expected an index array");
  Mask m = 0;
  for (const auto& e : j) {
    if (!e.is_number_integer())
      return make_error("BadInput", {}, "expected an index array");
    int i = e.get<int>();
    if (i < 0 || i >= limit)
      return make_error("BadInput", {i}, "index out of range");
    m |= bit(i);
  }
  return m;
}

Json pairs_to_json(const std::vector<std::pair<int, int>>& pairs) {
  Json a = Json::array();
  for (auto [i, j] : pairs) a.push_back(Json::array({i, j}));
  return a;
}

Result<std::vector<std::pair<int, int>>> pairs_from_json(const Json& j) {
  if (!j.is_array()) return make_error("BadInput", {}, "expected a pair array");
  std::vector<std::pair<int, int>> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      return make_error("BadInput", {}, "expected [i, j] pairs");
    out.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return out;
}

Json table_to_json(const std::vector<int>& t, int n) {
  Json rows = Json::array();
  for (int i = 0; i < n; ++i) {
    Json row = Json::array();
    for (int j = 0; j < n; ++j) row.push_back(t[i * n + j]);
    rows.push_back(std::move(row));
  }
  return rows;
}

Result<std::vector<int>> table_from_json(const Json& j, int n) {
  std::vector<int> t;
  if (!j.is_array() || int(j.size()) != n)
    return make_error("BadInput", {}, "expected an n x n table");
  for (const auto& row : j) {
    if (!row.is_array() || int(row.size()) != n)
      return make_error("BadInput", {}, "expected an n x n table");
    for (const auto& e : row) {
      if (!e.is_number_integer())
        return make_error("BadInput", {}, "table entries must be indices");
      t.push_back(e.get<int>());
    }
  }
  return t;
}

}  // namespace

Json lattice_to_json(const FiniteDL& a) {
  Json j;
  j["size"] = a.size();
  std::vector<std::pair<int, int>> leq;
  for (int i = 0; i < a.size(); ++i)
    for (int k = 0; k < a.size(); ++k)
      if (a.leq(i, k)) leq.emplace_back(i, k);
  j["leq"] = pairs_to_json(leq);
  j["bounded"] = a.bounded();
  return j;
}

Result<FiniteDL> lattice_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("size") || !j.contains("leq"))
    return make_error("BadInput", {}, "lattice needs size and leq");
  int n = j["size"].get<int>();
  auto pr = pairs_from_json(j["leq"]);
  if (!is_ok(pr)) return error(pr);
  bool bounded = j.value("bounded", true);
  return FiniteDL::validate(n, value(pr), bounded);
}

Json dle_to_json(const DLE& a) {
  Json j;
  j["carrier"] = lattice_to_json(a.carrier);
  Json ops;
  if (a.has(kFragRL)) {
    ops["unit_i"] = a.unit_i;
    ops["fuse"] = table_to_json(a.fuse, a.size());
    ops["lres"] = table_to_json(a.lres, a.size());
    ops["rres"] = table_to_json(a.rres, a.size());
  }
  if (a.has(kFragDual)) {
    ops["unit_j"] = a.unit_j;
    ops["par"] = table_to_json(a.par, a.size());
    ops["dlres"] = table_to_json(a.dlres, a.size());
    ops["drres"] = table_to_json(a.drres, a.size());
  }
  if (a.has(kFragML)) {
    ops["dia"] = a.dia;
    ops["box"] = a.box;
  }
  j["ops"] = std::move(ops);
  if (!a.name.empty()) j["name"] = a.name;
  return j;
}

Result<DLE> dle_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("carrier") || !j.contains("ops"))
    return make_error("BadInput", {}, "dle needs carrier and ops");
  auto cr = lattice_from_json(j["carrier"]);
  if (!is_ok(cr)) return error(cr);
  DLE d;
  d.carrier = take(std::move(cr));
  const int n = d.size();
  const Json& ops = j["ops"];
  auto load2 = [&](const char* key, std::vector<int>& into) -> Result<bool> {
    if (!ops.contains(key)) return make_error("BadInput", {}, key);
    auto t = table_from_json(ops[key], n);
    if (!is_ok(t)) return error(t);
    into = value(t);
    return true;
  };
  if (ops.contains("fuse") || ops.contains("unit_i")) {
    d.signature |= kFragRL;
    d.unit_i = ops.value("unit_i", -1);
    for (auto [key, tbl] : {std::pair{"fuse", &d.fuse},
                            std::pair{"lres", &d.lres},
                            std::pair{"rres", &d.rres}}) {
      auto r = load2(key, *tbl);
      if (!is_ok(r)) return error(r);
    }
  }
  if (ops.contains("par") || ops.contains("unit_j")) {
    d.signature |= kFragDual;
    d.unit_j = ops.value("unit_j", -1);
    for (auto [key, tbl] : {std::pair{"par", &d.par},
                            std::pair{"dlres", &d.dlres},
                            std::pair{"drres", &d.drres}}) {
      auto r = load2(key, *tbl);
      if (!is_ok(r)) return error(r);
    }
  }
  if (ops.contains("dia") || ops.contains("box")) {
    d.signature |= kFragML;
    for (auto [key, tbl] : {std::pair{"dia", &d.dia},
                            std::pair{"box", &d.box}}) {
      if (!ops.contains(key)) return make_error("BadInput", {}, key);
      for (const auto& e : ops[key]) tbl->push_back(e.get<int>());
    }
  }
  if (j.contains("name")) d.name = j["name"].get<std::string>();
  return validate_dle(std::move(d));
}

namespace {

Json successor_map_to_json(const SuccessorMap& g) {
  Json a = Json::array();
  for (size_t w = 0; w < g.size(); ++w) {
    Json pairs = Json::array();
    g[w].for_each([&](int x, int y) { pairs.push_back(Json::array({x, y})); });
    a.push_back(Json::array({int(w), std::move(pairs)}));
  }
  return a;
}

Result<SuccessorMap> successor_map_from_json(const Json& j, int n) {
  SuccessorMap g(n, PairSet(n));
  if (!j.is_array())
    return make_error("BadInput", {}, "expected [[world, [[x,y],...]], ...]");
  for (const auto& entry : j) {
    if (!entry.is_array() || entry.size() != 2 ||
        !entry[0].is_number_integer())
      return make_error("BadInput", {}, "expected [world, pairs] entries");
    int w = entry[0].get<int>();
    if (w < 0 || w >= n) return make_error("BadInput", {w}, "world out of range");
    auto pr = pairs_from_json(entry[1]);
    if (!is_ok(pr)) return error(pr);
    for (auto [x, y] : value(pr)) {
      if (x < 0 || x >= n || y < 0 || y >= n)
        return make_error("BadInput", {x, y}, "successor out of range");
      g[w].set(x, y);
    }
  }
  return g;
}

}  // namespace

Json frame_to_json(const ResourceFrame& f) {
  Json j;
  j["worlds"] = f.size();
  std::vector<std::pair<int, int>> leq;
  for (int i = 0; i < f.size(); ++i)
    for (int k = 0; k < f.size(); ++k)
      if (f.worlds.leq(i, k)) leq.emplace_back(i, k);
  j["leq"] = pairs_to_json(leq);
  j["gammaI"] = f.gammaI;
  j["gammaTensor"] = successor_map_to_json(f.tensor);
  j["gammaLRes"] = successor_map_to_json(f.lres);
  j["gammaRRes"] = successor_map_to_json(f.rres);
  if (f.has_dual) {
    Json d;
    d["gammaJ"] = f.gammaJ;
    d["gammaPar"] = successor_map_to_json(f.par);
    d["gammaDLRes"] = successor_map_to_json(f.dlres);
    d["gammaDRRes"] = successor_map_to_json(f.drres);
    j["dual"] = std::move(d);
  }
  if (f.has_modal) {
    Json m;
    Json dia = Json::array(), box = Json::array();
    for (int w = 0; w < f.size(); ++w) {
      dia.push_back(mask_to_array(f.dia[w]));
      box.push_back(mask_to_array(f.box[w]));
    }
    m["dia"] = std::move(dia);
    m["box"] = std::move(box);
    j["modal"] = std::move(m);
  }
  return j;
}

Result<ResourceFrame> frame_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("worlds") || !j.contains("leq"))
    return make_error("BadInput", {}, "frame needs worlds and leq");
  int n = j["worlds"].get<int>();
  auto pr = pairs_from_json(j["leq"]);
  if (!is_ok(pr)) return error(pr);
  auto wr = FinitePoset::make(n, value(pr));
  if (!is_ok(wr)) return error(wr);
  ResourceFrame f;
  f.worlds = take(std::move(wr));
  if (!j.contains("gammaI") || !j["gammaI"].is_array() ||
      int(j["gammaI"].size()) != n)
    return make_error("BadInput", {}, "gammaI must list one flag per world");
  for (const auto& e : j["gammaI"]) f.gammaI.push_back(e.get<int>() ? 1 : 0);
  if (!j.contains("gammaTensor"))
    return make_error("BadInput", {}, "gammaTensor missing");
  auto tr = successor_map_from_json(j["gammaTensor"], n);
  if (!is_ok(tr)) return error(tr);
  f.tensor = take(std::move(tr));

  const bool has_res = j.contains("gammaLRes") || j.contains("gammaRRes");
  if (has_res) {
    if (!j.contains("gammaLRes") || !j.contains("gammaRRes"))
      return make_error("BadInput", {},
                        "gammaLRes and gammaRRes must be given together");
    auto lr = successor_map_from_json(j["gammaLRes"], n);
    if (!is_ok(lr)) return error(lr);
    auto rr = successor_map_from_json(j["gammaRRes"], n);
    if (!is_ok(rr)) return error(rr);
    f.lres = take(std::move(lr));
    f.rres = take(std::move(rr));
  } else {
    auto rcc = check_rcc(f.worlds, f.tensor);
    if (!rcc.ok) return make_error("RCCViolated", rcc.witness);
    f.lres = overline(f.worlds, f.tensor);
    f.rres = underline(f.worlds, f.tensor);
  }

  if (j.contains("dual")) {
    const Json& d = j["dual"];
    f.has_dual = true;
    if (!d.contains("gammaJ") || int(d["gammaJ"].size()) != n)
      return make_error("BadInput", {}, "gammaJ must list one flag per world");
    for (const auto& e : d["gammaJ"]) f.gammaJ.push_back(e.get<int>() ? 1 : 0);
    if (!d.contains("gammaPar"))
      return make_error("BadInput", {}, "gammaPar missing");
    auto par = successor_map_from_json(d["gammaPar"], n);
    if (!is_ok(par)) return error(par);
    f.par = take(std::move(par));
    if (d.contains("gammaDLRes") && d.contains("gammaDRRes")) {
      auto lr = successor_map_from_json(d["gammaDLRes"], n);
      if (!is_ok(lr)) return error(lr);
      auto rr = successor_map_from_json(d["gammaDRRes"], n);
      if (!is_ok(rr)) return error(rr);
      f.dlres = take(std::move(lr));
      f.drres = take(std::move(rr));
    } else {
      auto rcc = check_rcc_dual(f.worlds, f.par);
      if (!rcc.ok) return make_error("RCCViolated", rcc.witness);
      f.dlres = overline(f.worlds, f.par);
      f.drres = underline(f.worlds, f.par);
    }
  }
  if (j.contains("modal")) {
    const Json& m = j["modal"];
    f.has_modal = true;
    for (auto [key, into] : {std::pair{"dia", &f.dia},
                             std::pair{"box", &f.box}}) {
      if (!m.contains(key) || int(m[key].size()) != n)
        return make_error("BadInput", {}, "modal block needs dia and box");
      for (const auto& e : m[key]) {
        auto mr = mask_from_array(e, n);
        if (!is_ok(mr)) return error(mr);
        into->push_back(value(mr));
      }
    }
  }
  return validate_frame(std::move(f));
}

Json valuation_to_json(const std::map<std::string, Mask>& v) {
  Json j = Json::object();
  for (const auto& [name, worlds] : v) j[name] = mask_to_array(worlds);
  return j;
}

Result<std::map<std::string, Mask>> valuation_from_json(const Json& j,
                                                        int worlds) {
  if (!j.is_object())
    return make_error("BadInput", {}, "valuation must map names to worlds");
  std::map<std::string, Mask> v;
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto mr = mask_from_array(it.value(), worlds);
    if (!is_ok(mr)) return error(mr);
    v[it.key()] = value(mr);
  }
  return v;
}

Json model_to_json(const ResourceFrame& f,
                   const std::map<std::string, Mask>& v) {
  Json j;
  j["frame"] = frame_to_json(f);
  j["valuation"] = valuation_to_json(v);
  return j;
}

Json error_to_json(const Error& e) {
  Json j;
  j["error"] = e.code;
  j["witness"] = e.witness;
  if (!e.message.empty()) j["message"] = e.message;
  return j;
}

}  // namespace rlcan
