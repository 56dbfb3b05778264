// Command-line front end: lattice/algebra/frame validation, model checking,
// canonicity reports, Jonsson-Tarski constructions, countermodel search and
// the self-test suite. Exit codes: 0 = property holds / artifact valid,
// 1 = property fails (witness in the report), 2 = usage or input error.

#include <fstream>
#include <iostream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "rlcan/accept.hpp"
#include "rlcan/canext.hpp"
#include "rlcan/json_io.hpp"
#include "rlcan/jt.hpp"
#include "rlcan/search.hpp"

using namespace rlcan;

namespace {

struct Options {
  bool json = false;
  std::uint64_t seed = 0;
  int max_elements = 64;
  int max_worlds = 8;
  long budget = 200000;
  int max_vars = 4;
  std::string fcd2_unit = "I";

  SchemaOptions schema_opts() const { return {fcd2_unit == "J"}; }
};

int usage_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

int report_error(const Options& opt, const Error& e) {
  if (opt.json)
    std::cout << error_to_json(e).dump(2) << "\n";
  else {
    std::cout << e.code;
    if (!e.witness.empty()) {
      std::cout << " witness=[";
      for (size_t i = 0; i < e.witness.size(); ++i)
        std::cout << (i ? "," : "") << e.witness[i];
      std::cout << "]";
    }
    if (!e.message.empty()) std::cout << " (" << e.message << ")";
    std::cout << "\n";
  }
  return 1;
}

// Formula arguments accept "@path": one formula or inequation per line,
// '#' starts a comment.
Result<std::vector<std::string>> formula_lines(const std::string& arg) {
  if (arg.rfind('@', 0) != 0) return std::vector<std::string>{arg};
  std::ifstream in(arg.substr(1));
  if (!in) return make_error("BadInput", {}, "cannot open " + arg.substr(1));
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    size_t a = line.find_first_not_of(" \t");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t");
    out.push_back(line.substr(a, b - a + 1));
  }
  return out;
}

Result<Json> load_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) return make_error("BadInput", {}, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded())
    return make_error("BadInput", {}, "invalid JSON in " + path);
  return j;
}

// "--eq" values accept a literal inequation or "schema:NAME" (first member
// of the named schema, with --fcd2-unit honored).
Result<Inequation> load_inequation(const Options& opt, const std::string& text) {
  if (text.rfind("schema:", 0) == 0) {
    const auto* s = find_schema(text.substr(7), opt.schema_opts());
    if (!s) return make_error("BadInput", {}, "unknown schema " + text.substr(7));
    return s->shape.front();
  }
  return parse_inequation(text);
}

Result<Valuation> parse_element_valuation(const std::string& text) {
  Valuation v;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      return make_error("BadInput", {}, "valuation items look like p=3");
    std::string name = item.substr(0, eq);
    v[name] = std::stoi(item.substr(eq + 1));
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    // trim
    size_t a = item.find_first_not_of(" \t");
    size_t b = item.find_last_not_of(" \t");
    if (a == std::string::npos) continue;
    out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

void print_worlds(Mask m) {
  std::cout << "{";
  bool first = true;
  for_each_bit(m, [&](int w) {
    std::cout << (first ? "" : ",") << w;
    first = false;
  });
  std::cout << "}";
}

int cmd_lattice_check(const Options& opt, const std::string& path) {
  auto j = load_json(path);
  if (!is_ok(j)) return usage_error(error(j).message);
  auto r = lattice_from_json(value(j));
  if (!is_ok(r)) return report_error(opt, error(r));
  const FiniteDL& a = value(r);
  if (opt.json) {
    Json out;
    out["valid"] = true;
    out["size"] = a.size();
    out["bounded"] = a.bounded();
    out["bottom"] = a.bottom();
    out["top"] = a.top();
    out["boolean"] = a.is_boolean();
    out["prime_filters"] = int(prime_filters(a).filters.size());
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "valid distributive lattice: " << a.size() << " elements, "
              << (a.bounded() ? "bounded" : "unbounded as a signature")
              << ", bottom=" << a.bottom() << ", top=" << a.top()
              << (a.is_boolean() ? ", boolean" : "") << ", "
              << prime_filters(a).filters.size() << " prime filters\n";
  }
  return 0;
}

int cmd_algebra_check(const Options& opt, const std::string& path) {
  auto j = load_json(path);
  if (!is_ok(j)) return usage_error(error(j).message);
  auto r = dle_from_json(value(j));
  if (!is_ok(r)) return report_error(opt, error(r));
  const DLE& a = value(r);
  bool residuated = a.has(kFragRL) && check_residuated(a).residuated;
  if (opt.json) {
    Json out;
    out["valid"] = true;
    out["size"] = a.size();
    out["blocks"] = Json::array();
    if (a.has(kFragRL)) out["blocks"].push_back("rl");
    if (a.has(kFragDual)) out["blocks"].push_back("dual");
    if (a.has(kFragML)) out["blocks"].push_back("ml");
    if (a.has(kFragRL)) out["residuated"] = residuated;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "valid DLE: " << a.size() << " elements";
    if (a.has(kFragRL))
      std::cout << (residuated ? ", residuated" : ", not residuated");
    std::cout << "\n";
  }
  return 0;
}

int cmd_algebra_holds(const Options& opt, const std::string& path,
                      const std::string& eq) {
  auto j = load_json(path);
  if (!is_ok(j)) return usage_error(error(j).message);
  auto ar = dle_from_json(value(j));
  if (!is_ok(ar)) return report_error(opt, error(ar));
  auto er = load_inequation(opt, eq);
  if (!is_ok(er)) return usage_error(error(er).code + ": " + error(er).message);
  const Inequation& e = value(er);
  if (int(e.variables().size()) > opt.max_vars)
    return usage_error("inequation has more than --max-vars variables");
  auto rep = holds(value(ar), e);
  if (opt.json) {
    Json out;
    out["inequation"] = print(e);
    out["holds"] = rep.holds;
    if (!rep.holds) {
      Json w;
      for (const auto& [k, x] : rep.witness) w[k] = x;
      out["witness"] = w;
    }
    std::cout << out.dump(2) << "\n";
  } else if (rep.holds) {
    std::cout << "holds: " << print(e) << "\n";
  } else {
    std::cout << "fails: " << print(e) << "  at";
    for (const auto& [k, x] : rep.witness) std::cout << " " << k << "=" << x;
    std::cout << "\n";
  }
  return rep.holds ? 0 : 1;
}

int cmd_canext_report(const Options& opt, const std::string& path,
                      const std::string& eq) {
  auto j = load_json(path);
  if (!is_ok(j)) return usage_error(error(j).message);
  auto ar = dle_from_json(value(j));
  if (!is_ok(ar)) return report_error(opt, error(ar));
  auto er = load_inequation(opt, eq);
  if (!is_ok(er)) return usage_error(error(er).code + ": " + error(er).message);
  auto rep = canonicity_check(value(ar), value(er));
  if (!is_ok(rep)) return report_error(opt, error(rep));
  const auto& c = value(rep);
  if (opt.json) {
    Json out;
    out["inequation"] = print(value(er));
    out["holds_in_base"] = c.holds_in_base;
    if (!c.holds_in_base) {
      Json w;
      for (const auto& [k, x] : c.base_witness) w[k] = x;
      out["base_witness"] = w;
    } else {
      out["holds_in_extension"] = c.holds_in_extension;
    }
    out["refuted"] = c.refuted();
    std::cout << out.dump(2) << "\n";
  } else {
    if (!c.holds_in_base) {
      std::cout << "hypothesis false: the inequation already fails in the base algebra\n";
    } else {
      std::cout << "holds in A: yes; holds in the canonical extension: "
                << (c.holds_in_extension ? "yes" : "NO (refutation)") << "\n";
    }
  }
  return c.refuted() ? 1 : 0;
}

int cmd_frame_check(const Options& opt, const std::string& path,
                    const std::string& reconstruction) {
  auto j = load_json(path);
  if (!is_ok(j)) return usage_error(error(j).message);
  auto fr = frame_from_json(value(j));
  if (!is_ok(fr)) return report_error(opt, error(fr));
  const ResourceFrame& f = value(fr);
  auto unit = unit_orientation_report(f, false);
  bool recon = is_tensor_reconstructed(
      f, reconstruction == "closure" ? ReconstructionMode::UpToClosure
                                     : ReconstructionMode::Exact);
  if (opt.json) {
    Json out;
    out["valid"] = true;
    out["worlds"] = f.size();
    out["dual"] = f.has_dual;
    out["modal"] = f.has_modal;
    out["gammaI_monotone_01"] = unit.monotone_01;
    out["gammaI_monotone_10"] = unit.monotone_10;
    out["unit_denotation_upset"] = unit.unit_set_is_upset;
    out["residuals_reconstructed"] = recon;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "valid frame: " << f.size() << " worlds"
              << (f.has_dual ? ", dual block" : "")
              << (f.has_modal ? ", modal block" : "") << "\n";
    std::cout << "gammaI monotone under 0<=1: " << (unit.monotone_01 ? "yes" : "no")
              << "; under 1<=0: " << (unit.monotone_10 ? "yes" : "no")
              << "; [[I]] upward closed: "
              << (unit.unit_set_is_upset ? "yes" : "no") << "\n";
    std::cout << "residual components match the tensor transposes ("
              << reconstruction << "): " << (recon ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_frame_rcc(const Options& opt, const std::string& path) {
  auto j = load_json(path);
  if (!is_ok(j)) return usage_error(error(j).message);
  auto fr = frame_from_json(value(j));
  if (!is_ok(fr)) return report_error(opt, error(fr));
  const ResourceFrame& f = value(fr);
  auto rcc = check_rcc(f.worlds, f.tensor);
  RccReport dual_rcc{true, {}};
  if (f.has_dual) dual_rcc = check_rcc_dual(f.worlds, f.par);
  if (opt.json) {
    Json out;
    out["tensor_rcc"] = rcc.ok;
    if (!rcc.ok) out["tensor_witness"] = rcc.witness;
    if (f.has_dual) {
      out["par_rcc"] = dual_rcc.ok;
      if (!dual_rcc.ok) out["par_witness"] = dual_rcc.witness;
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "tensor RCC: " << (rcc.ok ? "holds" : "fails") << "\n";
    if (f.has_dual)
      std::cout << "par RCC: " << (dual_rcc.ok ? "holds" : "fails") << "\n";
  }
  return rcc.ok && dual_rcc.ok ? 0 : 1;
}

int cmd_frame_heap(const Options& opt, int addrs, int vals,
                   const std::string& unit_upset) {
  std::optional<Mask> uu;
  if (!unit_upset.empty()) {
    Mask m = 0;
    for (const auto& s : split(unit_upset, ',')) m |= bit(std::stoi(s));
    uu = m;
  }
  auto fr = heap_frame(addrs, vals, uu, opt.max_worlds);
  if (!is_ok(fr)) return report_error(opt, error(fr));
  std::cout << frame_to_json(value(fr)).dump(2) << "\n";
  return 0;
}

int cmd_mc(const Options& opt, const std::string& frame_path,
           const std::string& val_path, const std::string& phi_text,
           int world) {
  auto fj = load_json(frame_path);
  if (!is_ok(fj)) return usage_error(error(fj).message);
  auto fr = frame_from_json(value(fj));
  if (!is_ok(fr)) return report_error(opt, error(fr));
  auto vj = load_json(val_path);
  if (!is_ok(vj)) return usage_error(error(vj).message);
  auto vr = valuation_from_json(value(vj), value(fr).size());
  if (!is_ok(vr)) return usage_error(error(vr).message);
  auto mr = make_model(take(std::move(fr)), value(vr));
  if (!is_ok(mr)) return report_error(opt, error(mr));
  auto pr = parse_formula(phi_text);
  if (!is_ok(pr)) return usage_error(error(pr).code + ": " + error(pr).message);
  auto d = denote(value(pr), value(mr));
  if (!is_ok(d)) return report_error(opt, error(d));
  auto ur = upset_check(value(pr), value(mr));
  if (opt.json) {
    Json out;
    out["phi"] = print(value(pr));
    Json worlds = Json::array();
    for_each_bit(value(d), [&](int w) { worlds.push_back(w); });
    out["denotation"] = worlds;
    out["upset"] = is_ok(ur) && value(ur);
    if (world >= 0) out["holds_at"] = has(value(d), world);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "[[" << print(value(pr)) << "]] = ";
    print_worlds(value(d));
    std::cout << (is_ok(ur) && value(ur) ? "  (an upset)" : "  (NOT an upset)")
              << "\n";
  }
  if (world >= 0) return has(value(d), world) ? 0 : 1;
  return 0;
}

int cmd_valid(const Options& opt, const std::string& frame_path,
              const std::string& eq, int var_cap) {
  auto fj = load_json(frame_path);
  if (!is_ok(fj)) return usage_error(error(fj).message);
  auto fr = frame_from_json(value(fj));
  if (!is_ok(fr)) return report_error(opt, error(fr));
  auto lines = formula_lines(eq);
  if (!is_ok(lines)) return usage_error(error(lines).message);
  Json results = Json::array();
  int rc = 0;
  for (const auto& text : value(lines)) {
    auto er = load_inequation(opt, text);
    if (!is_ok(er))
      return usage_error(error(er).code + ": " + error(er).message);
    if (int(value(er).variables().size()) > var_cap)
      return usage_error("inequation has more than --var-cap variables");
    auto rep = frame_valid(value(fr), value(er), var_cap);
    if (!is_ok(rep)) return report_error(opt, error(rep));
    if (opt.json) {
      Json out;
      out["inequation"] = print(value(er));
      out["valid"] = value(rep).valid;
      if (!value(rep).valid)
        out["counter_valuation"] =
            valuation_to_json(value(rep).counter_valuation);
      results.push_back(std::move(out));
    } else if (value(rep).valid) {
      std::cout << "frame-valid: " << print(value(er)) << "\n";
    } else {
      std::cout << "fails: " << print(value(er)) << "  counter-valuation:";
      for (const auto& [k, m] : value(rep).counter_valuation) {
        std::cout << " " << k << "=";
        print_worlds(m);
      }
      std::cout << "\n";
    }
    if (!value(rep).valid) rc = 1;
  }
  if (opt.json)
    std::cout << (results.size() == 1 ? results[0] : results).dump(2) << "\n";
  return rc;
}

int cmd_counter(const Options& opt, const std::string& eq, int max_carrier) {
  auto er = load_inequation(opt, eq);
  if (!is_ok(er)) return usage_error(error(er).code + ": " + error(er).message);
  SearchBounds b;
  b.max_carrier = max_carrier;
  b.max_worlds = opt.max_worlds;
  b.seed = opt.seed;
  b.budget = opt.budget;
  auto sr = countermodel_search(value(er), b);
  if (!is_ok(sr)) return report_error(opt, error(sr));
  const auto& s = value(sr);
  if (!s.found) {
    if (opt.json) {
      Json out;
      out["found"] = false;
      out["examined"] = s.examined;
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "NotFound after " << s.examined << " candidates\n";
    }
    return 0;
  }
  if (opt.json) {
    Json out = model_to_json(s.frame, s.valuation);
    out["found"] = true;
    out["origin"] = s.origin;
    out["examined"] = s.examined;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "countermodel found (" << s.origin << ", " << s.frame.size()
              << " worlds); rerun with --json for the full model\n";
  }
  return 1;
}

int cmd_jt_frame(const Options& opt, const std::string& path) {
  auto j = load_json(path);
  if (!is_ok(j)) return usage_error(error(j).message);
  auto ar = dle_from_json(value(j));
  if (!is_ok(ar)) return report_error(opt, error(ar));
  auto cf = canonical_frame(value(ar), opt.max_worlds);
  if (!is_ok(cf)) return report_error(opt, error(cf));
  std::cout << frame_to_json(value(cf).frame).dump(2) << "\n";
  return 0;
}

int cmd_jt_compare(const Options& opt, const std::string& path) {
  auto j = load_json(path);
  if (!is_ok(j)) return usage_error(error(j).message);
  auto ar = dle_from_json(value(j));
  if (!is_ok(ar)) return report_error(opt, error(ar));
  auto rep = compare_jt_canext(value(ar));
  if (!is_ok(rep)) return report_error(opt, error(rep));
  if (opt.json) {
    Json out;
    out["equal"] = value(rep).equal;
    out["mismatches"] = value(rep).mismatches;
    std::cout << out.dump(2) << "\n";
  } else if (value(rep).equal) {
    std::cout << "Jonsson-Tarski extension equals the canonical extension\n";
  } else {
    std::cout << "tables differ:\n";
    for (const auto& m : value(rep).mismatches) std::cout << "  " << m << "\n";
  }
  return value(rep).equal ? 0 : 1;
}

int cmd_jt_truth(const Options& opt, const std::string& path,
                 const std::string& phi_text, const std::string& psi_text,
                 const std::string& val_text) {
  auto j = load_json(path);
  if (!is_ok(j)) return usage_error(error(j).message);
  auto ar = dle_from_json(value(j));
  if (!is_ok(ar)) return report_error(opt, error(ar));
  std::vector<Formula> phi, psi;
  auto collect = [&](const std::string& text, std::vector<Formula>& into,
                     const char* which) -> int {
    auto lines = formula_lines(text);
    if (!is_ok(lines)) return usage_error(error(lines).message);
    for (const auto& chunk : value(lines))
      for (const auto& s : split(chunk, ';')) {
        auto p = parse_formula(s);
        if (!is_ok(p))
          return usage_error(std::string("in ") + which + ": " +
                             error(p).message);
        into.push_back(value(p));
      }
    return -1;
  };
  if (int rc = collect(phi_text, phi, "--phi"); rc >= 0) return rc;
  if (int rc = collect(psi_text, psi, "--psi"); rc >= 0) return rc;
  auto vr = parse_element_valuation(val_text);
  if (!is_ok(vr)) return usage_error(error(vr).message);
  auto out = truth_lemma_check(value(ar), phi, psi, value(vr));
  if (!is_ok(out)) return report_error(opt, error(out));
  const auto& t = value(out);
  if (opt.json) {
    Json o;
    o["consistent"] = t.consistent;
    if (t.consistent)
      o["world"] = t.world;
    else {
      o["meet_phi"] = t.meet_phi;
      o["join_psi"] = t.join_psi;
    }
    std::cout << o.dump(2) << "\n";
  } else if (t.consistent) {
    std::cout << "consistent: world " << t.world
              << " of the canonical frame satisfies Phi and avoids Psi\n";
  } else {
    std::cout << "inconsistent: meet(Phi) = " << t.meet_phi
              << " <= " << t.join_psi << " = join(Psi)\n";
  }
  return t.consistent ? 0 : 1;
}

int cmd_selftest(const std::string& only_text) {
  std::vector<int> only;
  for (const auto& s : split(only_text, ',')) only.push_back(std::stoi(s));
  auto results = run_acceptance(std::cout, only);
  for (const auto& r : results)
    if (!r.pass) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"residuated-lattice canonicity toolkit"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "machine-readable output");
  app.add_option("--seed", opt.seed, "seed for randomized behavior");
  app.add_option("--max-elements", opt.max_elements, "carrier size cap");
  app.add_option("--max-worlds", opt.max_worlds, "world count cap");
  app.add_option("--budget", opt.budget, "search budget (candidates examined)");
  app.add_option("--max-vars", opt.max_vars, "variable cap for algebra holds");
  app.add_option("--fcd2-unit", opt.fcd2_unit, "unit used in FCd2: I or J")
      ->check(CLI::IsMember({"I", "J"}));

  std::string path, eq, reconstruction = "exact", unit_upset;
  std::string frame_path, val_path, phi_text, psi_text, val_text, only_text;
  int addrs = 1, vals = 1, world = -1, var_cap = 3, max_carrier = 4;

  auto* lattice = app.add_subcommand("lattice", "finite distributive lattices");
  auto* lattice_check = lattice->add_subcommand("check", "validate a lattice file");
  lattice_check->add_option("file", path)->required();

  auto* algebra = app.add_subcommand("algebra", "lattice expansions");
  auto* algebra_check = algebra->add_subcommand("check", "validate a DLE file");
  algebra_check->add_option("file", path)->required();
  auto* algebra_holds = algebra->add_subcommand("holds", "equation check");
  algebra_holds->add_option("--eq", eq)->required();
  algebra_holds->add_option("file", path)->required();

  auto* canext_cmd = app.add_subcommand("canext", "canonical extensions");
  auto* canext_report = canext_cmd->add_subcommand("report", "canonicity report");
  canext_report->add_option("file", path)->required();
  canext_report->add_option("--eq", eq)->required();

  auto* frame = app.add_subcommand("frame", "resource frames");
  auto* frame_check = frame->add_subcommand("check", "validate a frame file");
  frame_check->add_option("file", path)->required();
  frame_check->add_option("--reconstruction", reconstruction)
      ->check(CLI::IsMember({"exact", "closure"}));
  auto* frame_rcc = frame->add_subcommand("rcc", "residuation compatibility");
  frame_rcc->add_option("file", path)->required();
  auto* frame_heap = frame->add_subcommand("heap", "build a heap frame");
  frame_heap->add_option("--addrs", addrs)->required();
  frame_heap->add_option("--vals", vals)->required();
  frame_heap->add_option("--unit-upset", unit_upset,
                         "comma list of worlds; upward closure taken");

  auto* mc = app.add_subcommand("mc", "model-check a formula");
  mc->add_option("--frame", frame_path)->required();
  mc->add_option("--val", val_path)->required();
  mc->add_option("--phi", phi_text)->required();
  mc->add_option("--world", world, "exit 0/1 by membership of this world");

  auto* valid = app.add_subcommand("valid", "frame validity of an inequation");
  valid->add_option("--frame", frame_path)->required();
  valid->add_option("--eq", eq)->required();
  valid->add_option("--var-cap", var_cap);

  auto* counter = app.add_subcommand("counter", "bounded countermodel search");
  counter->add_option("--eq", eq)->required();
  counter->add_option("--max-carrier", max_carrier);

  auto* jt = app.add_subcommand("jt", "Jonsson-Tarski constructions");
  auto* jt_frame = jt->add_subcommand("frame", "canonical frame of a DLE");
  jt_frame->add_option("file", path)->required();
  auto* jt_compare = jt->add_subcommand("compare", "JT vs canonical extension");
  jt_compare->add_option("file", path)->required();
  auto* jt_truth = jt->add_subcommand("truth", "separate Phi from Psi");
  jt_truth->add_option("file", path)->required();
  jt_truth->add_option("--phi", phi_text)->required();
  jt_truth->add_option("--psi", psi_text);
  jt_truth->add_option("--val", val_text)->required();

  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_option("--only", only_text, "comma list of criterion ids");

  // Global flags are accepted anywhere on the line.
  std::function<void(CLI::App*)> fall = [&](CLI::App* cmd) {
    for (auto* sub : cmd->get_subcommands({})) {
      sub->fallthrough();
      fall(sub);
    }
  };
  fall(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage errors
  }

  try {
    if (lattice_check->parsed()) return cmd_lattice_check(opt, path);
    if (algebra_check->parsed()) return cmd_algebra_check(opt, path);
    if (algebra_holds->parsed()) return cmd_algebra_holds(opt, path, eq);
    if (canext_report->parsed()) return cmd_canext_report(opt, path, eq);
    if (frame_check->parsed()) return cmd_frame_check(opt, path, reconstruction);
    if (frame_rcc->parsed()) return cmd_frame_rcc(opt, path);
    if (frame_heap->parsed()) return cmd_frame_heap(opt, addrs, vals, unit_upset);
    if (mc->parsed()) return cmd_mc(opt, frame_path, val_path, phi_text, world);
    if (valid->parsed()) return cmd_valid(opt, frame_path, eq, var_cap);
    if (counter->parsed()) return cmd_counter(opt, eq, max_carrier);
    if (jt_frame->parsed()) return cmd_jt_frame(opt, path);
    if (jt_compare->parsed()) return cmd_jt_compare(opt, path);
    if (jt_truth->parsed())
      return cmd_jt_truth(opt, path, phi_text, psi_text, val_text);
    if (selftest->parsed()) return cmd_selftest(only_text);
  } catch (const std::exception& ex) {
    return usage_error(ex.what());
  }
  return usage_error("no subcommand");
}
