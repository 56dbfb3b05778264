#include "rlcan/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace rlcan {

struct Formula::Node {
  Kind kind;
  std::string name;  // Var only
  std::shared_ptr<const Node> l, r;
};

bool is_binary(Kind k) {
  switch (k) {
    case Kind::And: case Kind::Or: case Kind::Fuse: case Kind::LRes:
    case Kind::RRes: case Kind::Par: case Kind::DLRes: case Kind::DRRes:
      return true;
    default:
      return false;
  }
}

bool is_unary(Kind k) { return k == Kind::Dia || k == Kind::Box; }

bool is_residual(Kind k) {
  return k == Kind::LRes || k == Kind::RRes || k == Kind::DLRes ||
         k == Kind::DRRes;
}

Formula Formula::var(std::string name) {
  return Formula(std::make_shared<Node>(Node{Kind::Var, std::move(name), {}, {}}));
}
Formula Formula::top() { return make(Kind::Top, {}); }
Formula Formula::bot() { return make(Kind::Bot, {}); }
Formula Formula::unit_i() { return make(Kind::UnitI, {}); }
Formula Formula::unit_j() { return make(Kind::UnitJ, {}); }

Formula Formula::make(Kind k, Formula l, Formula r) {
  if (is_binary(k) && (l.is_null() || r.is_null()))
    throw std::invalid_argument("binary connective needs two operands");
  if (is_unary(k) && l.is_null())
    throw std::invalid_argument("unary connective needs an operand");
  return Formula(std::make_shared<Node>(
      Node{k, {}, std::move(l.node_), std::move(r.node_)}));
}

Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::var_name() const { return node_->name; }
Formula Formula::left() const { return Formula(node_->l); }
Formula Formula::right() const { return Formula(node_->r); }

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->kind != o.node_->kind || node_->name != o.node_->name)
    return false;
  return left() == o.left() && right() == o.right();
}

int Formula::depth() const {
  if (!node_) return 0;
  int d = 0;
  if (node_->l) d = std::max(d, 1 + left().depth());
  if (node_->r) d = std::max(d, 1 + right().depth());
  return d;
}

unsigned Formula::fragment() const {
  if (!node_) return 0;
  unsigned bits = left().fragment() | right().fragment();
  switch (node_->kind) {
    case Kind::Top: case Kind::Bot: bits |= kFragBounds; break;
    case Kind::UnitI: case Kind::Fuse: case Kind::LRes: case Kind::RRes:
      bits |= kFragRL; break;
    case Kind::UnitJ: case Kind::Par: case Kind::DLRes: case Kind::DRRes:
      bits |= kFragDual; break;
    case Kind::Dia: case Kind::Box: bits |= kFragML; break;
    default: break;
  }
  return bits;
}

namespace {
void collect_vars(const Formula& f, std::set<std::string>& out) {
  if (f.is_null()) return;
  if (f.kind() == Kind::Var) out.insert(f.var_name());
  collect_vars(f.left(), out);
  collect_vars(f.right(), out);
}
}  // namespace

std::vector<std::string> Formula::variables() const {
  std::set<std::string> s;
  collect_vars(*this, s);
  return {s.begin(), s.end()};
}

std::vector<std::string> Inequation::variables() const {
  std::set<std::string> s;
  collect_vars(lhs, s);
  collect_vars(rhs, s);
  return {s.begin(), s.end()};
}

// ---------------------------------------------------------------------------
// Lexer / parser

namespace {

enum class Tok {
  Var, Top, Bot, I, J, And, Or, Star, Plus, LRes, RRes, DLRes, DRRes,
  Dia, Box, LParen, RParen, Leq, Eq, End,
};

struct Token {
  Tok t;
  std::string text;
  int pos;
};

struct Lexer {
  std::string_view s;
  size_t i = 0;
  Error err;
  bool failed = false;

  bool starts(std::string_view w) const {
    return s.compare(i, w.size(), w) == 0;
  }

  Token next() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    int pos = int(i);
    if (i >= s.size()) return {Tok::End, "", pos};
    struct Fixed { std::string_view w; Tok t; };
    static constexpr Fixed fixed[] = {
        {"_|_", Tok::Bot}, {"-*", Tok::LRes}, {"*-", Tok::RRes},
        {"-+", Tok::DLRes}, {"+-", Tok::DRRes}, {"/\\", Tok::And},
        {"\\/", Tok::Or}, {"<=", Tok::Leq}, {"==", Tok::Eq},
        {"<>", Tok::Dia}, {"[]", Tok::Box}, {"*", Tok::Star},
        {"+", Tok::Plus}, {"(", Tok::LParen}, {")", Tok::RParen},
    };
    for (const auto& f : fixed) {
      if (starts(f.w)) {
        i += f.w.size();
        return {f.t, std::string(f.w), pos};
      }
    }
    if (std::isalpha((unsigned char)s[i]) || s[i] == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum((unsigned char)s[j]) ||
                              s[j] == '_' || s[j] == '\''))
        ++j;
      std::string w(s.substr(i, j - i));
      i = j;
      if (w == "T") return {Tok::Top, w, pos};
      if (w == "I") return {Tok::I, w, pos};
      if (w == "J") return {Tok::J, w, pos};
      return {Tok::Var, w, pos};
    }
    failed = true;
    err = make_error("SyntaxError", {pos},
                     std::string("unexpected character '") + s[i] + "'");
    return {Tok::End, "", pos};
  }
};

struct Parser {
  std::vector<Token> toks;
  size_t k = 0;
  ParseOptions opts;
  Error err;
  bool failed = false;

  const Token& peek() const { return toks[k]; }
  Token eat() { return toks[k++]; }

  Formula fail(int pos, const std::string& expected) {
    if (!failed) {
      failed = true;
      err = make_error("SyntaxError", {pos}, "expected " + expected);
    }
    return {};
  }

  Formula check_fragment(Formula f, int pos) {
    if (failed || f.is_null()) return {};
    if (f.fragment() & ~opts.fragment) {
      failed = true;
      err = make_error("FragmentViolation", {pos},
                       "connective outside the active fragment");
    }
    return f;
  }

  Formula atom() {
    Token t = eat();
    switch (t.t) {
      case Tok::Top: return check_fragment(Formula::top(), t.pos);
      case Tok::Bot: return check_fragment(Formula::bot(), t.pos);
      case Tok::I: return check_fragment(Formula::unit_i(), t.pos);
      case Tok::J: return check_fragment(Formula::unit_j(), t.pos);
      case Tok::Var: {
        if (opts.declared_vars &&
            std::find(opts.declared_vars->begin(), opts.declared_vars->end(),
                      t.text) == opts.declared_vars->end()) {
          failed = true;
          err = make_error("UnknownVariable", {t.pos}, t.text);
          return {};
        }
        return Formula::var(t.text);
      }
      case Tok::LParen: {
        Formula f = formula();
        if (failed) return {};
        if (peek().t != Tok::RParen) return fail(peek().pos, "')'");
        eat();
        return f;
      }
      default:
        return fail(t.pos, "a formula");
    }
  }

  Formula unary() {
    if (peek().t == Tok::Dia || peek().t == Tok::Box) {
      Token t = eat();
      Formula inner = unary();
      if (failed) return {};
      return check_fragment(
          Formula::make(t.t == Tok::Dia ? Kind::Dia : Kind::Box, inner), t.pos);
    }
    return atom();
  }

  Formula product() {
    Formula acc = unary();
    while (!failed && (peek().t == Tok::Star || peek().t == Tok::Plus)) {
      Token t = eat();
      Formula rhs = unary();
      if (failed) return {};
      acc = check_fragment(
          Formula::make(t.t == Tok::Star ? Kind::Fuse : Kind::Par, acc, rhs),
          t.pos);
    }
    return acc;
  }

  Formula conjunction() {
    Formula acc = product();
    while (!failed && peek().t == Tok::And) {
      Token t = eat();
      Formula rhs = product();
      if (failed) return {};
      acc = Formula::make(Kind::And, acc, rhs);
      (void)t;
    }
    return acc;
  }

  Formula disjunction() {
    Formula acc = conjunction();
    while (!failed && peek().t == Tok::Or) {
      eat();
      Formula rhs = conjunction();
      if (failed) return {};
      acc = Formula::make(Kind::Or, acc, rhs);
    }
    return acc;
  }

  static bool residual_tok(Tok t) {
    return t == Tok::LRes || t == Tok::RRes || t == Tok::DLRes ||
           t == Tok::DRRes;
  }

  // Residuals are right-associative and do not mix without parentheses.
  Formula formula() {
    Formula first = disjunction();
    if (failed || !residual_tok(peek().t)) return first;
    Tok op = peek().t;
    std::vector<Formula> parts{first};
    while (!failed && residual_tok(peek().t)) {
      Token t = eat();
      if (t.t != op)
        return fail(t.pos,
                    "matching residual (mixed residuals need parentheses)");
      parts.push_back(disjunction());
    }
    if (failed) return {};
    Kind k = op == Tok::LRes    ? Kind::LRes
             : op == Tok::RRes  ? Kind::RRes
             : op == Tok::DLRes ? Kind::DLRes
                                : Kind::DRRes;
    Formula acc = parts.back();
    for (size_t i = parts.size() - 1; i-- > 0;)
      acc = Formula::make(k, parts[i], acc);
    return check_fragment(acc, toks[0].pos);
  }
};

Result<Parser> run_lexer(std::string_view text, ParseOptions opts) {
  Lexer lx{text, 0, {}, false};
  Parser p;
  p.opts = opts;
  for (;;) {
    Token t = lx.next();
    if (lx.failed) return lx.err;
    p.toks.push_back(t);
    if (t.t == Tok::End) break;
  }
  return p;
}

}  // namespace

Result<Formula> parse_formula(std::string_view text, ParseOptions opts) {
  auto lp = run_lexer(text, opts);
  if (!is_ok(lp)) return error(lp);
  Parser p = take(std::move(lp));
  Formula f = p.formula();
  if (p.failed) return p.err;
  if (p.peek().t != Tok::End)
    return make_error("SyntaxError", {p.peek().pos}, "expected end of input");
  return f;
}

Result<Inequation> parse_inequation(std::string_view text, ParseOptions opts) {
  auto lp = run_lexer(text, opts);
  if (!is_ok(lp)) return error(lp);
  Parser p = take(std::move(lp));
  Formula lhs = p.formula();
  if (p.failed) return p.err;
  if (p.peek().t != Tok::Leq && p.peek().t != Tok::Eq)
    return make_error("SyntaxError", {p.peek().pos}, "expected '<=' or '=='");
  bool eq = p.eat().t == Tok::Eq;
  Formula rhs = p.formula();
  if (p.failed) return p.err;
  if (p.peek().t != Tok::End)
    return make_error("SyntaxError", {p.peek().pos}, "expected end of input");
  return Inequation{lhs, rhs, eq};
}

// ---------------------------------------------------------------------------
// Printer

namespace {

// Binding strength, loosest first.
int level(Kind k) {
  switch (k) {
    case Kind::LRes: case Kind::RRes: case Kind::DLRes: case Kind::DRRes:
      return 1;
    case Kind::Or: return 2;
    case Kind::And: return 3;
    case Kind::Fuse: case Kind::Par: return 4;
    case Kind::Dia: case Kind::Box: return 5;
    default: return 6;
  }
}

const char* op_text(Kind k) {
  switch (k) {
    case Kind::And: return " /\\ ";
    case Kind::Or: return " \\/ ";
    case Kind::Fuse: return " * ";
    case Kind::Par: return " + ";
    case Kind::LRes: return " -* ";
    case Kind::RRes: return " *- ";
    case Kind::DLRes: return " -+ ";
    case Kind::DRRes: return " +- ";
    default: return "";
  }
}

void print_rec(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Kind::Var: out += f.var_name(); return;
    case Kind::Top: out += "T"; return;
    case Kind::Bot: out += "_|_"; return;
    case Kind::UnitI: out += "I"; return;
    case Kind::UnitJ: out += "J"; return;
    case Kind::Dia:
    case Kind::Box: {
      out += f.kind() == Kind::Dia ? "<>" : "[]";
      Formula c = f.child();
      bool parens = level(c.kind()) < level(f.kind());
      if (parens) out += "(";
      print_rec(c, out);
      if (parens) out += ")";
      return;
    }
    default: break;
  }
  const Kind k = f.kind();
  const int lv = level(k);
  const bool right_assoc = is_residual(k);
  Formula l = f.left(), r = f.right();
  // Same-level chains reparse correctly only on their associative side;
  // mixed residuals always need parentheses.
  bool lp = level(l.kind()) < lv || (right_assoc && level(l.kind()) == lv);
  bool rp = level(r.kind()) < lv ||
            (!right_assoc && level(r.kind()) == lv) ||
            (right_assoc && is_residual(r.kind()) && r.kind() != k);
  if (lp) out += "(";
  print_rec(l, out);
  if (lp) out += ")";
  out += op_text(k);
  if (rp) out += "(";
  print_rec(r, out);
  if (rp) out += ")";
}

}  // namespace

std::string print(const Formula& f) {
  std::string out;
  print_rec(f, out);
  return out;
}

std::string print(const Inequation& e) {
  return print(e.lhs) + (e.equality ? " == " : " <= ") + print(e.rhs);
}

// ---------------------------------------------------------------------------
// Schemata

namespace {

Inequation must_parse(const char* text) {
  auto r = parse_inequation(text);
  if (!is_ok(r)) throw std::logic_error("bad builtin schema");
  return take(std::move(r));
}

AxiomSchema schema(const char* name, std::vector<std::string> metavars,
                   std::initializer_list<const char*> shapes) {
  AxiomSchema s{name, std::move(metavars), {}};
  for (const char* t : shapes) s.shape.push_back(must_parse(t));
  return s;
}

std::vector<AxiomSchema> build_registry(SchemaOptions opts) {
  std::vector<AxiomSchema> r;
  r.push_back(schema("DL1", {"a", "b", "c"}, {"(a \\/ b) * c == (a * c) \\/ (b * c)"}));
  r.push_back(schema("DL2", {"a", "b", "c"}, {"c * (a \\/ b) == (c * a) \\/ (c * b)"}));
  r.push_back(schema("DL3", {"a", "b", "c"}, {"c -* (a /\\ b) == (c -* a) /\\ (c -* b)"}));
  r.push_back(schema("DL4", {"a", "b", "c"}, {"(a \\/ b) -* c == (a -* c) /\\ (b -* c)"}));
  r.push_back(schema("DL5", {"a", "b", "c"}, {"(a /\\ b) *- c == (a *- c) /\\ (b *- c)"}));
  r.push_back(schema("DL6", {"a", "b", "c"}, {"c *- (a \\/ b) == (c *- a) /\\ (c *- b)"}));
  r.push_back(schema("ML1", {"a", "b"}, {"<>(a \\/ b) == <>a \\/ <>b"}));
  r.push_back(schema("ML2", {"a", "b"}, {"[](a /\\ b) == []a /\\ []b"}));
  r.push_back(schema("DLd1", {"a", "b", "c"}, {"(a /\\ b) + c == (a + c) /\\ (b + c)"}));
  r.push_back(schema("DLd2", {"a", "b", "c"}, {"c + (a /\\ b) == (c + a) /\\ (c + b)"}));
  r.push_back(schema("DLd3", {"a", "b", "c"}, {"c -+ (a \\/ b) == (c -+ a) \\/ (c -+ b)"}));
  r.push_back(schema("DLd4", {"a", "b", "c"}, {"(a /\\ b) -+ c == (a -+ c) \\/ (b -+ c)"}));
  r.push_back(schema("DLd5", {"a", "b", "c"}, {"(a \\/ b) +- c == (a +- c) \\/ (b +- c)"}));
  r.push_back(schema("DLd6", {"a", "b", "c"}, {"c +- (a /\\ b) == (c +- a) \\/ (c +- b)"}));
  r.push_back(schema("FC1", {"a"}, {"a * I == a", "I * a == a"}));
  r.push_back(schema("FC2", {"a"}, {"I <= a -* a", "I <= a *- a"}));
  r.push_back(schema("FC3", {"a", "b", "c"}, {"a * (b -* c) <= (a * b) -* c"}));
  r.push_back(schema("FC4", {"a", "b", "c"}, {"(c *- b) * a <= c *- (a * b)"}));
  r.push_back(schema("FC5", {"a", "b"}, {"(a *- b) * b <= a"}));
  r.push_back(schema("FC6", {"a", "b"}, {"b * (b -* a) <= a"}));
  r.push_back(schema("FCd1", {"a"}, {"a + J == a", "J + a == a"}));
  if (opts.fcd2_unit_j)
    r.push_back(schema("FCd2", {"a"}, {"J <= a -+ a", "J <= a +- a"}));
  else
    r.push_back(schema("FCd2", {"a"}, {"I <= a -+ a", "I <= a +- a"}));
  r.push_back(schema("FCd3", {"a", "b", "c"}, {"a + (b -+ c) <= (a + b) -+ c"}));
  r.push_back(schema("FCd4", {"a", "b", "c"}, {"(c +- b) + a <= c +- (a + b)"}));
  r.push_back(schema("FCd5", {"a", "b"}, {"(a +- b) + b <= a"}));
  r.push_back(schema("FCd6", {"a", "b"}, {"b + (b -+ a) <= a"}));
  r.push_back(schema("e", {"a", "b"}, {"a * b == b * a"}));
  r.push_back(schema("c", {"a"}, {"a <= a * a"}));
  r.push_back(schema("lw", {"a"}, {"a <= I"}));
  r.push_back(schema("rw", {"a"}, {"J <= a"}));
  r.push_back(schema("wd", {"a", "b", "c"}, {"a * (b + c) <= (a * b) + a"}));
  return r;
}

}  // namespace

const std::vector<AxiomSchema>& schema_registry(SchemaOptions opts) {
  static const std::vector<AxiomSchema> plain = build_registry({false});
  static const std::vector<AxiomSchema> junit = build_registry({true});
  return opts.fcd2_unit_j ? junit : plain;
}

const AxiomSchema* find_schema(std::string_view name, SchemaOptions opts) {
  std::string n(name);
  if (n == "exchange") n = "e";
  if (n == "contraction") n = "c";
  if (n == "left-weakening") n = "lw";
  if (n == "right-weakening") n = "rw";
  if (n == "weak-distribution") n = "wd";
  for (const auto& s : schema_registry(opts))
    if (s.name == n) return &s;
  return nullptr;
}

Formula substitute(const Formula& f,
                   const std::map<std::string, Formula>& assignment) {
  if (f.is_null()) return f;
  if (f.kind() == Kind::Var) {
    auto it = assignment.find(f.var_name());
    return it == assignment.end() ? f : it->second;
  }
  if (is_binary(f.kind()))
    return Formula::make(f.kind(), substitute(f.left(), assignment),
                         substitute(f.right(), assignment));
  if (is_unary(f.kind()))
    return Formula::make(f.kind(), substitute(f.child(), assignment));
  return f;
}

Result<std::vector<Inequation>> instantiate(
    const AxiomSchema& schema,
    const std::map<std::string, Formula>& assignment) {
  for (const auto& mv : schema.metavars)
    if (!assignment.count(mv))
      return make_error("MissingMetavariable", {}, mv);
  std::vector<Inequation> out;
  for (const auto& shape : schema.shape)
    out.push_back(Inequation{substitute(shape.lhs, assignment),
                             substitute(shape.rhs, assignment),
                             shape.equality});
  return out;
}

}  // namespace rlcan
