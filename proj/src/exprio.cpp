#include "lvsm/exprio.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace lvsm {

SymbolTable::SymbolTable(const std::vector<std::string>& vs, const std::vector<std::string>& others) {
  for (const auto& v : vs) {
    vars.push_back(intern(v));
    declared.insert(vars.back());
  }
  for (const auto& o : others) declared.insert(intern(o));
}

namespace {

constexpr unsigned long kMaxExponent = 10000;

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  ExprAst parse() {
    ExprAst e = expr();
    skip();
    if (pos_ < s_.size()) {
      if (s_[pos_] == ')') fail("unmatched ')'");
      if (starts_operand()) fail("implicit multiplication is not allowed");
      fail(std::string("unexpected character '") + printable(s_[pos_]) + "'");
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  static std::string printable(char c) {
    auto u = static_cast<unsigned char>(c);
    if (u >= 0x20 && u < 0x7f) return std::string(1, c);
    std::ostringstream os;
    os << "\\x" << std::hex << static_cast<int>(u);
    return os.str();
  }

  void skip() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool starts_operand() {
    skip();
    return pos_ < s_.size() && (digit(s_[pos_]) || ident_start(s_[pos_]) || s_[pos_] == '(');
  }

  ExprAst node(ExprAst::Kind k, std::size_t at, std::vector<ExprAst> ch) {
    ExprAst e;
    e.kind = k;
    e.offset = at;
    e.children = std::move(ch);
    return e;
  }

  ExprAst expr() {
    skip();
    std::size_t at = pos_;
    std::vector<ExprAst> terms{term()};
    while (true) {
      if (peek('+')) {
        ++pos_;
        terms.push_back(term());
      } else if (peek('-')) {
        std::size_t op = pos_++;
        terms.push_back(node(ExprAst::Kind::Neg, op, {term()}));
      } else {
        break;
      }
    }
    if (terms.size() == 1) return std::move(terms[0]);
    return node(ExprAst::Kind::Add, at, std::move(terms));
  }

  ExprAst term() {
    skip();
    std::size_t at = pos_;
    ExprAst acc = unary();
    std::vector<ExprAst> factors;
    factors.push_back(std::move(acc));
    while (true) {
      if (peek('*')) {
        ++pos_;
        factors.push_back(unary());
      } else if (peek('/')) {
        std::size_t op = pos_++;
        ExprAst lhs = factors.size() == 1 ? std::move(factors[0]) : node(ExprAst::Kind::Mul, at, std::move(factors));
        factors.clear();
        factors.push_back(node(ExprAst::Kind::Div, op, {std::move(lhs), unary()}));
      } else {
        if (starts_operand()) fail("implicit multiplication is not allowed");
        break;
      }
    }
    if (factors.size() == 1) return std::move(factors[0]);
    return node(ExprAst::Kind::Mul, at, std::move(factors));
  }

  ExprAst unary() {
    skip();
    if (peek('-')) {
      std::size_t at = pos_++;
      return node(ExprAst::Kind::Neg, at, {unary()});
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  ExprAst power() {
    ExprAst base = atom();
    if (!peek('^')) return base;
    std::size_t at = pos_++;
    skip();
    if (pos_ < s_.size() && s_[pos_] == '-') fail("negative exponent");
    if (pos_ >= s_.size() || !digit(s_[pos_])) {
      if (pos_ < s_.size() && s_[pos_] == '(') fail("exponent must be a non-negative integer literal");
      fail(pos_ >= s_.size() ? "unexpected end of input" : "expected exponent");
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && digit(s_[pos_])) ++pos_;
    if (pos_ - start > 6) {
      pos_ = start;
      fail("exponent too large");
    }
    unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
    if (e > kMaxExponent) {
      pos_ = start;
      fail("exponent too large");
    }
    // X^1/2 and X^1.5 read as fractional exponents; X^2/(X + 1) is a quotient
    if (pos_ < s_.size() && s_[pos_] == '.') fail("fractional exponent");
    if (pos_ + 1 < s_.size() && s_[pos_] == '/' && digit(s_[pos_ + 1])) fail("fractional exponent");
    if (peek('^')) fail("chained exponent; use parentheses");
    ExprAst p = node(ExprAst::Kind::Pow, at, {std::move(base)});
    p.exponent = e;
    return p;
  }

  ExprAst atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    std::size_t at = pos_;
    if (digit(c)) {
      while (pos_ < s_.size() && digit(s_[pos_])) ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '.') fail("decimal numbers are not allowed; write p/q");
      if (pos_ < s_.size() && (ident_start(s_[pos_]) || s_[pos_] == '(')) fail("implicit multiplication is not allowed");
      ExprAst e;
      e.kind = ExprAst::Kind::Number;
      e.offset = at;
      e.value = Rational(std::string(s_.substr(at, pos_ - at)));
      return e;
    }
    if (ident_start(c)) {
      while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
      while (pos_ < s_.size() && s_[pos_] == '\'') ++pos_;
      ExprAst e;
      e.kind = ExprAst::Kind::Symbol;
      e.offset = at;
      e.name = std::string(s_.substr(at, pos_ - at));
      if (pos_ < s_.size() && s_[pos_] == '(') fail("implicit multiplication is not allowed");
      return e;
    }
    if (c == '(') {
      ++pos_;
      ExprAst e = expr();
      if (!peek(')')) fail(pos_ >= s_.size() ? "unexpected end of input; expected ')'" : "expected ')'");
      ++pos_;
      return e;
    }
    if (c == ')') fail("unexpected ')'");
    fail(std::string("unexpected character '") + printable(c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

class Evaluator {
 public:
  Evaluator(const SymbolTable& ctx, bool polynomial) : ctx_(ctx), poly_(polynomial) {
    main_.insert(ctx.vars.begin(), ctx.vars.end());
  }

  Frac eval(const ExprAst& e) const {
    switch (e.kind) {
      case ExprAst::Kind::Number:
        return Frac(e.value);
      case ExprAst::Kind::Symbol:
        if (!ctx_.has(e.name)) throw ParseError("undeclared symbol '" + e.name + "'", e.offset);
        return Frac::symbol(intern(e.name));
      case ExprAst::Kind::Add: {
        Frac acc;
        for (const auto& c : e.children) acc += eval(c);
        return acc;
      }
      case ExprAst::Kind::Mul: {
        Frac acc(1);
        for (const auto& c : e.children) acc *= eval(c);
        return acc;
      }
      case ExprAst::Kind::Neg:
        return -eval(e.children[0]);
      case ExprAst::Kind::Pow:
        return eval(e.children[0]).pow(static_cast<int>(e.exponent));
      case ExprAst::Kind::Div: {
        Frac num = eval(e.children[0]);
        Frac den = eval(e.children[1]);
        if (den.is_zero()) throw ParseError("division by zero", e.offset);
        if (poly_ && !den.free_of(main_)) throw ParseError("division by an expression in the variables", e.offset);
        return num / den;
      }
    }
    throw ParseError("malformed expression", e.offset);
  }

 private:
  const SymbolTable& ctx_;
  bool poly_;
  std::set<SymId> main_;
};

// Symbols of a monomial in printing order: listed variables first, then the
// rest by name.
std::string format_monomial(const Monomial& m, const VarOrder& order) {
  std::vector<std::pair<std::string, std::uint32_t>> parts;
  std::vector<std::pair<std::string, std::uint32_t>> rest;
  for (SymId v : order.vars())
    if (auto d = m.degree(v)) parts.emplace_back(symbol_name(v), d);
  Monomial others = m.excluding(order.vars());
  for (const auto& [s, d] : others.factors()) rest.emplace_back(symbol_name(s), d);
  std::sort(rest.begin(), rest.end());
  parts.insert(parts.end(), rest.begin(), rest.end());
  std::string out;
  for (const auto& [n, d] : parts) {
    if (!out.empty()) out += "*";
    out += n;
    if (d > 1) out += "^" + std::to_string(d);
  }
  return out;
}

void append_term(std::string& out, const Rational& c, const std::string& mono) {
  bool neg = sgn(c) < 0;
  Rational a = abs(c);
  if (out.empty()) {
    if (neg) out += "-";
  } else {
    out += neg ? " - " : " + ";
  }
  if (mono.empty()) {
    out += format_rational(a);
  } else if (a == 1) {
    out += mono;
  } else {
    out += format_rational(a) + "*" + mono;
  }
}

bool is_atom(const Poly& p) {
  if (p.size() != 1) return false;
  const auto& [m, c] = *p.terms().begin();
  return c == 1 && m.factors().size() == 1;
}

const char* kClassicalNormalized = R"(# Classical system after X = (c/b) x, Y = (a/b) y, tau = b t
vars = X, Y
params = alpha, beta
fprime.X = X*(Y + 1)
fprime.Y = Y*(X + alpha)
nondegenerate = X, Y
)";

const char* kTwoDNormalized = R"(# 2d system after X = (c/b) x, Y = (a/b) y, tau = b t
vars = X, Y
params = gamma, beta
fprime.X = X*(Y + 1)
fprime.Y = Y*(X + gamma*Y)
nondegenerate = X, Y
)";

const char* kDegenerate = R"(# Classical system with a = c = 1 and d = b
vars = X, Y
params = b
fprime.X = X*(Y + b)
fprime.Y = Y*(X + b)
nondegenerate = X, Y
)";

const char* kDegenerateTower = R"(# Degenerate system over the field generated by z' = b z
vars = X, Y
params = b
fprime.X = X*(Y + b)
fprime.Y = Y*(X + b)
nondegenerate = X, Y
tower.z = b*z
)";

}  // namespace

std::string format_rational(const Rational& r) { return r.get_str(); }

ExprAst parse_expr(std::string_view text) { return Parser(text).parse(); }

Frac parse_ratfunc(std::string_view text, const SymbolTable& ctx) {
  return Evaluator(ctx, false).eval(parse_expr(text));
}

MPoly parse_poly(std::string_view text, const SymbolTable& ctx) {
  return MPoly::from_frac(Evaluator(ctx, true).eval(parse_expr(text)), ctx.vars);
}

std::string format_poly(const Poly& p, const VarOrder& order) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Monomial, Rational>> ts(p.terms().begin(), p.terms().end());
  std::stable_sort(ts.begin(), ts.end(), [&](const auto& a, const auto& b) { return order.before(a.first, b.first); });
  std::string out;
  for (const auto& [m, c] : ts) append_term(out, c, format_monomial(m, order));
  return out;
}

std::string format_frac(const Frac& f, const VarOrder& order) {
  if (f.den() == Poly(1)) return format_poly(f.num(), order);
  std::string num = format_poly(f.num(), order);
  std::string den = format_poly(f.den(), order);
  if (f.num().size() > 1) num = "(" + num + ")";
  if (!is_atom(f.den())) den = "(" + den + ")";
  return num + "/" + den;
}

std::string format_poly(const MPoly& p) {
  if (p.is_zero()) return "0";
  VarOrder order(p.vars());
  std::string out;
  for (const auto& [m, c] : p.sorted_terms()) {
    std::string mono = format_monomial(m, order);
    if (c.den() == Poly(1)) {
      std::vector<std::pair<Monomial, Rational>> ts(c.num().terms().begin(), c.num().terms().end());
      std::stable_sort(ts.begin(), ts.end(), [&](const auto& a, const auto& b) { return order.before(a.first, b.first); });
      for (const auto& [cm, cc] : ts) {
        std::string cs = format_monomial(cm, order);
        std::string full = cs.empty() ? mono : (mono.empty() ? cs : cs + "*" + mono);
        append_term(out, cc, full);
      }
    } else {
      if (!out.empty()) out += " + ";
      std::string cs = "(" + format_frac(c, order) + ")";
      out += mono.empty() ? cs : cs + "*" + mono;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// system spec documents

SymbolTable SystemSpec::symbols() const {
  std::vector<std::string> others = params;
  for (const auto& [g, e] : tower) others.push_back(g);
  return SymbolTable(vars, others);
}

std::string SystemSpec::to_text() const {
  auto join = [](const std::vector<std::string>& xs) {
    std::string out;
    for (const auto& x : xs) out += (out.empty() ? "" : ", ") + x;
    return out;
  };
  std::string out = "vars = " + join(vars) + "\n";
  if (!params.empty()) out += "params = " + join(params) + "\n";
  for (const auto& v : vars) out += "fprime." + v + " = " + fprime.at(v) + "\n";
  if (!nondegenerate.empty()) out += "nondegenerate = " + join(nondegenerate) + "\n";
  for (const auto& [g, e] : tower) out += "tower." + g + " = " + e + "\n";
  return out;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  std::string out(s.substr(b, e - b));
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
  return out;
}

std::vector<std::string> split_list(const std::string& s, int line) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string t = trim(item);
    if (t.empty()) throw SpecError("line " + std::to_string(line) + ": empty list entry");
    out.push_back(t);
  }
  return out;
}

bool valid_identifier(const std::string& s) {
  if (s.empty() || !ident_start(s[0])) return false;
  return std::all_of(s.begin(), s.end(), ident_char);
}

void check_expr(const std::string& what, const std::string& text, const SymbolTable& table) {
  try {
    parse_ratfunc(text, table);
  } catch (const ParseError& e) {
    throw SpecError(what + ": " + e.what());
  }
}

const char* kClassical = R"(# Classical Lotka-Volterra system
vars = X, Y
params = a, b, c, d
fprime.X = X*(a*Y + b)
fprime.Y = Y*(c*X + d)
nondegenerate = X, Y
)";

const char* kTwoD = R"(# Lotka-Volterra system with quadratic self-interaction in Y
vars = X, Y
params = a, b, c, d
fprime.X = X*(a*Y + b)
fprime.Y = Y*(c*X + d*Y)
nondegenerate = X, Y
)";

}  // namespace

SystemSpec parse_system(std::string_view doc, std::string name) {
  SystemSpec spec;
  spec.name = std::move(name);
  std::set<std::string> seen;
  bool has_vars = false;
  std::istringstream in{std::string(doc)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string l = trim(raw);
    if (l.empty() || l[0] == '#') continue;
    auto eq = l.find('=');
    if (eq == std::string::npos) throw SpecError("line " + std::to_string(line) + ": expected 'key = value'");
    std::string key = trim(l.substr(0, eq));
    std::string value = trim(l.substr(eq + 1));
    if (!seen.insert(key).second) throw SpecError("line " + std::to_string(line) + ": duplicate key '" + key + "'");
    if (key == "vars") {
      spec.vars = split_list(value, line);
      has_vars = true;
    } else if (key == "params") {
      spec.params = split_list(value, line);
    } else if (key == "nondegenerate") {
      spec.nondegenerate = split_list(value, line);
    } else if (key.rfind("fprime.", 0) == 0) {
      spec.fprime[key.substr(7)] = value;
    } else if (key.rfind("tower.", 0) == 0) {
      spec.tower.emplace_back(key.substr(6), value);
    } else {
      throw SpecError("line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  if (!has_vars) throw SpecError("missing field 'vars'");
  if (spec.vars.size() != 2)
    throw SpecError("planar systems need exactly two variables, got " + std::to_string(spec.vars.size()));

  std::set<std::string> names;
  auto declare = [&](const std::string& n, const char* what) {
    if (!valid_identifier(n)) throw SpecError(std::string("invalid ") + what + " name '" + n + "'");
    if (!names.insert(n).second) throw SpecError("symbol '" + n + "' declared twice");
  };
  for (const auto& v : spec.vars) declare(v, "variable");
  for (const auto& p : spec.params) declare(p, "parameter");
  for (const auto& [g, e] : spec.tower) declare(g, "tower generator");

  for (const auto& [v, e] : spec.fprime)
    if (std::find(spec.vars.begin(), spec.vars.end(), v) == spec.vars.end())
      throw SpecError("derivative given for undeclared variable '" + v + "'");
  for (const auto& v : spec.vars)
    if (!spec.fprime.count(v)) throw SpecError("missing derivative for " + v);

  SymbolTable table = spec.symbols();
  for (const auto& v : spec.vars) {
    try {
      parse_poly(spec.fprime[v], table);
    } catch (const ParseError& e) {
      throw SpecError("fprime." + v + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw SpecError("fprime." + v + ": " + e.what());
    }
  }
  for (const auto& d : spec.nondegenerate) {
    MPoly p;
    try {
      p = parse_poly(d, table);
    } catch (const ParseError& e) {
      throw SpecError("nondegenerate '" + d + "': " + e.what());
    }
    if (p.is_zero()) throw SpecError("nondegenerate divisor '" + d + "' is zero");
  }
  // tower derivatives may only use parameters and earlier generators
  SymbolTable partial(std::vector<std::string>{}, spec.params);
  for (const auto& [g, e] : spec.tower) {
    partial.declare(g);
    check_expr("tower." + g, e, partial);
  }
  return spec;
}

std::optional<SystemSpec> preset_system(std::string_view name) {
  if (name == "lv-classical") return parse_system(kClassical, "lv-classical");
  if (name == "lv-2d") return parse_system(kTwoD, "lv-2d");
  if (name == "lv-classical-normalized") return parse_system(kClassicalNormalized, "lv-classical-normalized");
  if (name == "lv-2d-normalized") return parse_system(kTwoDNormalized, "lv-2d-normalized");
  if (name == "lv-degenerate") return parse_system(kDegenerate, "lv-degenerate");
  if (name == "lv-degenerate-tower") return parse_system(kDegenerateTower, "lv-degenerate-tower");
  return std::nullopt;
}

std::vector<std::string> preset_names() {
  return {"lv-classical", "lv-2d", "lv-classical-normalized", "lv-2d-normalized", "lv-degenerate",
          "lv-degenerate-tower"};
}

SystemSpec load_system(const std::string& name_or_path) {
  if (auto p = preset_system(name_or_path)) return *p;
  std::ifstream in(name_or_path);
  if (!in) throw SpecError("no preset or readable file named '" + name_or_path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str(), name_or_path);
}

}  // namespace lvsm
