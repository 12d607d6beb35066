#include "frob/session.hpp"

#include <json.hpp>

#include <chrono>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "frob/cartier.hpp"
#include "frob/diagonal.hpp"
#include "frob/segre.hpp"
#include "frob/ustp.hpp"

namespace frob {

const char* const kToolVersion = "1.0.0";

using nlohmann::json;

// ---------------------------------------------------------------------------
// Tokenizer

namespace {

struct Token {
  enum Kind { Ident, Int, Punct, End } kind = End;
  std::string text;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }

  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << "parse error at line " << tok_.line << ", column " << tok_.col << ": " << msg;
    throw std::runtime_error(os.str());
  }

  Token expect_punct(const std::string& p) {
    if (tok_.kind != Token::Punct || tok_.text != p) fail("expected '" + p + "'");
    return next();
  }

  Token expect_ident() {
    if (tok_.kind != Token::Ident) fail("expected identifier");
    return next();
  }

  int64_t expect_int() {
    if (tok_.kind != Token::Int) fail("expected integer");
    return std::stoll(next().text);
  }

 private:
  void advance() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else if (isspace(uint8_t(c))) {
        ++col_;
        ++pos_;
      } else {
        break;
      }
    }
    tok_ = Token{Token::End, "", line_, col_};
    if (pos_ >= s_.size()) return;
    char c = s_[pos_];
    tok_.line = line_;
    tok_.col = col_;
    if (isalpha(uint8_t(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && (isalnum(uint8_t(s_[pos_])) || s_[pos_] == '_')) take();
      tok_ = Token{Token::Ident, s_.substr(start, pos_ - start), tok_.line, tok_.col};
    } else if (isdigit(uint8_t(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && isdigit(uint8_t(s_[pos_]))) take();
      tok_ = Token{Token::Int, s_.substr(start, pos_ - start), tok_.line, tok_.col};
    } else if (c == '.' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '.') {
      take();
      take();
      tok_ = Token{Token::Punct, "..", tok_.line, tok_.col};
    } else {
      take();
      tok_ = Token{Token::Punct, std::string(1, c), tok_.line, tok_.col};
    }
  }

  void take() {
    ++pos_;
    ++col_;
  }

  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

// Reads raw text until the given punct at depth 0, for deferred parsing.
std::string read_until(Lexer& lex, const std::string& stop) {
  std::string out;
  int depth = 0;
  while (true) {
    const Token& t = lex.peek();
    if (t.kind == Token::End) lex.fail("unexpected end of input, expected '" + stop + "'");
    if (t.kind == Token::Punct && depth == 0 && t.text == stop) break;
    if (t.kind == Token::Punct && t.text == "(") ++depth;
    if (t.kind == Token::Punct && t.text == ")") --depth;
    if (!out.empty()) out += " ";
    out += lex.next().text;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// SessionSpec accessors

RingContext SessionSpec::base_ctx() const {
  RingContext ctx;
  ctx.p = p;
  ctx.factors = 1;
  if (segre_rs) {
    ctx.num_x = uint16_t(segre_rs->first + 1);
    ctx.num_y = uint16_t(segre_rs->second + 1);
  } else {
    ctx.num_x = uint16_t(var_names.size());
    ctx.num_y = 0;
  }
  return ctx;
}

int SessionSpec::tensor_n() const {
  auto n = param_int("n");
  return n ? int(*n) : 1;
}

namespace {

std::optional<VarId> resolve_name(const SessionSpec& spec, const std::string& name,
                                  uint16_t factors) {
  auto base_lookup = [&](const std::string& nm) -> std::optional<VarId> {
    if (spec.segre_rs) {
      auto [r, s] = *spec.segre_rs;
      if (nm.size() >= 2 && (nm[0] == 'x' || nm[0] == 'y')) {
        bool digits = true;
        for (size_t i = 1; i < nm.size(); ++i) digits &= bool(isdigit(uint8_t(nm[i])));
        if (digits) {
          int idx = std::stoi(nm.substr(1));
          if (nm[0] == 'x' && idx <= r) return xvar(uint16_t(idx));
          if (nm[0] == 'y' && idx <= s) return yvar(uint16_t(idx));
        }
      }
      return std::nullopt;
    }
    for (size_t i = 0; i < spec.var_names.size(); ++i)
      if (spec.var_names[i] == nm) return xvar(uint16_t(i));
    return std::nullopt;
  };

  if (auto v = base_lookup(name)) return v;
  // Tensor-factor suffix: base_k.
  size_t us = name.rfind('_');
  if (us != std::string::npos && us + 1 < name.size()) {
    bool digits = true;
    for (size_t i = us + 1; i < name.size(); ++i) digits &= bool(isdigit(uint8_t(name[i])));
    if (digits) {
      int k = std::stoi(name.substr(us + 1));
      if (k >= 1 && k <= int(factors)) {
        if (auto v = base_lookup(name.substr(0, us))) {
          VarId w = *v;
          w.factor = uint16_t(k);
          return w;
        }
      }
    }
  }
  return std::nullopt;
}

class PolyParser {
 public:
  PolyParser(const SessionSpec& spec, const std::string& text, uint16_t factors)
      : spec_(spec), lex_(text), factors_(factors), ctx_(spec.base_ctx().tensor_ring(factors)) {}

  Polynomial parse() {
    Polynomial f = expr();
    if (lex_.peek().kind != Token::End) lex_.fail("trailing input in polynomial");
    return f;
  }

 private:
  Polynomial expr() {
    Polynomial acc = term();
    while (lex_.peek().kind == Token::Punct &&
           (lex_.peek().text == "+" || lex_.peek().text == "-")) {
      std::string op = lex_.next().text;
      Polynomial t = term();
      acc = op == "+" ? acc + t : acc - t;
    }
    return acc;
  }

  Polynomial term() {
    bool neg = false;
    while (lex_.peek().kind == Token::Punct &&
           (lex_.peek().text == "-" || lex_.peek().text == "+")) {
      if (lex_.next().text == "-") neg = !neg;
    }
    Polynomial acc = factor();
    while (lex_.peek().kind == Token::Punct && lex_.peek().text == "*") {
      lex_.next();
      acc = acc * factor();
    }
    return neg ? -acc : acc;
  }

  Polynomial factor() {
    const Token& t = lex_.peek();
    Polynomial base = Polynomial::zero(ctx_);
    if (t.kind == Token::Int) {
      base = Polynomial::constant(ctx_, std::stoll(lex_.next().text));
    } else if (t.kind == Token::Ident) {
      Token id = lex_.next();
      auto v = resolve_name(spec_, id.text, factors_);
      if (!v) {
        std::ostringstream os;
        os << "unknown variable '" << id.text << "' at line " << id.line << ", column "
           << id.col;
        throw std::runtime_error(os.str());
      }
      base = Polynomial::variable(ctx_, *v);
    } else if (t.kind == Token::Punct && t.text == "(") {
      lex_.next();
      base = expr();
      lex_.expect_punct(")");
    } else {
      lex_.fail("expected integer, variable or '('");
    }
    if (lex_.peek().kind == Token::Punct && lex_.peek().text == "^") {
      lex_.next();
      int64_t e = lex_.expect_int();
      base = poly_pow(base, e);
    }
    return base;
  }

  const SessionSpec& spec_;
  Lexer lex_;
  uint16_t factors_;
  RingContext ctx_;
};

}  // namespace

Polynomial SessionSpec::parse_poly(const std::string& text, uint16_t factors) const {
  return PolyParser(*this, text, factors).parse();
}

std::vector<Polynomial> SessionSpec::ideal_generators(const std::string& name) const {
  for (auto& [nm, gens] : ideals) {
    if (nm != name) continue;
    std::vector<Polynomial> out;
    for (auto& g : gens) out.push_back(parse_poly(g));
    return out;
  }
  throw std::runtime_error("unknown ideal '" + name + "'");
}

bool SessionSpec::has_ideal(const std::string& name) const {
  for (auto& [nm, gens] : ideals)
    if (nm == name) return true;
  return false;
}

bool SessionSpec::has_map(const std::string& name) const {
  for (auto& [nm, ms] : maps)
    if (nm == name) return true;
  return false;
}

std::pair<int, Polynomial> SessionSpec::map_spec(const std::string& name) const {
  for (auto& [nm, ms] : maps)
    if (nm == name) return {ms.e, parse_poly(ms.g)};
  throw std::runtime_error("unknown map '" + name + "'");
}

std::optional<int64_t> SessionSpec::param_int(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  try {
    size_t used = 0;
    int64_t v = std::stoll(it->second, &used);
    if (used != it->second.size()) return std::nullopt;
    return v;
  } catch (...) {
    return std::nullopt;
  }
}

std::optional<RationalExponent> SessionSpec::param_rational(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  const std::string& s = it->second;
  size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) return RationalExponent(std::stoll(s), 1);
    return RationalExponent(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (...) {
    return std::nullopt;
  }
}

std::optional<Polynomial> SessionSpec::param_poly(const std::string& key,
                                                  uint16_t factors) const {
  auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  return parse_poly(it->second, factors);
}

// ---------------------------------------------------------------------------
// Session grammar

SessionSpec parse_session(const std::string& text) {
  SessionSpec spec;
  bool have_char = false;
  Lexer lex(text);
  while (lex.peek().kind != Token::End) {
    Token head = lex.expect_ident();
    const std::string& kw = head.text;
    if (kw == "char") {
      int64_t p = lex.expect_int();
      if (p < 2 || p > (int64_t(1) << 31) || !is_prime(uint64_t(p)))
        throw std::runtime_error("char: p must be a prime in [2, 2^31]");
      spec.p = uint32_t(p);
      have_char = true;
      lex.expect_punct(";");
    } else if (kw == "vars") {
      do {
        Token name = lex.expect_ident();
        if (lex.peek().kind == Token::Punct && lex.peek().text == "..") {
          lex.next();
          Token last = lex.expect_ident();
          // Range like x0..x2: shared alphabetic stem, numeric tail.
          auto split = [&](const std::string& s) -> std::pair<std::string, int> {
            size_t i = s.size();
            while (i > 0 && isdigit(uint8_t(s[i - 1]))) --i;
            if (i == s.size()) lex.fail("range endpoint needs a numeric tail");
            return {s.substr(0, i), std::stoi(s.substr(i))};
          };
          auto [stem1, lo] = split(name.text);
          auto [stem2, hi] = split(last.text);
          if (stem1 != stem2 || hi < lo) lex.fail("bad variable range");
          for (int i = lo; i <= hi; ++i) spec.var_names.push_back(stem1 + std::to_string(i));
        } else {
          spec.var_names.push_back(name.text);
        }
        if (lex.peek().kind == Token::Punct && lex.peek().text == ",") {
          lex.next();
          continue;
        }
        break;
      } while (true);
      lex.expect_punct(";");
    } else if (kw == "segre") {
      int r = -1, s = -1;
      for (int i = 0; i < 2; ++i) {
        Token key = lex.expect_ident();
        lex.expect_punct("=");
        int64_t v = lex.expect_int();
        if (key.text == "r")
          r = int(v);
        else if (key.text == "s")
          s = int(v);
        else
          lex.fail("segre expects r= and s=");
      }
      if (r < 1 || s < 1) throw std::runtime_error("segre: r, s must be >= 1");
      spec.segre_rs = {r, s};
      lex.expect_punct(";");
    } else if (kw == "quotient") {
      lex.expect_punct("{");
      while (!(lex.peek().kind == Token::Punct && lex.peek().text == "}")) {
        std::string body;
        int depth = 0;
        while (true) {
          const Token& t = lex.peek();
          if (t.kind == Token::End) lex.fail("unterminated quotient block");
          if (t.kind == Token::Punct && depth == 0 && (t.text == "," || t.text == "}")) break;
          if (t.kind == Token::Punct && t.text == "(") ++depth;
          if (t.kind == Token::Punct && t.text == ")") --depth;
          if (!body.empty()) body += " ";
          body += lex.next().text;
        }
        spec.quotient_gens.push_back(body);
        if (lex.peek().text == ",") lex.next();
      }
      lex.expect_punct("}");
      lex.expect_punct(";");
    } else if (kw == "ideal") {
      Token name = lex.expect_ident();
      lex.expect_punct("{");
      std::vector<std::string> gens;
      while (!(lex.peek().kind == Token::Punct && lex.peek().text == "}")) {
        std::string body;
        int depth = 0;
        while (true) {
          const Token& t = lex.peek();
          if (t.kind == Token::End) lex.fail("unterminated ideal block");
          if (t.kind == Token::Punct && depth == 0 && (t.text == "," || t.text == "}")) break;
          if (t.kind == Token::Punct && t.text == "(") ++depth;
          if (t.kind == Token::Punct && t.text == ")") --depth;
          if (!body.empty()) body += " ";
          body += lex.next().text;
        }
        gens.push_back(body);
        if (lex.peek().text == ",") lex.next();
      }
      lex.expect_punct("}");
      lex.expect_punct(";");
      spec.ideals.push_back({name.text, std::move(gens)});
    } else if (kw == "map") {
      Token name = lex.expect_ident();
      lex.expect_punct("{");
      SessionSpec::MapSpec ms;
      bool have_e = false, have_g = false;
      while (!(lex.peek().kind == Token::Punct && lex.peek().text == "}")) {
        Token key = lex.expect_ident();
        lex.expect_punct("=");
        if (key.text == "e") {
          int64_t e = lex.expect_int();
          if (e < 1) throw std::runtime_error("map: e >= 1 required");
          ms.e = int(e);
          have_e = true;
        } else if (key.text == "g") {
          std::string body;
          int depth = 0;
          while (true) {
            const Token& t = lex.peek();
            if (t.kind == Token::End) lex.fail("unterminated map block");
            if (t.kind == Token::Punct && depth == 0 && (t.text == "," || t.text == "}")) break;
            if (t.kind == Token::Punct && t.text == "(") ++depth;
            if (t.kind == Token::Punct && t.text == ")") --depth;
            if (!body.empty()) body += " ";
            body += lex.next().text;
          }
          ms.g = body;
          have_g = true;
        } else {
          lex.fail("map expects e= and g=");
        }
        if (lex.peek().text == ",") lex.next();
      }
      lex.expect_punct("}");
      lex.expect_punct(";");
      if (!have_e || !have_g) throw std::runtime_error("map: both e and g are required");
      spec.maps.push_back({name.text, std::move(ms)});
    } else if (kw == "param") {
      Token name = lex.expect_ident();
      lex.expect_punct("=");
      std::string value = read_until(lex, ";");
      lex.expect_punct(";");
      spec.params[name.text] = value;
    } else {
      lex.fail("unknown statement '" + kw + "'");
    }
  }
  if (!have_char) throw std::runtime_error("session must declare 'char <p>;'");
  if (spec.segre_rs && !spec.var_names.empty()) {
    // Explicit vars must match the Segre pattern.
    auto [r, s] = *spec.segre_rs;
    size_t expect = size_t(r + 1 + s + 1);
    if (spec.var_names.size() != expect)
      throw std::runtime_error("vars disagree with segre r/s declaration");
  }
  if (!spec.segre_rs && spec.var_names.empty())
    throw std::runtime_error("session must declare variables (vars or segre)");
  // Validate eagerly so errors surface at parse time.
  for (auto& g : spec.quotient_gens) spec.parse_poly(g);
  for (auto& [nm, gens] : spec.ideals)
    for (auto& g : gens) spec.parse_poly(g);
  for (auto& [nm, ms] : spec.maps) {
    Polynomial g = spec.parse_poly(ms.g);
    if (g.is_zero()) throw std::runtime_error("map " + nm + ": multiplier must be nonzero");
  }
  return spec;
}

std::string serialize_session(const SessionSpec& spec) {
  std::ostringstream os;
  os << "char " << spec.p << ";\n";
  if (!spec.var_names.empty()) {
    os << "vars ";
    for (size_t i = 0; i < spec.var_names.size(); ++i)
      os << (i ? ", " : "") << spec.var_names[i];
    os << ";\n";
  }
  if (spec.segre_rs)
    os << "segre r=" << spec.segre_rs->first << " s=" << spec.segre_rs->second << ";\n";
  if (!spec.quotient_gens.empty()) {
    os << "quotient { ";
    for (size_t i = 0; i < spec.quotient_gens.size(); ++i)
      os << (i ? ", " : "") << spec.quotient_gens[i];
    os << " };\n";
  }
  for (auto& [nm, gens] : spec.ideals) {
    os << "ideal " << nm << " { ";
    for (size_t i = 0; i < gens.size(); ++i) os << (i ? ", " : "") << gens[i];
    os << " };\n";
  }
  for (auto& [nm, ms] : spec.maps)
    os << "map " << nm << " { e=" << ms.e << ", g = " << ms.g << " };\n";
  for (auto& [k, v] : spec.params) os << "param " << k << " = " << v << ";\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Command dispatch

namespace {

struct ReportBuilder {
  std::vector<std::string> records;
  std::vector<std::string> caveats;
  int fails = 0, inconclusives = 0, passes = 0;

  void verdict(const std::string& name, const std::string& v, json extra = json::object()) {
    extra["record"] = "verdict";
    extra["name"] = name;
    extra["verdict"] = v;
    records.push_back(extra.dump());
    if (v == "pass")
      ++passes;
    else if (v == "fail")
      ++fails;
    else
      ++inconclusives;
  }

  void value(const std::string& name, const json& v) {
    json rec{{"record", "value"}, {"name", name}, {"value", v}};
    records.push_back(rec.dump());
  }

  void caveat(const std::string& text) {
    caveats.push_back(text);
    records.push_back(json{{"record", "caveat"}, {"text", text}}.dump());
  }

  CommandReport finish(const std::string& command, double seconds) {
    CommandReport rep;
    std::string overall = fails ? "fail" : (inconclusives ? "inconclusive" : "pass");
    json summary{{"record", "summary"},
                 {"command", command},
                 {"verdict", overall},
                 {"pass", passes},
                 {"fail", fails},
                 {"inconclusive", inconclusives},
                 {"caveats", caveats},
                 {"seconds", seconds},
                 {"tool_version", kToolVersion}};
    rep.records = records;
    rep.exit_code = fails ? 1 : (inconclusives ? 2 : 0);
    summary["exit_code"] = rep.exit_code;
    rep.records.push_back(summary.dump());
    return rep;
  }
};

std::string outcome_str(CheckOutcome o) {
  switch (o) {
    case CheckOutcome::True:
      return "pass";
    case CheckOutcome::False:
      return "fail";
    default:
      return "inconclusive";
  }
}

SegreContext session_segre(const SessionSpec& spec, int e) {
  if (!spec.segre_rs) throw std::runtime_error("command requires a 'segre r=.. s=..;' block");
  return SegreContext{spec.p, e, spec.segre_rs->first, spec.segre_rs->second};
}

std::string require_ideal_name(const SessionSpec& spec, const std::string& param_key) {
  auto it = spec.params.find(param_key);
  if (it != spec.params.end()) return it->second;
  if (spec.ideals.size() == 1) return spec.ideals.front().first;
  throw std::runtime_error("set 'param " + param_key + " = <ideal name>;'");
}

int64_t require_int(const SessionSpec& spec, const std::string& key) {
  auto v = spec.param_int(key);
  if (!v) throw std::runtime_error("missing integer parameter '" + key + "'");
  return *v;
}

}  // namespace

CommandReport run_command(const SessionSpec& spec, const std::string& command,
                          const CommandOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  ReportBuilder rb;
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  try {
    json echo{{"record", "input"}, {"command", command}, {"char", spec.p}};
    if (spec.segre_rs) echo["segre"] = {spec.segre_rs->first, spec.segre_rs->second};
    json prm = json::object();
    for (auto& [k, v] : spec.params) prm[k] = v;
    echo["params"] = prm;
    rb.records.push_back(echo.dump());

    if (command == "trace-eval") {
      int e = int(spec.param_int("e").value_or(1));
      auto f = spec.param_poly("f");
      if (!f) throw std::runtime_error("trace-eval needs 'param f = <poly>;'");
      Polynomial tr = frobenius_trace(*f, e);
      rb.value("trace", tr.to_string());
      rb.verdict("trace-eval", "pass");
    } else if (command == "lala-check") {
      int n = spec.tensor_n();
      int e = int(spec.param_int("e").value_or(1));
      DiagonalContext dctx{session_segre(spec, e), n};
      auto g = spec.param_poly("g", uint16_t(n));
      if (!g || g->term_count() != 1)
        throw std::runtime_error("lala-check needs 'param g = <tensor monomial>;'");
      BasisExponent be = BasisExponent::from_monomial(dctx, g->terms().begin()->first);
      bool ok = lala_check(be);
      rb.value("psi", psi_eval(be).to_string());
      rb.value("lift", lift_basis_image(be).value.to_string());
      rb.verdict("lala", ok ? "pass" : "fail");
    } else if (command == "lift-verify") {
      int n = spec.tensor_n();
      int e = int(spec.param_int("e").value_or(1));
      DiagonalContext dctx{session_segre(spec, e), n};
      LiftVerifyReport rep = verify_lift(dctx, opts.degree_bound, opts.cap, opts.threads);
      rb.value("basis_checked", rep.basis_checked);
      rb.value("generator_products_checked", rep.products_checked);
      if (!rep.pass) rb.value("counterexample", rep.counterexample);
      rb.verdict("lift-verify", rep.pass ? "pass" : "fail");
    } else if (command == "dn-witness") {
      int n = spec.tensor_n();
      auto f = spec.param_poly("f");
      if (!f) throw std::runtime_error("dn-witness needs 'param f = <poly>;'");
      auto w = dn_regularity_witness(*f, n, opts.e_max, opts.max_unknowns);
      if (w) {
        rb.value("e", w->e);
        rb.value("g", w->map.multiplier().to_string());
        rb.verdict("dn-witness", "pass");
      } else {
        rb.caveat("no witness found with e <= " + std::to_string(opts.e_max) +
                  "; this is inconclusive, not a proof of absence");
        rb.verdict("dn-witness", "inconclusive");
      }
    } else if (command == "compat-check") {
      std::string map_name =
          spec.params.count("map") ? spec.params.at("map")
                                   : (spec.maps.size() == 1 ? spec.maps.front().first : "");
      if (map_name.empty()) throw std::runtime_error("set 'param map = <map name>;'");
      auto [e, g] = spec.map_spec(map_name);
      CartierMap m(e, g);
      std::string ideal_name = require_ideal_name(spec, "ideal");
      IdealHandle I(spec.base_ctx(), spec.ideal_generators(ideal_name));
      auto witness = ideal_compatibility_counterexample(m, I, opts.cap);
      if (witness)
        rb.value("counterexample", json{{"element", witness->element.to_string()},
                                        {"image", witness->image.to_string()}});
      rb.verdict("compat", witness ? "fail" : "pass");
    } else if (command == "testideal") {
      std::string name = require_ideal_name(spec, "ideal");
      auto t = spec.param_rational("t");
      if (!t) throw std::runtime_error("testideal needs 'param t = <rational>;'");
      IdealHandle a(spec.base_ctx(), spec.ideal_generators(name));
      TestIdealResult res = test_ideal_bms(a, *t, opts.e_max);
      json gens = json::array();
      for (auto& g : res.ideal.groebner_basis()) gens.push_back(g.to_string());
      rb.value("test_ideal_basis", gens);
      if (res.denominator_warning)
        rb.caveat("p divides the exponent denominator; chain levels use ceil(t p^e) and "
                  "stabilization may be delayed");
      if (res.stabilized_at_e) {
        rb.value("stabilized_at_e", *res.stabilized_at_e);
        rb.verdict("testideal", "pass");
      } else {
        rb.caveat("chain did not stabilize by e_max; reported level is a lower bound");
        rb.verdict("testideal", "inconclusive");
      }
    } else if (command == "subadd-check") {
      std::string name = require_ideal_name(spec, "ideal");
      auto t = spec.param_rational("t");
      if (!t) throw std::runtime_error("subadd-check needs 'param t = <rational>;'");
      int n = spec.tensor_n();
      IdealHandle a(spec.base_ctx(), spec.ideal_generators(name));
      rb.verdict("subadditivity", outcome_str(subadditivity_check(a, *t, n, opts.e_max)));
    } else if (command == "bs-check") {
      std::string name = require_ideal_name(spec, "ideal");
      int h = int(require_int(spec, "h"));
      IdealHandle q(spec.base_ctx(), spec.ideal_generators(name));
      rb.verdict("briancon-skoda", outcome_str(briancon_skoda_check(q, h, opts.e_max)));
    } else if (command == "symbolic" || command == "ustp") {
      std::string name = require_ideal_name(spec, "prime");
      auto s = spec.param_poly("s");
      if (!s) throw std::runtime_error("command needs 'param s = <poly>;' (saturating element)");
      RingContext ctx = spec.base_ctx();
      std::vector<Polynomial> qgens;
      for (auto& g : spec.quotient_gens) qgens.push_back(spec.parse_poly(g));
      if (qgens.empty()) qgens.push_back(Polynomial::zero(ctx));
      QuotientRingSpec ring(ctx, IdealHandle(ctx, qgens));
      int h = int(spec.param_int("h").value_or(1));
      PrimeSpec P(spec.ideal_generators(name), h, *s);
      if (command == "symbolic") {
        int m = int(require_int(spec, "m"));
        IdealHandle sym = symbolic_power(P, m, ring);
        json gens = json::array();
        for (auto& g : sym.groebner_basis()) gens.push_back(g.to_string());
        rb.value("symbolic_power_basis", gens);
        bool confirmed = true;
        for (auto& g : sym.groebner_basis())
          confirmed &= symbolic_membership_oracle(g, P, m, ring, opts.degree_bound, opts.cap) ==
                       OracleAnswer::True;
        rb.caveat("equality with the true symbolic power rests on the s-certificate; the "
                  "computed ideal is always contained in it");
        rb.verdict("symbolic", confirmed ? "pass" : "inconclusive");
      } else {
        UstpReport rep = ustp_containment_report(ring, P, h, opts.n_max, opts.degree_bound);
        for (auto& entry : rep.entries) {
          json extra{{"n", entry.n},
                     {"symbolic_generators", entry.symbolic_generators},
                     {"oracle_confirmed", entry.oracle_confirmed},
                     {"seconds", entry.seconds}};
          rb.verdict("containment_n" + std::to_string(entry.n),
                     entry.holds ? "pass" : "fail", extra);
        }
        rb.caveat(rep.caveat);
      }
    } else {
      throw std::runtime_error("unknown command '" + command + "'");
    }
  } catch (const std::exception& ex) {
    CommandReport rep;
    rep.records = rb.records;
    rep.records.push_back(json{{"record", "error"}, {"what", ex.what()}}.dump());
    json summary{{"record", "summary"}, {"command", command},   {"verdict", "error"},
                 {"exit_code", 3},      {"what", ex.what()},    {"tool_version", kToolVersion}};
    rep.records.push_back(summary.dump());
    rep.exit_code = 3;
    return rep;
  }
  return rb.finish(command, elapsed());
}

std::string CommandReport::rendered() const {
  std::string out;
  for (auto& r : records) {
    out += r;
    out += "\n";
  }
  return out;
}

}  // namespace frob
