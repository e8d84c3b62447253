#include "zkdesk/frontend.hpp"

#include <cctype>
#include <optional>
#include <set>
#include <sstream>

namespace zkdesk {

Expr Expr::var(std::string n) {
  Expr e;
  e.kind = Kind::Var;
  e.name = std::move(n);
  return e;
}

Expr Expr::lit(mpz_class v) {
  Expr e;
  e.kind = Kind::Literal;
  e.literal = std::move(v);
  return e;
}

Expr Expr::binary(Kind k, Expr a, Expr b) {
  Expr e;
  e.kind = k;
  e.operands.push_back(std::move(a));
  e.operands.push_back(std::move(b));
  return e;
}

Expr Expr::power(Expr base, std::uint32_t k) {
  Expr e;
  e.kind = Kind::Pow;
  e.exponent = k;
  e.operands.push_back(std::move(base));
  return e;
}

std::string Expr::to_string() const {
  switch (kind) {
    case Kind::Var:
      return name;
    case Kind::Literal:
      return literal.get_str();
    case Kind::Pow:
      return "(" + operands[0].to_string() + ")**" + std::to_string(exponent);
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul: {
      const char* op = kind == Kind::Add ? " + " : kind == Kind::Sub ? " - " : " * ";
      return "(" + operands[0].to_string() + op + operands[1].to_string() + ")";
    }
  }
  return {};
}

namespace {

struct Token {
  enum class Kind { Ident, Int, Op, Newline, End };
  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto push = [&](Token::Kind k, std::string text, std::size_t c) {
    out.push_back({k, std::move(text), line, c});
  };
  while (i < src.size()) {
    char ch = src[i];
    if (ch == '\n') {
      push(Token::Kind::Newline, "\\n", col);
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (ch == '#') {
      while (i < src.size() && src[i] != '\n') ++i, ++col;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      ++col;
      continue;
    }
    std::size_t start = col;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::string s;
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        s += src[i++];
        ++col;
      }
      push(Token::Kind::Ident, std::move(s), start);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::string s;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        s += src[i++];
        ++col;
      }
      push(Token::Kind::Int, std::move(s), start);
      continue;
    }
    if (ch == '*' && i + 1 < src.size() && src[i + 1] == '*') {
      push(Token::Kind::Op, "**", start);
      i += 2;
      col += 2;
      continue;
    }
    if (std::string_view("()+-*=:").find(ch) != std::string_view::npos) {
      push(Token::Kind::Op, std::string(1, ch), start);
      ++i;
      ++col;
      continue;
    }
    throw ParseError(line, col, std::string("unexpected character '") + ch + "'");
  }
  out.push_back({Token::Kind::End, "<end of input>", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Ast program() {
    Ast ast;
    skip_newlines();
    expect_keyword("def");
    ast.function = expect_ident("function name").text;
    expect_op("(");
    const Token param = expect_ident("parameter name");
    check_binding_name(param);
    ast.param = param.text;
    defined_.insert(ast.param);
    expect_op(")");
    expect_op(":");
    for (;;) {
      skip_newlines();
      const Token& t = peek();
      if (t.kind == Token::Kind::Ident && t.text == "return") {
        next();
        ast.result = expr();
        break;
      }
      if (t.kind != Token::Kind::Ident || is_keyword(t.text)) {
        fail(t, "expected assignment or 'return', found '" + t.text + "'");
      }
      const Token target = next();
      check_binding_name(target);
      expect_op("=");
      Expr value = expr();
      if (defined_.count(target.text)) fail(target, "reassignment of '" + target.text + "'");
      defined_.insert(target.text);
      ast.body.push_back({target.text, std::move(value)});
      end_of_statement();
    }
    skip_newlines();
    if (peek().kind != Token::Kind::End) fail(peek(), "unexpected '" + peek().text + "' after return");
    return ast;
  }

 private:
  static bool is_keyword(const std::string& s) { return s == "def" || s == "return"; }

  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    throw ParseError(t.line, t.col, msg);
  }

  void skip_newlines() {
    while (peek().kind == Token::Kind::Newline) next();
  }

  void end_of_statement() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Newline && t.kind != Token::Kind::End) {
      fail(t, "expected end of line, found '" + t.text + "'");
    }
  }

  void expect_keyword(const char* kw) {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident || t.text != kw) {
      fail(t, std::string("expected '") + kw + "', found '" + t.text + "'");
    }
    next();
  }

  Token expect_ident(const char* what) {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident || is_keyword(t.text)) {
      fail(t, std::string("expected ") + what + ", found '" + t.text + "'");
    }
    return next();
  }

  void expect_op(const char* op) {
    const Token& t = peek();
    if (t.kind != Token::Kind::Op || t.text != op) {
      fail(t, std::string("expected '") + op + "', found '" + t.text + "'");
    }
    next();
  }

  bool accept_op(const char* op) {
    if (peek().kind == Token::Kind::Op && peek().text == op) {
      next();
      return true;
    }
    return false;
  }

  static void check_binding_name(const Token& t) {
    if (t.text == "one" || t.text == "out") fail(t, "'" + t.text + "' is a reserved wire name");
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept_op("+")) {
        lhs = Expr::binary(Expr::Kind::Add, std::move(lhs), term());
      } else if (accept_op("-")) {
        lhs = Expr::binary(Expr::Kind::Sub, std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = power();
    while (accept_op("*")) lhs = Expr::binary(Expr::Kind::Mul, std::move(lhs), power());
    return lhs;
  }

  Expr power() {
    Expr base = atom();
    if (!accept_op("**")) return base;
    const Token& t = peek();
    if (t.kind != Token::Kind::Int) fail(t, "exponent must be a positive integer literal");
    mpz_class k(t.text, 10);
    if (k < 1 || k > 1'000'000) fail(t, "exponent must be a positive integer literal");
    next();
    if (peek().kind == Token::Kind::Op && peek().text == "**") {
      fail(peek(), "chained exponentiation is not supported");
    }
    return Expr::power(std::move(base), static_cast<std::uint32_t>(k.get_ui()));
  }

  Expr atom() {
    const Token t = peek();
    if (t.kind == Token::Kind::Int) {
      next();
      return Expr::lit(mpz_class(t.text, 10));
    }
    if (t.kind == Token::Kind::Ident && !is_keyword(t.text)) {
      next();
      if (!defined_.count(t.text)) fail(t, "undefined variable '" + t.text + "'");
      return Expr::var(t.text);
    }
    if (accept_op("(")) {
      Expr e = expr();
      expect_op(")");
      return e;
    }
    fail(t, "expected expression, found '" + t.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::set<std::string> defined_;
};

}  // namespace

Ast parse_source(std::string_view text) { return Parser(tokenize(text)).program(); }

namespace {

Scalar eval_expr(const Expr& e, const std::map<std::string, Scalar>& env, Domain d) {
  switch (e.kind) {
    case Expr::Kind::Var:
      return env.at(e.name);
    case Expr::Kind::Literal:
      return Scalar(d, e.literal);
    case Expr::Kind::Add:
      return eval_expr(e.operands[0], env, d) + eval_expr(e.operands[1], env, d);
    case Expr::Kind::Sub:
      return eval_expr(e.operands[0], env, d) - eval_expr(e.operands[1], env, d);
    case Expr::Kind::Mul:
      return eval_expr(e.operands[0], env, d) * eval_expr(e.operands[1], env, d);
    case Expr::Kind::Pow:
      return eval_expr(e.operands[0], env, d).pow(e.exponent);
  }
  throw Error("bad expression");
}

}  // namespace

Scalar interpret(const Ast& ast, const Scalar& input) {
  std::map<std::string, Scalar> env;
  env.emplace(ast.param, input);
  for (const auto& a : ast.body) env[a.target] = eval_expr(a.value, env, input.domain());
  return eval_expr(ast.result, env, input.domain());
}

Scalar evaluate(const LinearCombination& lc, const std::vector<Scalar>& wires) {
  if (lc.empty()) return Scalar::zero(wires.at(0).domain());
  Scalar acc = Scalar::zero(lc.begin()->second.domain());
  for (const auto& [w, c] : lc) acc += c * wires.at(w);
  return acc;
}

std::size_t FlatProgram::wire_index(std::string_view name) const {
  for (std::size_t i = 0; i < wires.size(); ++i) {
    if (wires[i] == name) return i;
  }
  throw Error("no wire named '" + std::string(name) + "'");
}

std::vector<Scalar> FlatProgram::forward(const Scalar& input) const {
  if (input.domain() != domain) throw ModeMismatch("input is in " + input.domain().describe());
  std::vector<Scalar> t(wires.size(), Scalar::zero(domain));
  t[kOneWire] = Scalar::one(domain);
  t[input_wire()] = input;
  for (const auto& g : gates) t[g.out] = evaluate(g.left, t) * evaluate(g.right, t);
  return t;
}

namespace {

class Flattener {
 public:
  Flattener(const Ast& ast, Domain d) : ast_(ast), d_(d) {
    fp_.domain = d;
    fp_.wires = {"one", ast.param, "out"};
    fp_.public_wires = {FlatProgram::kOneWire, 2};
    vars_[ast.param] = 1;
    taken_.insert(ast.param);
    for (const auto& a : ast.body) taken_.insert(a.target);
  }

  FlatProgram run() {
    for (const auto& a : ast_.body) {
      std::size_t w = emit(a.value, Target{a.target, std::nullopt});
      vars_[a.target] = w;
    }
    emit(ast_.result, Target{"out", 2});
    return std::move(fp_);
  }

 private:
  // Destination of a gate: an existing wire, or a named wire allocated when the
  // final gate is emitted so that helper wires precede it.
  struct Target {
    std::string name;
    std::optional<std::size_t> wire;
  };

  std::size_t resolve(Target& t) {
    if (!t.wire) {
      t.wire = fp_.wires.size();
      fp_.wires.push_back(t.name);
    }
    return *t.wire;
  }

  Target fresh() {
    std::string name;
    do {
      name = "sym" + std::to_string(++sym_counter_);
    } while (taken_.count(name));
    return Target{name, std::nullopt};
  }

  LinearCombination unit(std::size_t w) { return {{w, Scalar::one(d_)}}; }

  LinearCombination atom_lc(const Expr& e) {
    if (e.kind == Expr::Kind::Var) return unit(vars_.at(e.name));
    Scalar c(d_, e.literal);
    if (c.is_zero()) return {};
    return {{FlatProgram::kOneWire, c}};
  }

  static LinearCombination combine(LinearCombination a, const LinearCombination& b,
                                   const Scalar& sign) {
    for (const auto& [w, c] : b) {
      auto it = a.find(w);
      if (it == a.end()) {
        a.emplace(w, c * sign);
      } else {
        it->second += c * sign;
        if (it->second.is_zero()) a.erase(it);
      }
    }
    return a;
  }

  LinearCombination operand(const Expr& e) {
    if (e.is_atom()) return atom_lc(e);
    return unit(emit(e, fresh()));
  }

  std::size_t push_gate(Gate::Kind kind, LinearCombination l, LinearCombination r, Target& t) {
    std::size_t out = resolve(t);
    fp_.gates.push_back(Gate{kind, std::move(l), std::move(r), out});
    return out;
  }

  std::size_t emit(const Expr& e, Target t) {
    switch (e.kind) {
      case Expr::Kind::Var:
      case Expr::Kind::Literal:
        return push_gate(Gate::Kind::Mul, atom_lc(e), unit(FlatProgram::kOneWire), t);
      case Expr::Kind::Add:
      case Expr::Kind::Sub: {
        LinearCombination a = operand(e.operands[0]);
        LinearCombination b = operand(e.operands[1]);
        Scalar sign = e.kind == Expr::Kind::Add ? Scalar::one(d_) : -Scalar::one(d_);
        return push_gate(Gate::Kind::Add, combine(std::move(a), b, sign),
                         unit(FlatProgram::kOneWire), t);
      }
      case Expr::Kind::Mul: {
        LinearCombination a = operand(e.operands[0]);
        LinearCombination b = operand(e.operands[1]);
        return push_gate(Gate::Kind::Mul, std::move(a), std::move(b), t);
      }
      case Expr::Kind::Pow: {
        if (e.exponent == 1) return emit(e.operands[0], t);
        LinearCombination base = operand(e.operands[0]);
        LinearCombination acc = base;
        for (std::uint32_t i = 1; i < e.exponent; ++i) {
          Target step = i + 1 == e.exponent ? t : fresh();
          acc = unit(push_gate(Gate::Kind::Mul, acc, base, step));
        }
        return acc.begin()->first;
      }
    }
    throw Error("bad expression");
  }

  const Ast& ast_;
  Domain d_;
  FlatProgram fp_;
  std::map<std::string, std::size_t> vars_;
  std::set<std::string> taken_;
  int sym_counter_ = 0;
};

std::string coeff_text(const Scalar& c) {
  if (c.is_rational() && c.rational_value().get_den() == 1) return c.rational_value().get_num().get_str();
  return c.to_string();
}

// constant term last, "x + y + 5"
std::string lc_text(const LinearCombination& lc, const FlatProgram& fp) {
  if (lc.empty()) return "0";
  std::vector<std::string> terms;
  for (const auto& [w, c] : lc) {
    if (w == FlatProgram::kOneWire) continue;
    terms.push_back(c.is_one() ? fp.wires[w] : coeff_text(c) + "*" + fp.wires[w]);
  }
  if (auto it = lc.find(FlatProgram::kOneWire); it != lc.end()) terms.push_back(coeff_text(it->second));
  std::string s;
  for (std::size_t i = 0; i < terms.size(); ++i) s += (i ? " + " : "") + terms[i];
  return s;
}

}  // namespace

FlatProgram flatten(const Ast& ast, Domain domain) { return Flattener(ast, domain).run(); }

std::string describe(const FlatProgram& fp) {
  std::ostringstream os;
  for (const auto& g : fp.gates) {
    os << fp.wires[g.out] << " = ";
    if (g.kind == Gate::Kind::Add) {
      os << lc_text(g.left, fp);
    } else {
      bool copy = g.right.size() == 1 && g.right.begin()->first == FlatProgram::kOneWire &&
                  g.right.begin()->second.is_one();
      os << lc_text(g.left, fp);
      if (!copy) os << " * " << lc_text(g.right, fp);
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace zkdesk
