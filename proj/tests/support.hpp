#pragma once

// Test-side oracles. They work on raw GMP numbers and plain coefficient
// vectors and never call into the library's Scalar/Poly arithmetic, so they
// can disagree with it.

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "zkdesk/frontend.hpp"
#include "zkdesk/poly.hpp"
#include "zkdesk/r1cs.hpp"

namespace oracle {

using Vec = std::vector<mpq_class>;

/// Rational arithmetic, or integers mod p when `p` is set.
struct Arith {
  std::optional<mpz_class> p;

  static Arith rational() { return {}; }
  static Arith field(const mpz_class& m) { return Arith{m}; }
  static Arith of(zkdesk::Domain d) {
    return d.is_rational() ? rational() : field(d.field->modulus());
  }

  mpq_class norm(const mpq_class& x) const {
    if (!p) return x;
    mpz_class den = x.get_den();
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p->get_mpz_t());
    mpz_class r = (mpz_class(x.get_num()) * inv) % *p;
    if (r < 0) r += *p;
    return mpq_class(r);
  }
  mpq_class add(const mpq_class& a, const mpq_class& b) const { return norm(a + b); }
  mpq_class sub(const mpq_class& a, const mpq_class& b) const { return norm(a - b); }
  mpq_class mul(const mpq_class& a, const mpq_class& b) const { return norm(a * b); }
  mpq_class div(const mpq_class& a, const mpq_class& b) const {
    if (!p) return a / b;
    return norm(a * norm(mpq_class(1) / b));
  }
  bool is_zero(const mpq_class& a) const { return norm(a) == 0; }
};

inline mpq_class value(const zkdesk::Scalar& x) {
  return x.is_rational() ? x.rational_value() : mpq_class(x.field_value());
}

inline Vec coeffs(const zkdesk::Poly& p) {
  Vec v;
  for (const auto& c : p.coeffs()) v.push_back(value(c));
  return v;
}

inline Vec values(const std::vector<zkdesk::Scalar>& xs) {
  Vec v;
  for (const auto& x : xs) v.push_back(value(x));
  return v;
}

inline void trim(const Arith& a, Vec& v) {
  while (!v.empty() && a.is_zero(v.back())) v.pop_back();
}

inline Vec mul(const Arith& a, const Vec& x, const Vec& y) {
  if (x.empty() || y.empty()) return {};
  Vec out(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] = a.add(out[i + j], a.mul(x[i], y[j]));
  }
  trim(a, out);
  return out;
}

inline Vec sub(const Arith& a, Vec x, const Vec& y) {
  if (x.size() < y.size()) x.resize(y.size(), 0);
  for (std::size_t i = 0; i < y.size(); ++i) x[i] = a.sub(x[i], y[i]);
  for (auto& c : x) c = a.norm(c);
  trim(a, x);
  return x;
}

inline Vec add(const Arith& a, Vec x, const Vec& y) {
  if (x.size() < y.size()) x.resize(y.size(), 0);
  for (std::size_t i = 0; i < y.size(); ++i) x[i] = a.add(x[i], y[i]);
  for (auto& c : x) c = a.norm(c);
  trim(a, x);
  return x;
}

/// Schoolbook long division, leading term at a time.
inline std::pair<Vec, Vec> long_division(const Arith& a, Vec num, Vec den) {
  trim(a, num);
  trim(a, den);
  if (den.empty()) throw std::invalid_argument("division by zero polynomial");
  Vec q;
  if (num.size() >= den.size()) q.assign(num.size() - den.size() + 1, 0);
  while (!num.empty() && num.size() >= den.size()) {
    const std::size_t shift = num.size() - den.size();
    const mpq_class c = a.div(num.back(), den.back());
    q[shift] = c;
    for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] = a.sub(num[shift + i], a.mul(c, den[i]));
    num.pop_back();
    trim(a, num);
  }
  trim(a, q);
  return {q, num};
}

/// Textbook Lagrange: sum_i y_i * prod_{j != i} (x - x_j) / (x_i - x_j).
inline Vec lagrange(const Arith& a, const Vec& xs, const Vec& ys) {
  Vec acc;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Vec term{a.norm(ys[i])};
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      const mpq_class d = a.sub(xs[i], xs[j]);
      term = mul(a, term, Vec{a.div(a.sub(0, xs[j]), d), a.div(1, d)});
    }
    acc = add(a, acc, term);
  }
  return acc;
}

inline mpq_class eval(const Arith& a, const Vec& p, const mpq_class& x) {
  mpq_class acc = 0, pw = 1;
  for (const auto& c : p) {
    acc = a.add(acc, a.mul(c, pw));
    pw = a.mul(pw, x);
  }
  return acc;
}

inline mpq_class dot(const Arith& a, const Vec& x, const Vec& y) {
  mpq_class acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) acc = a.add(acc, a.mul(x[i], y[i]));
  return acc;
}

/// (t.v)(t.w) - t.k for each row, with the rows given densely.
inline bool rows_hold(const Arith& a, const zkdesk::ConstraintSystem& cs, const Vec& t) {
  for (const auto& r : cs.rows) {
    const Vec v = values(zkdesk::dense(r.v, cs.num_wires, cs.domain));
    const Vec w = values(zkdesk::dense(r.w, cs.num_wires, cs.domain));
    const Vec k = values(zkdesk::dense(r.k, cs.num_wires, cs.domain));
    if (!a.is_zero(a.sub(a.mul(dot(a, t, v), dot(a, t, w)), dot(a, t, k)))) return false;
  }
  return true;
}

/// Reference sponge: state = 0; state = perm(state + m); perm iterates
/// x = (x + i)^3 for i = 1..rounds.
inline mpz_class mimc(const std::vector<mpz_class>& in, const mpz_class& p, unsigned rounds = 11) {
  mpz_class state = 0;
  for (const auto& m : in) {
    mpz_class x = (state + m) % p;
    for (unsigned i = 1; i <= rounds; ++i) {
      mpz_class y = x + i;
      mpz_powm_ui(x.get_mpz_t(), y.get_mpz_t(), 3, p.get_mpz_t());
    }
    state = x;
  }
  return state;
}

}  // namespace oracle

namespace gen {

/// Random straight-line programs with their own evaluator.
struct Node {
  enum Kind { Var, Lit, Add, Sub, Mul, Pow } kind = Lit;
  std::string name;
  long lit = 0;
  unsigned k = 0;
  std::shared_ptr<Node> a, b;

  std::string source() const {
    switch (kind) {
      case Var: return name;
      case Lit: return std::to_string(lit);
      case Add: return "(" + a->source() + " + " + b->source() + ")";
      case Sub: return "(" + a->source() + " - " + b->source() + ")";
      case Mul: return "(" + a->source() + " * " + b->source() + ")";
      case Pow: return "(" + a->source() + ")**" + std::to_string(k);
    }
    return "";
  }

  zkdesk::Scalar eval(const std::map<std::string, zkdesk::Scalar>& env, zkdesk::Domain d) const {
    switch (kind) {
      case Var: return env.at(name);
      case Lit: return zkdesk::Scalar(d, lit);
      case Add: return a->eval(env, d) + b->eval(env, d);
      case Sub: return a->eval(env, d) - b->eval(env, d);
      case Mul: return a->eval(env, d) * b->eval(env, d);
      case Pow: {
        zkdesk::Scalar base = a->eval(env, d), acc = base;
        for (unsigned i = 1; i < k; ++i) acc = acc * base;
        return acc;
      }
    }
    return zkdesk::Scalar(d, 0L);
  }
};

struct Program {
  std::string source;
  std::vector<std::pair<std::string, std::shared_ptr<Node>>> body;
  std::shared_ptr<Node> ret;

  zkdesk::Scalar run(const zkdesk::Scalar& x) const {
    std::map<std::string, zkdesk::Scalar> env{{"x", x}};
    for (const auto& [n, e] : body) env.insert_or_assign(n, e->eval(env, x.domain()));
    return ret->eval(env, x.domain());
  }
};

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  /// Program whose flattened circuit has at most `max_gates` gates.
  Program program(std::size_t max_gates, zkdesk::Domain d) {
    for (;;) {
      Program p = draft();
      if (zkdesk::flatten(zkdesk::parse_source(p.source), d).gates.size() <= max_gates) return p;
    }
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  std::shared_ptr<Node> expr(const std::vector<std::string>& vars, int depth) {
    auto n = std::make_shared<Node>();
    const std::size_t choice = depth <= 0 ? pick(2) : pick(6);
    if (choice == 0) {
      n->kind = Node::Var;
      n->name = vars[pick(vars.size())];
    } else if (choice == 1) {
      n->kind = Node::Lit;
      n->lit = static_cast<long>(pick(12));
    } else if (choice == 5) {
      n->kind = Node::Pow;
      n->k = 1 + static_cast<unsigned>(pick(3));
      n->a = expr(vars, depth - 1);
    } else {
      n->kind = choice == 2 ? Node::Add : choice == 3 ? Node::Sub : Node::Mul;
      n->a = expr(vars, depth - 1);
      n->b = expr(vars, depth - 1);
    }
    return n;
  }

  Program draft() {
    Program p;
    std::vector<std::string> vars{"x"};
    p.source = "def f(x):\n";
    const std::size_t stmts = pick(4);
    for (std::size_t i = 0; i < stmts; ++i) {
      const std::string name = "v" + std::to_string(i);
      auto e = expr(vars, 2);
      p.source += "    " + name + " = " + e->source() + "\n";
      p.body.emplace_back(name, e);
      vars.push_back(name);
    }
    p.ret = expr(vars, 2);
    p.source += "    return " + p.ret->source() + "\n";
    return p;
  }

  std::mt19937_64 rng_;
};

}  // namespace gen

namespace ref {

inline const zkdesk::Domain Q = zkdesk::Domain::rational();

inline zkdesk::Scalar q(long n, long d = 1) { return zkdesk::Scalar(Q, mpz_class(n), mpz_class(d)); }

/// Within 5e-3 of the printed decimals.
inline bool close_to(const zkdesk::Poly& p, const std::vector<double>& printed, double tol = 5e-3) {
  const auto got = zkdesk::to_doubles(p);
  if (got.size() != printed.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (std::abs(got[i] - printed[i]) > tol) return false;
  }
  return true;
}

}  // namespace ref
