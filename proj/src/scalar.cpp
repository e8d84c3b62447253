#include "zkdesk/scalar.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace zkdesk {

struct FieldRegistry {
  std::mutex mu;
  std::map<std::string, std::unique_ptr<PrimeField>> fields;

  const PrimeField* intern(const mpz_class& modulus) {
    std::lock_guard lock(mu);
    auto key = modulus.get_str();
    auto it = fields.find(key);
    if (it != fields.end()) return it->second.get();
    auto* f = new PrimeField(modulus);
    fields.emplace(key, std::unique_ptr<PrimeField>(f));
    return f;
  }
};

namespace {
FieldRegistry& registry() {
  static FieldRegistry r;
  return r;
}
}  // namespace

const PrimeField* PrimeField::get(const mpz_class& modulus) {
  if (modulus < 2 || mpz_probab_prime_p(modulus.get_mpz_t(), 30) == 0) {
    throw Error("field modulus is not prime: " + modulus.get_str());
  }
  return registry().intern(modulus);
}

const PrimeField* PrimeField::get(std::string_view decimal_modulus) {
  mpz_class m;
  if (decimal_modulus.empty() || m.set_str(std::string(decimal_modulus), 10) != 0) {
    throw FormatError("bad modulus: " + std::string(decimal_modulus));
  }
  return get(m);
}

const PrimeField* PrimeField::default_field() {
  static const PrimeField* f = get(kDefaultModulus);
  return f;
}

std::string Domain::describe() const {
  return field ? "field(" + field->modulus_string() + ")" : "rational";
}

Scalar::Scalar(Domain d, long v) : field_(d.field) {
  if (field_) {
    value_ = mpz_class(v);
  } else {
    value_ = mpq_class(v);
  }
  reduce();
}

Scalar::Scalar(Domain d, const mpz_class& v) : field_(d.field) {
  if (field_) {
    value_ = v;
  } else {
    value_ = mpq_class(v);
  }
  reduce();
}

Scalar::Scalar(Domain d, const mpz_class& num, const mpz_class& den) : field_(d.field) {
  if (den == 0) throw DivisionByZero("zero denominator");
  if (field_) {
    value_ = mpz_class(num);
    reduce();
    *this *= Scalar(d, den).inverse();
  } else {
    mpq_class q(num, den);
    q.canonicalize();
    value_ = std::move(q);
  }
}

void Scalar::reduce() {
  if (!field_) return;
  auto& z = std::get<mpz_class>(value_);
  const auto& p = field_->modulus();
  if (z < 0 || z >= p) {
    mpz_mod(z.get_mpz_t(), z.get_mpz_t(), p.get_mpz_t());
  }
}

Scalar Scalar::parse(Domain d, std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  mpz_class num;
  mpz_class den = 1;
  auto parse_int = [&](const std::string& part, mpz_class& out) {
    std::string digits = part;
    if (!digits.empty() && digits[0] == '+') digits.erase(0, 1);
    if (digits.empty() || digits == "-" || out.set_str(digits, 10) != 0) {
      throw FormatError("bad scalar literal: '" + s + "'");
    }
  };
  if (slash == std::string::npos) {
    parse_int(s, num);
  } else {
    parse_int(s.substr(0, slash), num);
    parse_int(s.substr(slash + 1), den);
    if (den == 0) throw FormatError("zero denominator in scalar literal: '" + s + "'");
  }
  return Scalar(d, num, den);
}

bool Scalar::is_zero() const {
  return std::visit([](const auto& v) { return v == 0; }, value_);
}

bool Scalar::is_one() const {
  return std::visit([](const auto& v) { return v == 1; }, value_);
}

const mpz_class& Scalar::field_value() const {
  if (!field_) throw ModeMismatch("field value requested from a rational scalar");
  return std::get<mpz_class>(value_);
}

mpq_class Scalar::rational_value() const {
  if (field_) return mpq_class(std::get<mpz_class>(value_));
  return std::get<mpq_class>(value_);
}

void Scalar::require_same(const Scalar& o) const {
  if (field_ != o.field_) {
    throw ModeMismatch("scalar mode mismatch: " + domain().describe() + " vs " +
                       o.domain().describe());
  }
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (field_) {
    auto& z = std::get<mpz_class>(r.value_);
    if (z != 0) z = field_->modulus() - z;
  } else {
    auto& q = std::get<mpq_class>(r.value_);
    q = -q;
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  require_same(o);
  if (field_) {
    auto& z = std::get<mpz_class>(value_);
    z += std::get<mpz_class>(o.value_);
    if (z >= field_->modulus()) z -= field_->modulus();
  } else {
    std::get<mpq_class>(value_) += std::get<mpq_class>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  require_same(o);
  if (field_) {
    auto& z = std::get<mpz_class>(value_);
    z -= std::get<mpz_class>(o.value_);
    if (z < 0) z += field_->modulus();
  } else {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  require_same(o);
  if (field_) {
    auto& z = std::get<mpz_class>(value_);
    mpz_mul(z.get_mpz_t(), z.get_mpz_t(), std::get<mpz_class>(o.value_).get_mpz_t());
    mpz_mod(z.get_mpz_t(), z.get_mpz_t(), field_->modulus().get_mpz_t());
  } else {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(o.value_);
  }
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  Scalar r = *this;
  if (field_) {
    auto& z = std::get<mpz_class>(r.value_);
    mpz_invert(z.get_mpz_t(), z.get_mpz_t(), field_->modulus().get_mpz_t());
  } else {
    auto& q = std::get<mpq_class>(r.value_);
    q = 1 / q;
  }
  return r;
}

Scalar Scalar::pow(std::uint64_t e) const {
  Scalar r = *this;
  if (field_) {
    auto& z = std::get<mpz_class>(r.value_);
    mpz_class exp;
    mpz_import(exp.get_mpz_t(), 1, 1, sizeof(e), 0, 0, &e);
    mpz_powm(z.get_mpz_t(), z.get_mpz_t(), exp.get_mpz_t(), field_->modulus().get_mpz_t());
    return r;
  }
  Scalar acc = Scalar::one(domain());
  Scalar base = *this;
  while (e != 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

bool Scalar::operator==(const Scalar& o) const {
  return field_ == o.field_ && value_ == o.value_;
}

std::string Scalar::to_string() const {
  if (field_) return std::get<mpz_class>(value_).get_str();
  const auto& q = std::get<mpq_class>(value_);
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double Scalar::to_double() const {
  if (field_) return std::get<mpz_class>(value_).get_d();
  return std::get<mpq_class>(value_).get_d();
}

}  // namespace zkdesk
