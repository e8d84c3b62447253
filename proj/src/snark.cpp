#include "zkdesk/snark.hpp"

#include <cstdio>

#include "zkdesk/kernels.hpp"
#include "zkdesk/rng.hpp"

namespace zkdesk {

namespace hh {

namespace {
thread_local std::uint64_t g_ops = 0;

const PrimeField* require_field(const Scalar& x) {
  if (x.is_rational()) throw ModeMismatch("homomorphic encoding needs a prime-field scalar");
  return x.domain().field;
}
}  // namespace

std::uint64_t op_count() { return g_ops; }
void reset_op_count() { g_ops = 0; }

Element Element::identity(const PrimeField* field) { return Element(Scalar::zero(Domain::of(field))); }
Element Element::generator(const PrimeField* field) { return Element(Scalar::one(Domain::of(field))); }

Element Element::deserialize(const PrimeField* field, const std::string& text) {
  return Element(Scalar::parse(Domain::of(field), text));
}

Element encode(const Scalar& x) {
  require_field(x);
  return Element(x);
}

TargetElement encode_target(const Scalar& x) {
  require_field(x);
  return TargetElement(x);
}

Element combine(const Element& a, const Element& b) {
  ++g_ops;
  return Element(a.exp_ + b.exp_);
}

TargetElement combine(const TargetElement& a, const TargetElement& b) {
  ++g_ops;
  return TargetElement(a.exp_ + b.exp_);
}

Element scale(const Element& a, const Scalar& c) {
  ++g_ops;
  return Element(a.exp_ * c);
}

TargetElement scale(const TargetElement& a, const Scalar& c) {
  ++g_ops;
  return TargetElement(a.exp_ * c);
}

TargetElement pair(const Element& a, const Element& b) {
  ++g_ops;
  return TargetElement(a.exp_ * b.exp_);
}

}  // namespace hh

namespace {

class DigestBuilder {
 public:
  void word(std::uint64_t w) {
    for (int i = 0; i < 8; ++i) {
      h_ ^= (w >> (8 * i)) & 0xff;
      h_ *= 0x100000001b3ULL;
    }
  }
  void text(const std::string& s) {
    word(s.size());
    h_ = fnv1a(s, h_);
  }
  void scalar(const Scalar& x) {
    const mpz_class& z = x.field_value();
    const std::size_t n = mpz_size(z.get_mpz_t());
    word(n);
    for (std::size_t i = 0; i < n; ++i) word(mpz_getlimbn(z.get_mpz_t(), i));
  }
  void poly(const Poly& p) {
    word(p.coeffs().size());
    for (const auto& c : p.coeffs()) scalar(c);
  }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

const PrimeField* qap_field(const Qap& q) {
  if (q.domain.is_rational()) {
    throw ModeMismatch("setup/prove/verify need a prime-field circuit, not rational mode");
  }
  return q.domain.field;
}

std::vector<hh::Element> encode_at(const std::vector<Scalar>& xs,
                                   const std::vector<std::size_t>& idx) {
  std::vector<hh::Element> out;
  out.reserve(idx.size());
  for (auto j : idx) out.push_back(hh::encode(xs.at(j)));
  return out;
}

/// sum_i c_i * E_i
hh::Element linear_combination(const std::vector<hh::Element>& bases,
                               const std::vector<Scalar>& coeffs, const PrimeField* field) {
  hh::Element acc = hh::Element::identity(field);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    acc = hh::combine(acc, hh::scale(bases[i], coeffs[i]));
  }
  return acc;
}

}  // namespace

std::string circuit_digest(const Qap& q) {
  DigestBuilder d;
  d.text(qap_field(q)->modulus_string());
  d.word(q.num_gates);
  d.word(q.num_wires);
  for (auto j : q.public_wires) d.word(j);
  for (const auto* group : {&q.v_polys, &q.w_polys, &q.k_polys}) {
    for (const auto& p : *group) d.poly(p);
  }
  d.poly(q.z);
  return d.hex();
}

std::size_t power_count(const Qap& q) {
  const std::size_t n = q.num_gates;
  const std::size_t vw = n == 0 ? 0 : 2 * (n - 1);
  return n + (vw > n ? vw - n : 0) + 1;
}

KeyPair setup(const Qap& q, const SnarkParams& params) {
  const PrimeField* field = qap_field(q);
  const Domain dom = Domain::of(field);
  SeededRng rng(params.seed, "snark-setup");
  // s must avoid the gate nodes, where z vanishes.
  Scalar s = rng.next_nonzero_scalar(dom);
  while (q.z.eval(s).is_zero()) s = rng.next_nonzero_scalar(dom);

  KeyPair keys;
  const std::string digest = circuit_digest(q);
  std::vector<std::size_t> priv;
  for (std::size_t j = 0; j < q.num_wires; ++j) {
    bool pub = false;
    for (auto p : q.public_wires) pub = pub || p == j;
    if (!pub) priv.push_back(j);
  }

  ProvingKey& pk = keys.pk;
  pk.digest = digest;
  pk.field = field;
  Scalar power = Scalar::one(dom);
  for (std::size_t i = 0; i < power_count(q); ++i) {
    pk.powers.push_back(hh::encode(power));
    power *= s;
  }
  pk.private_wires = priv;
  const auto v_at_s = kernels::omp::eval_all(q.v_polys, s);
  const auto w_at_s = kernels::omp::eval_all(q.w_polys, s);
  const auto k_at_s = kernels::omp::eval_all(q.k_polys, s);
  pk.v = encode_at(v_at_s, priv);
  pk.w = encode_at(w_at_s, priv);
  pk.k = encode_at(k_at_s, priv);

  VerifyingKey& vk = keys.vk;
  vk.digest = digest;
  vk.field = field;
  vk.one = hh::encode(Scalar::one(dom));
  vk.z_at_s = hh::encode(q.z.eval(s));
  vk.public_wires = q.public_wires;
  for (auto j : q.public_wires) {
    vk.public_names.push_back(j < q.wire_names.size() ? q.wire_names[j] : std::to_string(j));
  }
  vk.v = encode_at(v_at_s, q.public_wires);
  vk.w = encode_at(w_at_s, q.public_wires);
  vk.k = encode_at(k_at_s, q.public_wires);
  return keys;
}

Proof prove(const ProvingKey& pk, const Qap& q, const WitnessVector& t) {
  const PrimeField* field = qap_field(q);
  if (field != pk.field || circuit_digest(q) != pk.digest) {
    throw SnarkError("proving key was generated for a different circuit");
  }
  Poly h;
  try {
    h = compute_h(target_poly(combine_with_witness(q, t)), q.z);
  } catch (const NotDivisible&) {
    throw UnsatisfiedWitness("witness does not satisfy the circuit");
  }
  if (h.coeffs().size() > pk.powers.size()) throw SnarkError("proving key has too few powers");

  std::vector<Scalar> priv_t;
  priv_t.reserve(pk.private_wires.size());
  for (auto j : pk.private_wires) priv_t.push_back(t.t.at(j));

  Proof proof;
  proof.digest = pk.digest;
  proof.pi_v = linear_combination(pk.v, priv_t, field);
  proof.pi_w = linear_combination(pk.w, priv_t, field);
  proof.pi_k = linear_combination(pk.k, priv_t, field);
  proof.pi_h = linear_combination(pk.powers, h.coeffs(), field);
  return proof;
}

bool verify(const VerifyingKey& vk, const std::map<std::size_t, Scalar>& public_inputs,
            const Proof& proof) {
  if (proof.digest != vk.digest) throw SnarkError("proof and verifying key are for different circuits");
  if (public_inputs.size() != vk.public_wires.size()) {
    throw SnarkError("expected " + std::to_string(vk.public_wires.size()) + " public inputs, got " +
                     std::to_string(public_inputs.size()));
  }
  const Domain dom = Domain::of(vk.field);
  std::vector<Scalar> values;
  values.reserve(vk.public_wires.size());
  for (auto j : vk.public_wires) {
    auto it = public_inputs.find(j);
    if (it == public_inputs.end()) throw SnarkError("missing public input for wire " + std::to_string(j));
    if (it->second.domain() != dom) throw SnarkError("public input in the wrong field");
    if (j == 0 && !it->second.is_one()) throw SnarkError("public wire 'one' must be 1");
    values.push_back(it->second);
  }
  for (const auto* e : {&proof.pi_v, &proof.pi_w, &proof.pi_k, &proof.pi_h}) {
    if (e->field() != vk.field) throw SnarkError("proof element from another group");
  }

  // Every public wire costs a fixed number of group operations; nothing here
  // depends on the gate count.
  auto full = [&](const hh::Element& pi, const std::vector<hh::Element>& bases) {
    hh::Element acc = pi;
    for (std::size_t i = 0; i < values.size(); ++i) {
      acc = hh::combine(acc, hh::scale(bases[i], values[i]));
    }
    return acc;
  };
  const hh::Element v = full(proof.pi_v, vk.v);
  const hh::Element w = full(proof.pi_w, vk.w);
  const hh::Element k = full(proof.pi_k, vk.k);
  return hh::pair(v, w) == hh::combine(hh::pair(proof.pi_h, vk.z_at_s), hh::pair(k, vk.one));
}

}  // namespace zkdesk
