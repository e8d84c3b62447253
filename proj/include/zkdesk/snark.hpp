#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "zkdesk/qap.hpp"
#include "zkdesk/scalar.hpp"

namespace zkdesk {

// ---------------------------------------------------------------------------
// Homomorphic hiding with a pairing contract.
//
// INSECURE DEMONSTRATION GROUP. An element of G is g^a for a group of prime
// order p, stored as the exponent a itself; GT likewise. Discrete log is
// trivial, so nothing here hides anything. The API exposes only the group
// operations (encode, combine, scale, pair, equality, serialize) so protocol
// code is written exactly as it would be against a real pairing group.
// ---------------------------------------------------------------------------
namespace hh {

class TargetElement;

class Element {
 public:
  /// Identity of G over the default field.
  Element() : exp_(Scalar::zero(Domain::default_field())) {}
  /// Identity of G over `field`.
  static Element identity(const PrimeField* field);
  static Element generator(const PrimeField* field);

  const PrimeField* field() const { return exp_.domain().field; }
  bool operator==(const Element& o) const { return exp_ == o.exp_; }

  /// Decimal exponent string (the demo group's wire format).
  std::string serialize() const { return exp_.to_string(); }
  static Element deserialize(const PrimeField* field, const std::string& text);

 private:
  explicit Element(Scalar e) : exp_(std::move(e)) {}
  Scalar exp_;

  friend Element encode(const Scalar& x);
  friend Element combine(const Element& a, const Element& b);
  friend Element scale(const Element& a, const Scalar& c);
  friend TargetElement pair(const Element& a, const Element& b);
};

class TargetElement {
 public:
  TargetElement() : exp_(Scalar::zero(Domain::default_field())) {}
  bool operator==(const TargetElement& o) const { return exp_ == o.exp_; }
  std::string serialize() const { return exp_.to_string(); }

 private:
  explicit TargetElement(Scalar e) : exp_(std::move(e)) {}
  Scalar exp_;

  friend TargetElement encode_target(const Scalar& x);
  friend TargetElement combine(const TargetElement& a, const TargetElement& b);
  friend TargetElement scale(const TargetElement& a, const Scalar& c);
  friend TargetElement pair(const Element& a, const Element& b);
};

/// E(x) = g^x. Throws ModeMismatch for rational scalars.
Element encode(const Scalar& x);
TargetElement encode_target(const Scalar& x);
/// E(a), E(b) -> E(a + b)
Element combine(const Element& a, const Element& b);
TargetElement combine(const TargetElement& a, const TargetElement& b);
/// E(a), c -> E(a * c)
Element scale(const Element& a, const Scalar& c);
TargetElement scale(const TargetElement& a, const Scalar& c);
/// E(a), E(b) -> ET(a * b). Throws ModeMismatch across fields.
TargetElement pair(const Element& a, const Element& b);

/// Group operations (combine, scale, pair) performed by this thread.
std::uint64_t op_count();
void reset_op_count();

}  // namespace hh

// ---------------------------------------------------------------------------
// KeyGen / Prove / Verify
// ---------------------------------------------------------------------------

class SnarkError : public Error {
 public:
  using Error::Error;
};

class UnsatisfiedWitness : public Error {
 public:
  using Error::Error;
};

struct SnarkParams {
  /// Security parameter in bits; informational for the demo group.
  unsigned lambda = 128;
  std::uint64_t seed = 0;
};

struct ProvingKey {
  std::string digest;
  const PrimeField* field = nullptr;
  /// E(s^0) .. E(s^d)
  std::vector<hh::Element> powers;
  std::vector<std::size_t> private_wires;
  /// E(v_j(s)), E(w_j(s)), E(k_j(s)) for each private wire, same order.
  std::vector<hh::Element> v;
  std::vector<hh::Element> w;
  std::vector<hh::Element> k;
};

struct VerifyingKey {
  std::string digest;
  const PrimeField* field = nullptr;
  hh::Element one;
  hh::Element z_at_s;
  std::vector<std::size_t> public_wires;
  std::vector<std::string> public_names;
  std::vector<hh::Element> v;
  std::vector<hh::Element> w;
  std::vector<hh::Element> k;
};

/// Four group elements whatever the circuit size.
struct Proof {
  std::string digest;
  hh::Element pi_v;
  hh::Element pi_w;
  hh::Element pi_k;
  hh::Element pi_h;
};

struct KeyPair {
  ProvingKey pk;
  VerifyingKey vk;
};

/// Stable fingerprint of a QAP (field, shape and every coefficient).
std::string circuit_digest(const Qap& q);

/// Number of encrypted powers a QAP needs: deg Z + max(deg(V*W) - deg Z, 0) + 1.
std::size_t power_count(const Qap& q);

/// Samples the secret evaluation point from params.seed, emits the keys and
/// forgets the point. Throws ModeMismatch for rational-mode QAPs.
KeyPair setup(const Qap& q, const SnarkParams& params);

/// Throws UnsatisfiedWitness if T is not divisible by Z, SnarkError if the
/// QAP does not match the key.
Proof prove(const ProvingKey& pk, const Qap& q, const WitnessVector& t);

/// Accepts iff V(s)W(s) - K(s) = H(s)Z(s) with the public wires filled in from
/// `public_inputs`. Throws SnarkError if the inputs do not cover exactly the
/// key's public wires, if `one` is not 1, or on a digest mismatch.
bool verify(const VerifyingKey& vk, const std::map<std::size_t, Scalar>& public_inputs,
            const Proof& proof);

}  // namespace zkdesk
