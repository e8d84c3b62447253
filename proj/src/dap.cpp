#include "zkdesk/dap.hpp"

#include "zkdesk/rng.hpp"

namespace zkdesk::dap {

namespace {

Scalar element_scalar(const DapParams& p, const hh::Element& e) {
  return Scalar::parse(p.domain(), e.serialize());
}

void check_value(const DapParams& p, const Scalar& v) {
  if (v.is_rational() || v.domain() != p.domain()) throw LedgerError("coin value in the wrong field");
  if (v.field_value() > p.v_max) {
    throw LedgerError("coin value " + v.to_string() + " exceeds v_max " + p.v_max.get_str());
  }
}

}  // namespace

DapParams DapParams::standard(unsigned depth) {
  return with_field(Domain::of(PrimeField::get(kLedgerModulus)), depth);
}

DapParams DapParams::with_field(Domain field, unsigned depth) {
  if (depth == 0 || depth > 32) throw LedgerError("Merkle depth must be in 1..32");
  return DapParams{Mimc(field), depth};
}

Address create_address(const DapParams& p, std::uint64_t seed) {
  const Domain d = p.domain();
  const Scalar s(d, mpz_class(std::to_string(seed)));
  Address a;
  a.a_sk = p.mimc.prf(s, Scalar(d, 1));
  a.enc_sk = p.mimc.prf(s, Scalar(d, 2));
  a.sig_sk = p.mimc.prf(s, Scalar(d, 3));
  a.a_pk = p.mimc.prf(a.a_sk, Scalar::zero(d));
  a.enc_pk = hh::encode(a.enc_sk);
  a.sig_pk = hh::encode(a.sig_sk);
  return a;
}

Commitment comm(const DapParams& p, const Scalar& a_pk, const Scalar& v, const Scalar& rho,
                const Scalar& r) {
  check_value(p, v);
  Scalar k = p.mimc.hash({a_pk, rho, r});
  Scalar cm = p.mimc.hash({k, v});
  return {std::move(cm), std::move(k)};
}

// --- encryption --------------------------------------------------------------

namespace {

struct StreamKey {
  Scalar key;

  Scalar pad(const DapParams& p, long i) const { return p.mimc.hash({key, Scalar(p.domain(), i)}); }
  Scalar tag(const DapParams& p, const std::array<Scalar, 3>& body) const {
    return p.mimc.hash({key, body[0], body[1], body[2]});
  }
};

StreamKey derive_key(const DapParams& p, const hh::Element& shared) {
  return {p.mimc.hash({element_scalar(p, shared)})};
}

}  // namespace

Ciphertext encrypt_coin(const DapParams& p, const hh::Element& enc_pk, const CoinPlain& m,
                        const Scalar& ephemeral_secret) {
  const StreamKey key = derive_key(p, hh::scale(enc_pk, ephemeral_secret));
  Ciphertext ct;
  ct.ephemeral = hh::encode(ephemeral_secret);
  const std::array<const Scalar*, 3> words{&m.v, &m.rho, &m.r};
  for (std::size_t i = 0; i < 3; ++i) ct.body[i] = *words[i] + key.pad(p, static_cast<long>(i + 1));
  ct.tag = key.tag(p, ct.body);
  return ct;
}

std::optional<CoinPlain> try_decrypt(const DapParams& p, const Scalar& enc_sk, const Ciphertext& ct) {
  if (ct.ephemeral.field() != p.domain().field) return std::nullopt;
  const StreamKey key = derive_key(p, hh::scale(ct.ephemeral, enc_sk));
  if (!(key.tag(p, ct.body) == ct.tag)) return std::nullopt;
  return CoinPlain{ct.body[0] - key.pad(p, 1), ct.body[1] - key.pad(p, 2),
                   ct.body[2] - key.pad(p, 3)};
}

// --- signatures --------------------------------------------------------------

namespace {

Scalar challenge(const DapParams& p, const hh::Element& commitment, std::span<const Scalar> msg) {
  std::vector<Scalar> in;
  in.reserve(msg.size() + 1);
  in.push_back(element_scalar(p, commitment));
  in.insert(in.end(), msg.begin(), msg.end());
  return p.mimc.hash(in);
}

}  // namespace

Signature sign(const DapParams& p, const Scalar& sig_sk, std::span<const Scalar> msg) {
  const Scalar digest = msg.empty() ? Scalar::zero(p.domain()) : p.mimc.hash(msg);
  Scalar nonce = p.mimc.prf(sig_sk, digest);
  if (nonce.is_zero()) nonce = Scalar::one(p.domain());
  Signature sig;
  sig.commitment = hh::encode(nonce);
  sig.response = nonce + challenge(p, sig.commitment, msg) * sig_sk;
  return sig;
}

bool check_sig(const DapParams& p, const hh::Element& sig_pk, std::span<const Scalar> msg,
               const Signature& sig) {
  if (sig_pk.field() != p.domain().field || sig.commitment.field() != p.domain().field ||
      sig.response.domain() != p.domain()) {
    return false;
  }
  const Scalar e = challenge(p, sig.commitment, msg);
  return hh::encode(sig.response) == hh::combine(sig.commitment, hh::scale(sig_pk, e));
}

// --- Merkle tree -------------------------------------------------------------

MerkleTree::MerkleTree(const Mimc& mimc, unsigned depth)
    : mimc_(mimc), depth_(depth), levels_(depth + 1) {
  empty_.push_back(Scalar::zero(mimc.domain()));
  for (unsigned h = 0; h < depth; ++h) empty_.push_back(mimc_.hash({empty_[h], empty_[h]}));
}

Scalar MerkleTree::node(unsigned level, std::size_t index) const {
  const auto& row = levels_[level];
  return index < row.size() ? row[index] : empty_[level];
}

Scalar MerkleTree::root() const { return node(depth_, 0); }

std::size_t MerkleTree::append(const Scalar& leaf) {
  if (size() >= capacity()) throw LedgerError("commitment tree is full");
  std::size_t index = levels_[0].size();
  levels_[0].push_back(leaf);
  std::size_t i = index;
  for (unsigned h = 0; h < depth_; ++h) {
    const std::size_t parent = i / 2;
    const std::size_t left = parent * 2;
    Scalar value = mimc_.hash({node(h, left), node(h, left + 1)});
    auto& up = levels_[h + 1];
    if (parent < up.size()) {
      up[parent] = std::move(value);
    } else {
      up.push_back(std::move(value));
    }
    i = parent;
  }
  return index;
}

AuthPath MerkleTree::path(std::size_t index) const {
  if (index >= size()) throw LedgerError("no leaf at index " + std::to_string(index));
  AuthPath out;
  std::size_t i = index;
  for (unsigned h = 0; h < depth_; ++h) {
    out.siblings.push_back(node(h, i ^ 1));
    out.is_right.push_back(i & 1);
    i /= 2;
  }
  return out;
}

std::optional<std::size_t> MerkleTree::find(const Scalar& leaf) const {
  const auto& row = levels_[0];
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] == leaf) return i;
  }
  return std::nullopt;
}

bool merkle_check(const Mimc& mimc, const Scalar& root, const Scalar& leaf, const AuthPath& path) {
  if (path.siblings.size() != path.is_right.size()) return false;
  Scalar cur = leaf;
  for (std::size_t h = 0; h < path.siblings.size(); ++h) {
    cur = path.is_right[h] ? mimc.hash({path.siblings[h], cur}) : mimc.hash({cur, path.siblings[h]});
  }
  return cur == root;
}

// --- ledger ------------------------------------------------------------------

LedgerState::LedgerState(const DapParams& p) : tree_(p.mimc, p.depth) {
  roots_.push_back(tree_.root());
  root_index_.insert(tree_.root().field_value());
}

bool LedgerState::has_root(const Scalar& rt) const {
  return !rt.is_rational() && root_index_.count(rt.field_value()) > 0;
}

bool LedgerState::has_serial(const Scalar& sn) const {
  return !sn.is_rational() && serial_index_.count(sn.field_value()) > 0;
}

std::size_t LedgerState::append_commitment(const Scalar& cm) {
  std::size_t i = tree_.append(cm);
  const Scalar rt = tree_.root();
  roots_.push_back(rt);
  root_index_.insert(rt.field_value());
  return i;
}

void LedgerState::add_serial(const Scalar& sn) {
  if (!serial_index_.insert(sn.field_value()).second) {
    throw LedgerError("serial number already spent: " + sn.to_string());
  }
  serials_.push_back(sn);
}

std::vector<Scalar> signed_message(const MintTx& tx) { return {tx.cm, tx.v, tx.k}; }

std::vector<Scalar> signed_message(const PourTx& tx) {
  const Domain d = tx.rt.domain();
  auto as_scalar = [&](const hh::Element& e) { return Scalar::parse(d, e.serialize()); };
  std::vector<Scalar> m{tx.rt, tx.sn_old[0], tx.sn_old[1], tx.cm_new[0], tx.cm_new[1]};
  for (const auto* e : {&tx.proof.pi_v, &tx.proof.pi_w, &tx.proof.pi_k, &tx.proof.pi_h}) {
    m.push_back(as_scalar(*e));
  }
  for (const auto& ct : tx.ciphertexts) {
    m.push_back(as_scalar(ct.ephemeral));
    m.insert(m.end(), ct.body.begin(), ct.body.end());
    m.push_back(ct.tag);
  }
  m.push_back(as_scalar(tx.sig_pk));
  return m;
}

// --- pour circuit ------------------------------------------------------------

namespace {

PourWitnessInput zero_input(const DapParams& p) {
  const Scalar z = Scalar::zero(p.domain());
  AuthPath path{std::vector<Scalar>(p.depth, z), std::vector<bool>(p.depth, false)};
  OldCoinSecret old{z, z, z, z, path};
  NewCoinSecret fresh{z, z, z, z};
  return {PourStatement{z, {z, z}, {z, z}}, {old, old}, {fresh, fresh}};
}

}  // namespace

PourCircuit build_pour_circuit(const DapParams& p, const std::optional<PourWitnessInput>& input) {
  const PourWitnessInput in = input ? *input : zero_input(p);
  const Mimc& h = p.mimc;
  R1csBuilder b(p.domain());

  PourLayout layout;
  layout.rt = b.public_input("rt", in.statement.rt);
  for (int i = 0; i < 2; ++i) {
    layout.sn_old[i] = b.public_input("sn_old_" + std::to_string(i + 1), in.statement.sn_old[i]);
  }
  for (int j = 0; j < 2; ++j) {
    layout.cm_new[j] = b.public_input("cm_new_" + std::to_string(j + 1), in.statement.cm_new[j]);
  }

  const LinearCombination one = b.constant(1);
  std::array<LinearCombination, 2> v_old;
  for (int i = 0; i < 2; ++i) {
    const auto& c = in.old_coins[i];
    if (c.path.siblings.size() != p.depth || c.path.is_right.size() != p.depth) {
      throw LedgerError("authentication path depth does not match the tree");
    }
    const std::string tag = "old" + std::to_string(i + 1) + ".";
    const auto a_sk = b.lc(b.private_input(tag + "a_sk", c.a_sk));
    const auto v = b.lc(b.private_input(tag + "v", c.v));
    const auto rho = b.lc(b.private_input(tag + "rho", c.rho));
    const auto r = b.lc(b.private_input(tag + "r", c.r));
    v_old[i] = v;

    const auto a_pk = b.lc(h.hash_gadget(b, {a_sk, b.constant(0)}));
    const auto k = b.lc(h.hash_gadget(b, {a_pk, rho, r}));
    LinearCombination cur = b.lc(h.hash_gadget(b, {k, v}));

    for (unsigned level = 0; level < p.depth; ++level) {
      const std::string lt = tag + "path" + std::to_string(level) + ".";
      const auto bit = b.lc(b.private_input(
          lt + "bit", c.path.is_right[level] ? Scalar::one(p.domain()) : Scalar::zero(p.domain())));
      const auto sib = b.lc(b.private_input(lt + "sibling", c.path.siblings[level]));
      b.constrain(bit, one - bit, {});
      // d = bit * (sib - cur); (left, right) = (cur + d, sib - d)
      const auto d = b.lc(b.mul(bit, sib - cur, lt + "swap"));
      const LinearCombination left = cur + d;
      const LinearCombination right = sib - d;
      const bool top = level + 1 == p.depth;
      cur = b.lc(h.hash_gadget(b, {left, right}, top ? std::optional(layout.rt) : std::nullopt));
    }
    h.hash_gadget(b, {a_sk, rho}, layout.sn_old[i]);
  }

  std::array<LinearCombination, 2> v_new;
  for (int j = 0; j < 2; ++j) {
    const auto& c = in.new_coins[j];
    const std::string tag = "new" + std::to_string(j + 1) + ".";
    const auto a_pk = b.lc(b.private_input(tag + "a_pk", c.a_pk));
    const auto v = b.lc(b.private_input(tag + "v", c.v));
    const auto rho = b.lc(b.private_input(tag + "rho", c.rho));
    const auto r = b.lc(b.private_input(tag + "r", c.r));
    v_new[j] = v;
    const auto k = b.lc(h.hash_gadget(b, {a_pk, rho, r}));
    h.hash_gadget(b, {k, v}, layout.cm_new[j]);
  }

  // v_old_1 + v_old_2 - v_new_1 - v_new_2 = 0
  b.constrain(v_old[0] + v_old[1] - v_new[0] - v_new[1], one, {});

  return {b.system(), layout, b.witness()};
}

std::map<std::size_t, Scalar> pour_public_inputs(const PourLayout& layout,
                                                 const PourStatement& statement) {
  std::map<std::size_t, Scalar> m;
  m.emplace(0, Scalar::one(statement.rt.domain()));
  m.emplace(layout.rt, statement.rt);
  for (int i = 0; i < 2; ++i) m.emplace(layout.sn_old[i], statement.sn_old[i]);
  for (int j = 0; j < 2; ++j) m.emplace(layout.cm_new[j], statement.cm_new[j]);
  return m;
}

std::pair<Qap, PourLayout> pour_qap(const DapParams& p) {
  PourCircuit c = build_pour_circuit(p);
  return {r1cs_to_qap(c.cs), c.layout};
}

Ppar system_setup(const DapParams& p, std::uint64_t seed) {
  auto [qap, layout] = pour_qap(p);
  KeyPair keys = setup(qap, SnarkParams{128, seed});
  return {std::move(qap), layout, std::move(keys)};
}

// --- lifecycle ---------------------------------------------------------------

MintResult mint(const DapParams& p, const LedgerState& ledger, const Address& addr,
                const Scalar& v, std::uint64_t seed) {
  check_value(p, v);
  if (ledger.tree().size() >= ledger.tree().capacity()) throw LedgerError("commitment tree is full");
  SeededRng rng(seed, "mint");
  Coin coin;
  coin.v = v;
  coin.rho = rng.next_scalar(p.domain());
  coin.r = rng.next_scalar(p.domain());
  coin.a_pk = addr.a_pk;
  const Commitment c = comm(p, coin.a_pk, v, coin.rho, coin.r);
  coin.cm = c.cm;

  MintTx tx;
  tx.cm = c.cm;
  tx.v = v;
  tx.k = c.k_inner;
  tx.sig_pk = addr.sig_pk;
  tx.sig = sign(p, addr.sig_sk, signed_message(tx));
  return {std::move(coin), std::move(tx)};
}

PourResult pour(const DapParams& p, const LedgerState& ledger, const std::array<OldInput, 2>& old,
                const std::array<PourOutput, 2>& outputs, const ProvingKey& pk, const Qap& pour_qap,
                std::uint64_t seed) {
  const Domain d = p.domain();
  SeededRng rng(seed, "pour");

  PourWitnessInput in;
  in.statement.rt = ledger.root();
  for (int i = 0; i < 2; ++i) {
    const auto& [coin, owner] = old[i];
    auto index = ledger.tree().find(coin.cm);
    if (!index) throw LedgerError("old coin " + std::to_string(i + 1) + " is not in the tree");
    const Scalar sn = serial_number(p, owner.a_sk, coin.rho);
    if (ledger.has_serial(sn)) throw LedgerError("old coin " + std::to_string(i + 1) + " is already spent");
    in.statement.sn_old[i] = sn;
    in.old_coins[i] = OldCoinSecret{owner.a_sk, coin.v, coin.rho, coin.r, ledger.tree().path(*index)};
  }
  if (in.statement.sn_old[0] == in.statement.sn_old[1]) {
    throw LedgerError("the same coin cannot be poured twice in one transaction");
  }

  PourResult result;
  for (int j = 0; j < 2; ++j) {
    const auto& out = outputs[j];
    Coin c;
    c.v = out.v;
    c.rho = rng.next_scalar(d);
    c.r = rng.next_scalar(d);
    c.a_pk = out.to.a_pk;
    c.cm = comm(p, c.a_pk, c.v, c.rho, c.r).cm;
    in.new_coins[j] = NewCoinSecret{c.a_pk, c.v, c.rho, c.r};
    in.statement.cm_new[j] = c.cm;
    result.new_coins[j] = std::move(c);
  }

  const PourCircuit circuit = build_pour_circuit(p, in);
  PourTx& tx = result.tx;
  tx.proof = prove(pk, pour_qap, circuit.witness);
  tx.rt = in.statement.rt;
  tx.sn_old = in.statement.sn_old;
  tx.cm_new = in.statement.cm_new;
  for (int j = 0; j < 2; ++j) {
    const Coin& c = result.new_coins[j];
    tx.ciphertexts[j] =
        encrypt_coin(p, outputs[j].to.enc_pk, CoinPlain{c.v, c.rho, c.r}, rng.next_nonzero_scalar(d));
  }
  const Scalar sig_sk = rng.next_nonzero_scalar(d);
  tx.sig_pk = hh::encode(sig_sk);
  tx.sig = sign(p, sig_sk, signed_message(tx));
  return result;
}

namespace {

bool in_domain(const DapParams& p, std::initializer_list<const Scalar*> xs) {
  for (const auto* x : xs) {
    if (x->domain() != p.domain()) return false;
  }
  return true;
}

bool verify_mint(const DapParams& p, LedgerState& ledger, const MintTx& tx) {
  if (!in_domain(p, {&tx.cm, &tx.v, &tx.k})) return false;
  if (tx.v.field_value() > p.v_max) return false;
  if (!(p.mimc.hash({tx.k, tx.v}) == tx.cm)) return false;
  if (!check_sig(p, tx.sig_pk, signed_message(tx), tx.sig)) return false;
  if (ledger.tree().size() >= ledger.tree().capacity()) return false;
  ledger.append_commitment(tx.cm);
  ledger.record(tx);
  return true;
}

bool verify_pour(const DapParams& p, LedgerState& ledger, const PourTx& tx, const VerifyingKey& vk) {
  if (!in_domain(p, {&tx.rt, &tx.sn_old[0], &tx.sn_old[1], &tx.cm_new[0], &tx.cm_new[1]})) {
    return false;
  }
  if (tx.sn_old[0] == tx.sn_old[1]) return false;
  if (ledger.has_serial(tx.sn_old[0]) || ledger.has_serial(tx.sn_old[1])) return false;
  if (!ledger.has_root(tx.rt)) return false;
  if (!check_sig(p, tx.sig_pk, signed_message(tx), tx.sig)) return false;
  if (ledger.tree().size() + 2 > ledger.tree().capacity()) return false;

  // Public wires are [one, rt, sn_old_1, sn_old_2, cm_new_1, cm_new_2].
  if (vk.public_wires.size() != 6) return false;
  PourLayout layout{vk.public_wires[1], {vk.public_wires[2], vk.public_wires[3]},
                    {vk.public_wires[4], vk.public_wires[5]}};
  try {
    if (!verify(vk, pour_public_inputs(layout, {tx.rt, tx.sn_old, tx.cm_new}), tx.proof)) {
      return false;
    }
  } catch (const Error&) {
    return false;
  }
  for (const auto& cm : tx.cm_new) ledger.append_commitment(cm);
  for (const auto& sn : tx.sn_old) ledger.add_serial(sn);
  ledger.record(tx);
  return true;
}

}  // namespace

bool verify_tx(const DapParams& p, LedgerState& ledger, const Transaction& tx,
               const VerifyingKey& vk) {
  if (const auto* m = std::get_if<MintTx>(&tx)) return verify_mint(p, ledger, *m);
  return verify_pour(p, ledger, std::get<PourTx>(tx), vk);
}

std::vector<Coin> receive(const DapParams& p, const LedgerState& ledger, const Address& addr) {
  std::vector<Coin> out;
  for (const auto& tx : ledger.txs()) {
    const auto* pour = std::get_if<PourTx>(&tx);
    if (!pour) continue;
    for (const auto& ct : pour->ciphertexts) {
      auto plain = try_decrypt(p, addr.enc_sk, ct);
      if (!plain) continue;
      Coin c{plain->v, plain->rho, plain->r, addr.a_pk, Scalar()};
      try {
        c.cm = comm(p, c.a_pk, c.v, c.rho, c.r).cm;
      } catch (const LedgerError&) {
        continue;
      }
      if (!ledger.tree().find(c.cm)) continue;
      if (ledger.has_serial(serial_number(p, addr.a_sk, c.rho))) continue;
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace zkdesk::dap
