#pragma once

// Decentralized anonymous payments: addresses, coins, commitments, serial
// numbers, a commitment Merkle tree, MINT and POUR transactions, and the
// verify/receive side of the ledger. All primitives are instantiated with the
// MiMC sponge and the demonstration group; none of it is secure.

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "zkdesk/mimc.hpp"
#include "zkdesk/qap.hpp"
#include "zkdesk/snark.hpp"

namespace zkdesk::dap {

/// 2^254 - 245, the largest prime below 2^254 with p = 2 (mod 3), so that the
/// MiMC cube is a permutation.
inline constexpr std::string_view kLedgerModulus =
    "28948022309329048855892746252171976963317496166410141009864396001978282409739";

class LedgerError : public Error {
 public:
  using Error::Error;
};

struct DapParams {
  Mimc mimc;
  unsigned depth = 4;
  mpz_class v_max = mpz_class(1) << 32;

  Domain domain() const { return mimc.domain(); }
  /// Ledger field, depth 4, 11 rounds, v_max = 2^32.
  static DapParams standard(unsigned depth = 4);
  static DapParams with_field(Domain field, unsigned depth = 4);
};

struct PublicAddress {
  Scalar a_pk;
  hh::Element enc_pk;
  hh::Element sig_pk;
};

struct Address {
  Scalar a_sk;
  Scalar a_pk;
  Scalar enc_sk;
  hh::Element enc_pk;
  Scalar sig_sk;
  hh::Element sig_pk;

  PublicAddress public_part() const { return {a_pk, enc_pk, sig_pk}; }
};

/// Deterministic per seed; secrets are prf(seed, 1|2|3), a_pk = prf(a_sk, 0).
Address create_address(const DapParams& p, std::uint64_t seed);

struct Coin {
  Scalar v;
  Scalar rho;
  Scalar r;
  Scalar a_pk;
  Scalar cm;
};

struct Commitment {
  Scalar cm;
  Scalar k_inner;
};

/// k = H(a_pk, rho, r), cm = H(k, v). Throws LedgerError if v > v_max.
Commitment comm(const DapParams& p, const Scalar& a_pk, const Scalar& v, const Scalar& rho,
                const Scalar& r);

/// Serial number (nullifier) of a coin owned by a_sk.
inline Scalar serial_number(const DapParams& p, const Scalar& a_sk, const Scalar& rho) {
  return p.mimc.prf(a_sk, rho);
}

// --- hybrid encryption -------------------------------------------------------

struct CoinPlain {
  Scalar v;
  Scalar rho;
  Scalar r;
  bool operator==(const CoinPlain&) const = default;
};

struct Ciphertext {
  hh::Element ephemeral;
  std::array<Scalar, 3> body;
  Scalar tag;
};

/// Ephemeral-key encryption with a MAC tag; `ephemeral_secret` must be fresh.
Ciphertext encrypt_coin(const DapParams& p, const hh::Element& enc_pk, const CoinPlain& m,
                        const Scalar& ephemeral_secret);
/// nullopt when the tag does not verify (wrong key or tampered ciphertext).
std::optional<CoinPlain> try_decrypt(const DapParams& p, const Scalar& enc_sk, const Ciphertext& ct);

// --- signatures --------------------------------------------------------------

struct Signature {
  hh::Element commitment;
  Scalar response;
};

/// Schnorr-style: R = E(k), e = H(R, msg...), s = k + e*sk with k derived
/// deterministically from (sk, msg).
Signature sign(const DapParams& p, const Scalar& sig_sk, std::span<const Scalar> msg);
bool check_sig(const DapParams& p, const hh::Element& sig_pk, std::span<const Scalar> msg,
               const Signature& sig);

// --- Merkle tree -------------------------------------------------------------

struct AuthPath {
  /// Sibling at each level, leaf level first.
  std::vector<Scalar> siblings;
  /// True when the node on the path is the right child at that level.
  std::vector<bool> is_right;
};

/// Append-only binary tree of fixed depth; empty leaves are 0 and
/// parent = H(left, right).
class MerkleTree {
 public:
  MerkleTree(const Mimc& mimc, unsigned depth);

  unsigned depth() const { return depth_; }
  std::size_t capacity() const { return std::size_t{1} << depth_; }
  std::size_t size() const { return levels_[0].size(); }
  const std::vector<Scalar>& leaves() const { return levels_[0]; }
  Scalar root() const;

  /// Throws LedgerError when full.
  std::size_t append(const Scalar& leaf);
  /// Throws LedgerError on an index past the last leaf.
  AuthPath path(std::size_t index) const;
  std::optional<std::size_t> find(const Scalar& leaf) const;

 private:
  Scalar node(unsigned level, std::size_t index) const;

  Mimc mimc_;
  unsigned depth_;
  /// levels_[h] holds the filled prefix of level h; empty_[h] the value of an
  /// empty subtree of height h.
  std::vector<std::vector<Scalar>> levels_;
  std::vector<Scalar> empty_;
};

bool merkle_check(const Mimc& mimc, const Scalar& root, const Scalar& leaf, const AuthPath& path);

// --- transactions ------------------------------------------------------------

struct MintTx {
  Scalar cm;
  Scalar v;
  Scalar k;
  hh::Element sig_pk;
  Signature sig;
};

struct PourTx {
  Scalar rt;
  std::array<Scalar, 2> sn_old;
  std::array<Scalar, 2> cm_new;
  Proof proof;
  std::array<Ciphertext, 2> ciphertexts;
  hh::Element sig_pk;
  Signature sig;
};

using Transaction = std::variant<MintTx, PourTx>;

/// Scalars covered by a transaction's signature (everything but the signature).
std::vector<Scalar> signed_message(const MintTx& tx);
std::vector<Scalar> signed_message(const PourTx& tx);

class LedgerState {
 public:
  explicit LedgerState(const DapParams& p);

  const MerkleTree& tree() const { return tree_; }
  Scalar root() const { return tree_.root(); }
  bool has_root(const Scalar& rt) const;
  bool has_serial(const Scalar& sn) const;
  const std::vector<Scalar>& roots() const { return roots_; }
  const std::vector<Scalar>& serials() const { return serials_; }
  const std::vector<Transaction>& txs() const { return txs_; }

  /// State transitions; used by verify_tx and when loading a saved ledger.
  std::size_t append_commitment(const Scalar& cm);
  void add_serial(const Scalar& sn);
  void record(Transaction tx) { txs_.push_back(std::move(tx)); }

 private:
  MerkleTree tree_;
  std::vector<Scalar> roots_;
  std::set<mpz_class> root_index_;
  std::vector<Scalar> serials_;
  std::set<mpz_class> serial_index_;
  std::vector<Transaction> txs_;
};

// --- pour circuit ------------------------------------------------------------

struct OldCoinSecret {
  Scalar a_sk;
  Scalar v;
  Scalar rho;
  Scalar r;
  AuthPath path;
};

struct NewCoinSecret {
  Scalar a_pk;
  Scalar v;
  Scalar rho;
  Scalar r;
};

/// Public statement of a pour.
struct PourStatement {
  Scalar rt;
  std::array<Scalar, 2> sn_old;
  std::array<Scalar, 2> cm_new;
};

struct PourWitnessInput {
  PourStatement statement;
  std::array<OldCoinSecret, 2> old_coins;
  std::array<NewCoinSecret, 2> new_coins;
};

/// Wire indices of the public statement, in public-wire order after `one`.
struct PourLayout {
  std::size_t rt = 0;
  std::array<std::size_t, 2> sn_old{};
  std::array<std::size_t, 2> cm_new{};
};

struct PourCircuit {
  ConstraintSystem cs;
  PourLayout layout;
  WitnessVector witness;
};

/// Hand-built constraints for the pour statement. Without an input the wires
/// hold zeros (the constraint rows never depend on values).
PourCircuit build_pour_circuit(const DapParams& p,
                               const std::optional<PourWitnessInput>& input = std::nullopt);

std::map<std::size_t, Scalar> pour_public_inputs(const PourLayout& layout,
                                                 const PourStatement& statement);

/// Public parameters: the pour circuit's QAP and its keys.
struct Ppar {
  Qap qap;
  PourLayout layout;
  KeyPair keys;
};

/// System setup for the pour circuit.
Ppar system_setup(const DapParams& p, std::uint64_t seed);
/// Rebuilds the pour circuit's QAP and layout (deterministic).
std::pair<Qap, PourLayout> pour_qap(const DapParams& p);

// --- lifecycle ---------------------------------------------------------------

struct MintResult {
  Coin coin;
  MintTx tx;
};

/// Samples rho and r from the seed and signs the MINT transaction with the
/// address key. The commitment enters the tree when verify_tx accepts the
/// transaction. Throws LedgerError if v > v_max or the tree is full.
MintResult mint(const DapParams& p, const LedgerState& ledger, const Address& addr,
                const Scalar& v, std::uint64_t seed);

struct OldInput {
  Coin coin;
  Address owner;
};

struct PourOutput {
  PublicAddress to;
  Scalar v;
};

struct PourResult {
  PourTx tx;
  std::array<Coin, 2> new_coins;
};

/// Builds and proves a 2-in/2-out pour against the current root. Throws
/// LedgerError (coin not in tree, already spent, same coin twice, value out of
/// range) or UnsatisfiedWitness (e.g. values not conserved, wrong owner).
PourResult pour(const DapParams& p, const LedgerState& ledger, const std::array<OldInput, 2>& old,
                const std::array<PourOutput, 2>& outputs, const ProvingKey& pk, const Qap& pour_qap,
                std::uint64_t seed);

/// Checks a transaction against the ledger and, when it is valid, applies it.
/// Never throws for invalid transactions.
bool verify_tx(const DapParams& p, LedgerState& ledger, const Transaction& tx,
               const VerifyingKey& vk);

/// Unspent coins paid to `addr` by POUR transactions on the ledger.
std::vector<Coin> receive(const DapParams& p, const LedgerState& ledger, const Address& addr);

}  // namespace zkdesk::dap
