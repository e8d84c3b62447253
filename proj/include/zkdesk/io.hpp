#pragma once

// JSON file formats. Scalars are decimal strings ("num/den" in rational mode);
// every file carries a "field" key holding the modulus or "rational".

#include <filesystem>
#include <string>

#include <json.hpp>

#include "zkdesk/dap.hpp"
#include "zkdesk/frontend.hpp"
#include "zkdesk/qap.hpp"
#include "zkdesk/r1cs.hpp"
#include "zkdesk/snark.hpp"

namespace zkdesk::io {

using nlohmann::json;

inline constexpr const char* kInsecureHeader = "insecure-demo";
inline constexpr const char* kSecretHeader = "SECRET-DEMO-ONLY";

class IoError : public Error {
 public:
  using Error::Error;
};

json read_json(const std::filesystem::path& path);
/// Pretty-printed, trailing newline; byte-stable for equal values.
void write_json(const std::filesystem::path& path, const json& j);

json domain_to_json(Domain d);
Domain domain_from_json(const json& j);

json scalar_to_json(const Scalar& x);
Scalar scalar_from_json(Domain d, const json& j);
json scalars_to_json(const std::vector<Scalar>& xs);
json poly_to_json(const Poly& p);
Poly poly_from_json(Domain d, const json& j);

json to_json(const FlatProgram& fp);
FlatProgram program_from_json(const json& j);

/// Dense rows, as in the printed matrices.
json to_json(const ConstraintSystem& cs);
ConstraintSystem r1cs_from_json(const json& j);

json to_json(const WitnessVector& t, Domain d);
WitnessVector witness_from_json(const json& j, Domain d);

json to_json(const Qap& q);
Qap qap_from_json(const json& j);

json to_json(const ProvingKey& pk);
ProvingKey proving_key_from_json(const json& j);
json to_json(const VerifyingKey& vk);
VerifyingKey verifying_key_from_json(const json& j);
json to_json(const Proof& proof, const PrimeField* field);
Proof proof_from_json(const json& j);

// --- ledger ------------------------------------------------------------------

json params_to_json(const dap::DapParams& p);
dap::DapParams params_from_json(const json& j);

json to_json(const dap::Transaction& tx);
dap::Transaction transaction_from_json(const dap::DapParams& p, const json& j);

/// {"depth", "field", "leaves", "serials", "roots", "txs"}
json to_json(const dap::DapParams& p, const dap::LedgerState& ledger);
/// Rebuilds the tree from the leaves and checks the stored roots against it.
dap::LedgerState ledger_from_json(const dap::DapParams& p, const json& j);

json to_json(const dap::Address& a, const dap::DapParams& p);
dap::Address address_from_json(const dap::DapParams& p, const json& j);
json to_json(const dap::PublicAddress& a, const dap::DapParams& p);
dap::PublicAddress public_address_from_json(const dap::DapParams& p, const json& j);

/// A coin together with its owner's secrets, enough to spend it.
json coin_file(const dap::DapParams& p, const dap::Coin& c, const dap::Address& owner);
dap::OldInput coin_from_file(const dap::DapParams& p, const json& j);

}  // namespace zkdesk::io
