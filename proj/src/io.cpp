#include "zkdesk/io.hpp"

#include <fstream>
#include <sstream>

namespace zkdesk::io {

namespace {

template <class F>
auto decode(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed ") + what + ": " + e.what());
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(std::string("invalid ") + what + ": " + e.what());
  }
}

const PrimeField* require_field(Domain d, const char* what) {
  if (d.is_rational()) throw FormatError(std::string(what) + " must be over a prime field");
  return d.field;
}

json lc_to_json(const LinearCombination& lc) {
  json j = json::object();
  for (const auto& [w, c] : lc) j[std::to_string(w)] = c.to_string();
  return j;
}

LinearCombination lc_from_json(Domain d, const json& j, std::size_t num_wires) {
  LinearCombination lc;
  for (const auto& [key, value] : j.items()) {
    std::size_t pos = 0;
    const unsigned long w = std::stoul(key, &pos);
    if (pos != key.size() || w >= num_wires) throw FormatError("bad wire index '" + key + "'");
    Scalar c = scalar_from_json(d, value);
    if (!c.is_zero()) lc.emplace(w, std::move(c));
  }
  return lc;
}

json scalars(const std::vector<Scalar>& xs) { return scalars_to_json(xs); }

std::vector<Scalar> scalars_from(Domain d, const json& j) {
  std::vector<Scalar> out;
  for (const auto& x : j) out.push_back(scalar_from_json(d, x));
  return out;
}

json polys(const std::vector<Poly>& ps) {
  json j = json::array();
  for (const auto& p : ps) j.push_back(poly_to_json(p));
  return j;
}

std::vector<Poly> polys_from(Domain d, const json& j) {
  std::vector<Poly> out;
  for (const auto& p : j) out.push_back(poly_from_json(d, p));
  return out;
}

json elements(const std::vector<hh::Element>& es) {
  json j = json::array();
  for (const auto& e : es) j.push_back(e.serialize());
  return j;
}

hh::Element element_from(const PrimeField* f, const json& j) {
  return hh::Element::deserialize(f, j.get<std::string>());
}

std::vector<hh::Element> elements_from(const PrimeField* f, const json& j) {
  std::vector<hh::Element> out;
  for (const auto& e : j) out.push_back(element_from(f, e));
  return out;
}

void check_header(const json& j, const char* expected) {
  if (!j.contains("header") || j.at("header") != expected) {
    throw FormatError(std::string("missing \"") + expected + "\" header");
  }
}

json sig_json(const dap::Signature& s) {
  return {{"R", s.commitment.serialize()}, {"s", s.response.to_string()}};
}

dap::Signature sig_from(const dap::DapParams& p, const json& j) {
  return {element_from(p.domain().field, j.at("R")), scalar_from_json(p.domain(), j.at("s"))};
}

}  // namespace

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path.string());
}

json domain_to_json(Domain d) {
  return d.is_rational() ? json("rational") : json(d.field->modulus_string());
}

Domain domain_from_json(const json& j) {
  return decode("field", [&] {
    const auto s = j.get<std::string>();
    return s == "rational" ? Domain::rational() : Domain::of(PrimeField::get(s));
  });
}

json scalar_to_json(const Scalar& x) { return x.to_string(); }

json scalars_to_json(const std::vector<Scalar>& xs) {
  json j = json::array();
  for (const auto& x : xs) j.push_back(x.to_string());
  return j;
}

Scalar scalar_from_json(Domain d, const json& j) {
  if (j.is_number_integer()) return Scalar(d, mpz_class(j.dump()));
  return Scalar::parse(d, j.get<std::string>());
}

json poly_to_json(const Poly& p) { return scalars(p.coeffs()); }

Poly poly_from_json(Domain d, const json& j) { return Poly(scalars_from(d, j)); }

// --- circuit -----------------------------------------------------------------

json to_json(const FlatProgram& fp) {
  json gates = json::array();
  for (const auto& g : fp.gates) {
    gates.push_back({{"kind", g.kind == Gate::Kind::Mul ? "mul" : "add"},
                     {"left", lc_to_json(g.left)},
                     {"right", lc_to_json(g.right)},
                     {"out", g.out}});
  }
  return {{"field", domain_to_json(fp.domain)},
          {"wires", fp.wires},
          {"public", fp.public_wires},
          {"gates", gates}};
}

FlatProgram program_from_json(const json& j) {
  return decode("circuit", [&] {
    FlatProgram fp;
    fp.domain = domain_from_json(j.at("field"));
    fp.wires = j.at("wires").get<std::vector<std::string>>();
    fp.public_wires = j.at("public").get<std::vector<std::size_t>>();
    const std::size_t n = fp.wires.size();
    if (n < 3 || fp.wires[0] != "one") throw FormatError("wire list must start with one, input, out");
    for (auto w : fp.public_wires) {
      if (w >= n) throw FormatError("public wire out of range");
    }
    for (const auto& g : j.at("gates")) {
      Gate gate;
      const auto kind = g.at("kind").get<std::string>();
      if (kind == "mul") {
        gate.kind = Gate::Kind::Mul;
      } else if (kind == "add") {
        gate.kind = Gate::Kind::Add;
      } else {
        throw FormatError("unknown gate kind '" + kind + "'");
      }
      gate.left = lc_from_json(fp.domain, g.at("left"), n);
      gate.right = lc_from_json(fp.domain, g.at("right"), n);
      gate.out = g.at("out").get<std::size_t>();
      if (gate.out >= n || gate.out == 0) throw FormatError("gate output wire out of range");
      fp.gates.push_back(std::move(gate));
    }
    if (fp.gates.empty()) throw FormatError("circuit has no gates");
    return fp;
  });
}

// --- r1cs / witness ----------------------------------------------------------

json to_json(const ConstraintSystem& cs) {
  json rows = json::array();
  for (const auto& r : cs.rows) {
    rows.push_back({{"v", scalars(dense(r.v, cs.num_wires, cs.domain))},
                    {"w", scalars(dense(r.w, cs.num_wires, cs.domain))},
                    {"k", scalars(dense(r.k, cs.num_wires, cs.domain))}});
  }
  return {{"field", domain_to_json(cs.domain)},
          {"num_wires", cs.num_wires},
          {"public", cs.public_wires},
          {"wires", cs.wire_names},
          {"rows", rows}};
}

ConstraintSystem r1cs_from_json(const json& j) {
  return decode("r1cs", [&] {
    ConstraintSystem cs;
    cs.domain = domain_from_json(j.at("field"));
    cs.num_wires = j.at("num_wires").get<std::size_t>();
    cs.public_wires = j.at("public").get<std::vector<std::size_t>>();
    if (j.contains("wires")) cs.wire_names = j.at("wires").get<std::vector<std::string>>();
    auto sparse = [&](const json& row) {
      auto xs = scalars_from(cs.domain, row);
      if (xs.size() != cs.num_wires) throw DimensionMismatch("row width differs from num_wires");
      LinearCombination lc;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!xs[i].is_zero()) lc.emplace(i, xs[i]);
      }
      return lc;
    };
    for (const auto& r : j.at("rows")) {
      cs.rows.push_back({sparse(r.at("v")), sparse(r.at("w")), sparse(r.at("k"))});
    }
    return cs;
  });
}

json to_json(const WitnessVector& t, Domain d) {
  return {{"field", domain_to_json(d)}, {"t", scalars(t.t)}};
}

WitnessVector witness_from_json(const json& j, Domain d) {
  return decode("witness", [&] {
    if (j.contains("field") && !(domain_from_json(j.at("field")) == d)) {
      throw ModeMismatch("witness field differs from the circuit field");
    }
    return WitnessVector{scalars_from(d, j.at("t"))};
  });
}

// --- qap ---------------------------------------------------------------------

json to_json(const Qap& q) {
  return {{"field", domain_to_json(q.domain)},
          {"num_gates", q.num_gates},
          {"num_wires", q.num_wires},
          {"public", q.public_wires},
          {"wires", q.wire_names},
          {"v_polys", polys(q.v_polys)},
          {"w_polys", polys(q.w_polys)},
          {"k_polys", polys(q.k_polys)},
          {"z", poly_to_json(q.z)}};
}

Qap qap_from_json(const json& j) {
  return decode("qap", [&] {
    Qap q;
    q.domain = domain_from_json(j.at("field"));
    q.num_gates = j.at("num_gates").get<std::size_t>();
    q.num_wires = j.at("num_wires").get<std::size_t>();
    q.public_wires = j.at("public").get<std::vector<std::size_t>>();
    if (j.contains("wires")) q.wire_names = j.at("wires").get<std::vector<std::string>>();
    q.v_polys = polys_from(q.domain, j.at("v_polys"));
    q.w_polys = polys_from(q.domain, j.at("w_polys"));
    q.k_polys = polys_from(q.domain, j.at("k_polys"));
    q.z = poly_from_json(q.domain, j.at("z"));
    for (const auto* g : {&q.v_polys, &q.w_polys, &q.k_polys}) {
      if (g->size() != q.num_wires) throw DimensionMismatch("polynomial count differs from num_wires");
    }
    return q;
  });
}

// --- keys and proofs ---------------------------------------------------------

json to_json(const ProvingKey& pk) {
  return {{"header", kInsecureHeader},
          {"field", pk.field->modulus_string()},
          {"digest", pk.digest},
          {"powers", elements(pk.powers)},
          {"private", pk.private_wires},
          {"v", elements(pk.v)},
          {"w", elements(pk.w)},
          {"k", elements(pk.k)}};
}

ProvingKey proving_key_from_json(const json& j) {
  return decode("proving key", [&] {
    check_header(j, kInsecureHeader);
    ProvingKey pk;
    pk.field = require_field(domain_from_json(j.at("field")), "proving key");
    pk.digest = j.at("digest").get<std::string>();
    pk.powers = elements_from(pk.field, j.at("powers"));
    pk.private_wires = j.at("private").get<std::vector<std::size_t>>();
    pk.v = elements_from(pk.field, j.at("v"));
    pk.w = elements_from(pk.field, j.at("w"));
    pk.k = elements_from(pk.field, j.at("k"));
    const auto n = pk.private_wires.size();
    if (pk.v.size() != n || pk.w.size() != n || pk.k.size() != n) {
      throw FormatError("proving key element counts differ");
    }
    return pk;
  });
}

json to_json(const VerifyingKey& vk) {
  return {{"header", kInsecureHeader},
          {"field", vk.field->modulus_string()},
          {"digest", vk.digest},
          {"one", vk.one.serialize()},
          {"z_at_s", vk.z_at_s.serialize()},
          {"public", vk.public_wires},
          {"public_names", vk.public_names},
          {"v", elements(vk.v)},
          {"w", elements(vk.w)},
          {"k", elements(vk.k)}};
}

VerifyingKey verifying_key_from_json(const json& j) {
  return decode("verifying key", [&] {
    check_header(j, kInsecureHeader);
    VerifyingKey vk;
    vk.field = require_field(domain_from_json(j.at("field")), "verifying key");
    vk.digest = j.at("digest").get<std::string>();
    vk.one = element_from(vk.field, j.at("one"));
    vk.z_at_s = element_from(vk.field, j.at("z_at_s"));
    vk.public_wires = j.at("public").get<std::vector<std::size_t>>();
    vk.public_names = j.at("public_names").get<std::vector<std::string>>();
    vk.v = elements_from(vk.field, j.at("v"));
    vk.w = elements_from(vk.field, j.at("w"));
    vk.k = elements_from(vk.field, j.at("k"));
    const auto n = vk.public_wires.size();
    if (vk.v.size() != n || vk.w.size() != n || vk.k.size() != n || vk.public_names.size() != n) {
      throw FormatError("verifying key element counts differ");
    }
    return vk;
  });
}

json to_json(const Proof& proof, const PrimeField* field) {
  return {{"header", kInsecureHeader},
          {"field", field->modulus_string()},
          {"digest", proof.digest},
          {"pi_v", proof.pi_v.serialize()},
          {"pi_w", proof.pi_w.serialize()},
          {"pi_k", proof.pi_k.serialize()},
          {"pi_h", proof.pi_h.serialize()}};
}

Proof proof_from_json(const json& j) {
  return decode("proof", [&] {
    check_header(j, kInsecureHeader);
    const PrimeField* f = require_field(domain_from_json(j.at("field")), "proof");
    return Proof{j.at("digest").get<std::string>(), element_from(f, j.at("pi_v")),
                 element_from(f, j.at("pi_w")), element_from(f, j.at("pi_k")),
                 element_from(f, j.at("pi_h"))};
  });
}

// --- ledger ------------------------------------------------------------------

json params_to_json(const dap::DapParams& p) {
  return {{"field", domain_to_json(p.domain())}, {"depth", p.depth}};
}

dap::DapParams params_from_json(const json& j) {
  return decode("ledger parameters", [&] {
    const Domain d = domain_from_json(j.at("field"));
    if (d.is_rational()) throw FormatError("ledger must be over a prime field");
    return dap::DapParams::with_field(d, j.at("depth").get<unsigned>());
  });
}

json to_json(const dap::Transaction& tx) {
  if (const auto* m = std::get_if<dap::MintTx>(&tx)) {
    return {{"type", "mint"},
            {"cm", m->cm.to_string()},
            {"v", m->v.to_string()},
            {"k", m->k.to_string()},
            {"sig_pk", m->sig_pk.serialize()},
            {"sig", sig_json(m->sig)}};
  }
  const auto& p = std::get<dap::PourTx>(tx);
  json cts = json::array();
  for (const auto& ct : p.ciphertexts) {
    cts.push_back({{"ephemeral", ct.ephemeral.serialize()},
                   {"body", scalars({ct.body.begin(), ct.body.end()})},
                   {"tag", ct.tag.to_string()}});
  }
  return {{"type", "pour"},
          {"rt", p.rt.to_string()},
          {"sn_old", scalars({p.sn_old.begin(), p.sn_old.end()})},
          {"cm_new", scalars({p.cm_new.begin(), p.cm_new.end()})},
          {"proof",
           {{"digest", p.proof.digest},
            {"pi_v", p.proof.pi_v.serialize()},
            {"pi_w", p.proof.pi_w.serialize()},
            {"pi_k", p.proof.pi_k.serialize()},
            {"pi_h", p.proof.pi_h.serialize()}}},
          {"ciphertexts", cts},
          {"sig_pk", p.sig_pk.serialize()},
          {"sig", sig_json(p.sig)}};
}

dap::Transaction transaction_from_json(const dap::DapParams& p, const json& j) {
  return decode("transaction", [&]() -> dap::Transaction {
    const Domain d = p.domain();
    const PrimeField* f = d.field;
    const auto type = j.at("type").get<std::string>();
    if (type == "mint") {
      return dap::MintTx{scalar_from_json(d, j.at("cm")), scalar_from_json(d, j.at("v")),
                         scalar_from_json(d, j.at("k")), element_from(f, j.at("sig_pk")),
                         sig_from(p, j.at("sig"))};
    }
    if (type != "pour") throw FormatError("unknown transaction type '" + type + "'");
    dap::PourTx tx;
    tx.rt = scalar_from_json(d, j.at("rt"));
    auto pair_of = [&](const json& a) {
      if (a.size() != 2) throw FormatError("expected two entries");
      return std::array<Scalar, 2>{scalar_from_json(d, a.at(0)), scalar_from_json(d, a.at(1))};
    };
    tx.sn_old = pair_of(j.at("sn_old"));
    tx.cm_new = pair_of(j.at("cm_new"));
    const json& pr = j.at("proof");
    tx.proof = Proof{pr.at("digest").get<std::string>(), element_from(f, pr.at("pi_v")),
                     element_from(f, pr.at("pi_w")), element_from(f, pr.at("pi_k")),
                     element_from(f, pr.at("pi_h"))};
    const json& cts = j.at("ciphertexts");
    if (cts.size() != 2) throw FormatError("expected two ciphertexts");
    for (std::size_t i = 0; i < 2; ++i) {
      const json& c = cts.at(i);
      auto& ct = tx.ciphertexts[i];
      ct.ephemeral = element_from(f, c.at("ephemeral"));
      const json& body = c.at("body");
      if (body.size() != 3) throw FormatError("ciphertext body must have three words");
      for (std::size_t k = 0; k < 3; ++k) ct.body[k] = scalar_from_json(d, body.at(k));
      ct.tag = scalar_from_json(d, c.at("tag"));
    }
    tx.sig_pk = element_from(f, j.at("sig_pk"));
    tx.sig = sig_from(p, j.at("sig"));
    return tx;
  });
}

json to_json(const dap::DapParams& p, const dap::LedgerState& ledger) {
  json txs = json::array();
  for (const auto& tx : ledger.txs()) txs.push_back(to_json(tx));
  return {{"field", domain_to_json(p.domain())},
          {"depth", p.depth},
          {"leaves", scalars(ledger.tree().leaves())},
          {"serials", scalars(ledger.serials())},
          {"roots", scalars(ledger.roots())},
          {"txs", txs}};
}

dap::LedgerState ledger_from_json(const dap::DapParams& p, const json& j) {
  return decode("ledger", [&] {
    if (j.at("depth").get<unsigned>() != p.depth) throw FormatError("ledger depth mismatch");
    dap::LedgerState ledger(p);
    for (const auto& cm : j.at("leaves")) ledger.append_commitment(scalar_from_json(p.domain(), cm));
    const auto roots = scalars_from(p.domain(), j.at("roots"));
    if (roots != ledger.roots()) throw FormatError("stored root history does not match the leaves");
    for (const auto& sn : j.at("serials")) ledger.add_serial(scalar_from_json(p.domain(), sn));
    for (const auto& tx : j.at("txs")) ledger.record(transaction_from_json(p, tx));
    return ledger;
  });
}

json to_json(const dap::Address& a, const dap::DapParams& p) {
  return {{"header", kSecretHeader},
          {"field", domain_to_json(p.domain())},
          {"a_sk", a.a_sk.to_string()},
          {"a_pk", a.a_pk.to_string()},
          {"enc_sk", a.enc_sk.to_string()},
          {"enc_pk", a.enc_pk.serialize()},
          {"sig_sk", a.sig_sk.to_string()},
          {"sig_pk", a.sig_pk.serialize()}};
}

dap::Address address_from_json(const dap::DapParams& p, const json& j) {
  return decode("address", [&] {
    check_header(j, kSecretHeader);
    const Domain d = p.domain();
    dap::Address a;
    a.a_sk = scalar_from_json(d, j.at("a_sk"));
    a.a_pk = scalar_from_json(d, j.at("a_pk"));
    a.enc_sk = scalar_from_json(d, j.at("enc_sk"));
    a.enc_pk = element_from(d.field, j.at("enc_pk"));
    a.sig_sk = scalar_from_json(d, j.at("sig_sk"));
    a.sig_pk = element_from(d.field, j.at("sig_pk"));
    if (!(p.mimc.prf(a.a_sk, Scalar::zero(d)) == a.a_pk) || !(hh::encode(a.enc_sk) == a.enc_pk) ||
        !(hh::encode(a.sig_sk) == a.sig_pk)) {
      throw FormatError("address keys are inconsistent");
    }
    return a;
  });
}

json to_json(const dap::PublicAddress& a, const dap::DapParams& p) {
  return {{"field", domain_to_json(p.domain())},
          {"a_pk", a.a_pk.to_string()},
          {"enc_pk", a.enc_pk.serialize()},
          {"sig_pk", a.sig_pk.serialize()}};
}

dap::PublicAddress public_address_from_json(const dap::DapParams& p, const json& j) {
  return decode("public address", [&] {
    const Domain d = p.domain();
    return dap::PublicAddress{scalar_from_json(d, j.at("a_pk")), element_from(d.field, j.at("enc_pk")),
                              element_from(d.field, j.at("sig_pk"))};
  });
}

json coin_file(const dap::DapParams& p, const dap::Coin& c, const dap::Address& owner) {
  return {{"header", kSecretHeader},
          {"field", domain_to_json(p.domain())},
          {"coin",
           {{"v", c.v.to_string()},
            {"rho", c.rho.to_string()},
            {"r", c.r.to_string()},
            {"a_pk", c.a_pk.to_string()},
            {"cm", c.cm.to_string()}}},
          {"owner", to_json(owner, p)}};
}

dap::OldInput coin_from_file(const dap::DapParams& p, const json& j) {
  return decode("coin file", [&] {
    check_header(j, kSecretHeader);
    const Domain d = p.domain();
    const json& c = j.at("coin");
    dap::Coin coin{scalar_from_json(d, c.at("v")), scalar_from_json(d, c.at("rho")),
                   scalar_from_json(d, c.at("r")), scalar_from_json(d, c.at("a_pk")),
                   scalar_from_json(d, c.at("cm"))};
    dap::Address owner = address_from_json(p, j.at("owner"));
    if (!(coin.a_pk == owner.a_pk)) throw FormatError("coin is not owned by the enclosed address");
    if (!(dap::comm(p, coin.a_pk, coin.v, coin.rho, coin.r).cm == coin.cm)) {
      throw FormatError("coin commitment does not match its fields");
    }
    return dap::OldInput{std::move(coin), std::move(owner)};
  });
}

}  // namespace zkdesk::io
