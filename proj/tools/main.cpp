// zkdesk: compile / prove / verify pipeline and a toy anonymous-payment ledger.
//
// Exit codes: 0 success or accept, 1 reject (verification false, witness not
// divisible), 2 usage or I/O error.

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "zkdesk/dap.hpp"
#include "zkdesk/frontend.hpp"
#include "zkdesk/io.hpp"
#include "zkdesk/qap.hpp"
#include "zkdesk/r1cs.hpp"
#include "zkdesk/snark.hpp"

namespace fs = std::filesystem;
using namespace zkdesk;
using io::json;

namespace {

constexpr int kOk = 0;
constexpr int kReject = 1;
constexpr int kUsage = 2;

class UsageError : public Error {
 public:
  using Error::Error;
};

bool g_json = false;

// Human text on stdout, or one JSON line with --json.
void report(const std::string& text, const json& j) {
  if (g_json) {
    std::cout << j.dump() << "\n";
  } else if (!text.empty()) {
    std::cout << text;
  }
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw io::IoError("cannot open " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Domain pick_domain(bool rational, const std::string& modulus) {
  if (rational && !modulus.empty()) throw UsageError("--rational and --modulus are exclusive");
  if (rational) return Domain::rational();
  if (!modulus.empty()) return Domain::of(PrimeField::get(modulus));
  return Domain::default_field();
}

void require_field(Domain d, const char* what) {
  if (d.is_rational()) throw UsageError(std::string(what) + " needs a prime-field circuit; recompile without --rational");
}

/// "name=value" -> (name, value); a bare value gives an empty name.
std::pair<std::string, std::string> split_assignment(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos) return {"", s};
  return {s.substr(0, eq), s.substr(eq + 1)};
}

Scalar parse_value(Domain d, const std::string& text) {
  try {
    return Scalar::parse(d, text);
  } catch (const Error& e) {
    throw UsageError("bad value '" + text + "': " + e.what());
  }
}

Qap qap_of(const FlatProgram& fp) { return r1cs_to_qap(compile_to_r1cs(fp)); }

// --- ledger file locking -----------------------------------------------------

class FileLock {
 public:
  explicit FileLock(const fs::path& p) {
    fd_ = ::open(p.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ < 0 || ::flock(fd_, LOCK_EX) != 0) throw io::IoError("cannot lock " + p.string());
  }
  ~FileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

fs::path ppar_path(const fs::path& ledger) {
  fs::path p = ledger;
  p.replace_extension(".ppar.json");
  return p;
}

struct LedgerFiles {
  dap::DapParams params;
  dap::LedgerState state;
};

LedgerFiles load_ledger(const fs::path& path) {
  if (!fs::exists(path)) throw io::IoError(path.string() + " does not exist; run 'ledger init' first");
  const json j = io::read_json(path);
  dap::DapParams p = io::params_from_json(j);
  dap::LedgerState s = io::ledger_from_json(p, j);
  return {std::move(p), std::move(s)};
}

struct PparFile {
  ProvingKey pk;
  VerifyingKey vk;
};

PparFile load_ppar(const fs::path& ledger) {
  const json j = io::read_json(ppar_path(ledger));
  return {io::proving_key_from_json(j.at("pk")), io::verifying_key_from_json(j.at("vk"))};
}

// --- worked example ----------------------------------------------------------

std::string cell(const Scalar& x) {
  if (x.is_rational() && x.rational_value().get_den() == 1) return x.rational_value().get_num().get_str();
  return x.to_string();
}

std::string row_text(const std::vector<Scalar>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + cell(xs[i]);
  return s + "]";
}

int show_worked_example() {
  const Domain q = Domain::rational();
  const FlatProgram fp = flatten(parse_source(kExampleSource), q);
  const ConstraintSystem cs = compile_to_r1cs(fp);
  const WitnessVector t = generate_witness(fp, Scalar(q, 3));
  const Qap qap = r1cs_to_qap(cs);
  const Combined c = combine_with_witness(qap, t);
  const Poly target = target_poly(c);
  const auto [h, rem] = divmod(target, qap.z);

  std::ostringstream os;
  os << "source:\n" << kExampleSource << "\ngates:\n" << describe(fp);
  os << "\nwires: [";
  for (std::size_t i = 0; i < fp.wires.size(); ++i) os << (i ? ", " : "") << fp.wires[i];
  os << "]\n";
  const char* names[] = {"V", "W", "K"};
  for (int m = 0; m < 3; ++m) {
    os << "\n" << names[m] << " rows:\n";
    for (const auto& r : cs.rows) {
      const auto& lc = m == 0 ? r.v : m == 1 ? r.w : r.k;
      os << "  " << row_text(dense(lc, cs.num_wires, q)) << "\n";
    }
  }
  os << "\nwitness t (x = 3): " << row_text(t.t) << "\n";
  const std::vector<Poly>* groups[] = {&qap.v_polys, &qap.w_polys, &qap.k_polys};
  for (int m = 0; m < 3; ++m) {
    os << "\n" << names[m] << " polynomials (constant term first):\n";
    for (const auto& p : *groups[m]) os << "  " << render(p) << "\n";
  }
  os << "\nV = " << render(c.v) << "\nW = " << render(c.w) << "\nK = " << render(c.k) << "\n";
  os << "T = V*W - K = " << render(target) << "\n";
  os << "Z = " << render(qap.z) << "\n";
  os << "H = T/Z = " << render(h) << "\n";
  os << "remainder = " << (rem.is_zero() ? "0" : render(rem)) << "\n";

  json j{{"wires", fp.wires},
         {"witness", io::scalars_to_json(t.t)},
         {"V", io::poly_to_json(c.v)},
         {"W", io::poly_to_json(c.w)},
         {"K", io::poly_to_json(c.k)},
         {"T", io::poly_to_json(target)},
         {"Z", io::poly_to_json(qap.z)},
         {"H", io::poly_to_json(h)},
         {"remainder_zero", rem.is_zero()}};
  report(os.str(), j);
  return kOk;
}

// --- pipeline commands -------------------------------------------------------

int cmd_compile(const std::string& src, bool example, const fs::path& out, bool rational,
                const std::string& modulus) {
  if (example == !src.empty()) throw UsageError("give exactly one of <src> or --example");
  const std::string text = example ? std::string(kExampleSource) : read_text(src);
  const FlatProgram fp = flatten(parse_source(text), pick_domain(rational, modulus));
  io::write_json(out, io::to_json(fp));
  report(describe(fp), {{"gates", fp.gates.size()}, {"wires", fp.wires.size()}, {"out", out.string()}});
  return kOk;
}

int cmd_r1cs(const fs::path& circuit, const fs::path& out) {
  const ConstraintSystem cs = compile_to_r1cs(io::program_from_json(io::read_json(circuit)));
  io::write_json(out, io::to_json(cs));
  report("rows: " + std::to_string(cs.rows.size()) + "\n", {{"rows", cs.rows.size()}});
  return kOk;
}

int cmd_witness(const fs::path& circuit, const std::string& input, const fs::path& out) {
  const FlatProgram fp = io::program_from_json(io::read_json(circuit));
  auto [name, value] = split_assignment(input);
  if (!name.empty() && name != fp.wires[fp.input_wire()]) {
    throw UsageError("circuit input is '" + fp.wires[fp.input_wire()] + "', not '" + name + "'");
  }
  const WitnessVector t = generate_witness(fp, parse_value(fp.domain, value));
  io::write_json(out, io::to_json(t, fp.domain));
  const std::string out_value = t.t[fp.out_wire()].to_string();
  report("out = " + out_value + "\n", {{"out", out_value}, {"witness", io::scalars_to_json(t.t)}});
  return kOk;
}

int cmd_qap(const fs::path& circuit, const fs::path& out) {
  const Qap q = qap_of(io::program_from_json(io::read_json(circuit)));
  io::write_json(out, io::to_json(q));
  report("gates: " + std::to_string(q.num_gates) + "\nZ = " + render(q.z) + "\n",
         {{"num_gates", q.num_gates}, {"z", io::poly_to_json(q.z)}});
  return kOk;
}

int cmd_setup(const fs::path& circuit, std::uint64_t seed, const std::vector<std::string>& outs) {
  if (outs.size() != 2) throw UsageError("setup needs -o <pk.json> <vk.json>");
  const FlatProgram fp = io::program_from_json(io::read_json(circuit));
  require_field(fp.domain, "setup");
  const KeyPair keys = setup(qap_of(fp), SnarkParams{128, seed});
  io::write_json(outs[0], io::to_json(keys.pk));
  io::write_json(outs[1], io::to_json(keys.vk));
  report("digest " + keys.pk.digest + ", " + std::to_string(keys.pk.powers.size()) + " powers\n",
         {{"digest", keys.pk.digest}, {"powers", keys.pk.powers.size()}});
  return kOk;
}

int cmd_prove(const fs::path& pk_path, const fs::path& circuit, const fs::path& witness,
              const fs::path& out) {
  const ProvingKey pk = io::proving_key_from_json(io::read_json(pk_path));
  const FlatProgram fp = io::program_from_json(io::read_json(circuit));
  require_field(fp.domain, "prove");
  const WitnessVector t = io::witness_from_json(io::read_json(witness), fp.domain);
  try {
    const Proof proof = prove(pk, qap_of(fp), t);
    io::write_json(out, io::to_json(proof, pk.field));
  } catch (const UnsatisfiedWitness& e) {
    std::cerr << "prove: " << e.what() << "\n";
    report("", {{"proved", false}});
    return kReject;
  }
  report("proof written to " + out.string() + "\n", {{"proved", true}});
  return kOk;
}

int cmd_verify(const fs::path& vk_path, const fs::path& proof_path,
               const std::vector<std::string>& publics) {
  const VerifyingKey vk = io::verifying_key_from_json(io::read_json(vk_path));
  const Proof proof = io::proof_from_json(io::read_json(proof_path));
  const Domain d = Domain::of(vk.field);
  std::map<std::size_t, Scalar> inputs;
  for (const auto& s : publics) {
    auto [name, value] = split_assignment(s);
    std::size_t i = 0;
    while (i < vk.public_names.size() && vk.public_names[i] != name) ++i;
    if (i == vk.public_names.size()) throw UsageError("'" + name + "' is not a public wire");
    if (!inputs.emplace(vk.public_wires[i], parse_value(d, value)).second) {
      throw UsageError("public wire '" + name + "' given twice");
    }
  }
  inputs.try_emplace(0, Scalar::one(d));
  const bool ok = verify(vk, inputs, proof);
  report(ok ? "accept\n" : "reject\n", {{"accepted", ok}});
  return ok ? kOk : kReject;
}

// --- ledger commands ---------------------------------------------------------

int cmd_init(const fs::path& ledger, std::uint64_t seed, unsigned depth, const std::string& modulus) {
  const Domain d = modulus.empty() ? Domain::of(PrimeField::get(dap::kLedgerModulus))
                                   : Domain::of(PrimeField::get(modulus));
  const dap::DapParams p = dap::DapParams::with_field(d, depth);
  FileLock lock(ledger);
  const dap::Ppar ppar = dap::system_setup(p, seed);
  io::write_json(ppar_path(ledger), {{"header", io::kInsecureHeader},
                                     {"pk", io::to_json(ppar.keys.pk)},
                                     {"vk", io::to_json(ppar.keys.vk)}});
  io::write_json(ledger, io::to_json(p, dap::LedgerState(p)));
  report("ledger " + ledger.string() + " (depth " + std::to_string(depth) + ", " +
             std::to_string(ppar.qap.num_gates) + " pour constraints)\n",
         {{"ledger", ledger.string()}, {"pour_constraints", ppar.qap.num_gates}});
  return kOk;
}

int cmd_keygen(const fs::path& ledger, std::uint64_t seed, const fs::path& out) {
  const LedgerFiles lf = load_ledger(ledger);
  const dap::Address a = dap::create_address(lf.params, seed);
  io::write_json(out, io::to_json(a, lf.params));
  fs::path pub = out;
  pub.replace_extension(".pub.json");
  io::write_json(pub, io::to_json(a.public_part(), lf.params));
  report("a_pk " + a.a_pk.to_string() + "\n", {{"a_pk", a.a_pk.to_string()}, {"public", pub.string()}});
  return kOk;
}

int cmd_mint(const fs::path& ledger, const fs::path& addr_path, const std::string& value,
             std::uint64_t seed, const fs::path& out) {
  FileLock lock(ledger);
  LedgerFiles lf = load_ledger(ledger);
  const dap::Address a = io::address_from_json(lf.params, io::read_json(addr_path));
  const mpz_class v(value.empty() ? std::string("x") : value, 10);
  if (v < 0 || v > lf.params.v_max) {
    throw UsageError("coin value must be in 0.." + lf.params.v_max.get_str());
  }
  const auto r = dap::mint(lf.params, lf.state, a, Scalar(lf.params.domain(), v), seed);
  const PparFile ppar = load_ppar(ledger);
  if (!dap::verify_tx(lf.params, lf.state, r.tx, ppar.vk)) {
    report("mint rejected\n", {{"accepted", false}});
    return kReject;
  }
  io::write_json(out, io::coin_file(lf.params, r.coin, a));
  io::write_json(ledger, io::to_json(lf.params, lf.state));
  report("minted " + r.coin.v.to_string() + ", cm " + r.coin.cm.to_string() + "\n",
         {{"accepted", true}, {"cm", r.coin.cm.to_string()}, {"coin", out.string()}});
  return kOk;
}

int cmd_pour(const fs::path& ledger, const std::vector<std::string>& olds,
             const std::vector<std::string>& tos, std::uint64_t seed, const fs::path& out) {
  if (olds.size() != 2 || tos.size() != 2) throw UsageError("pour takes exactly two --old and two --to");
  const LedgerFiles lf = load_ledger(ledger);
  const dap::DapParams& p = lf.params;
  std::array<dap::OldInput, 2> old{io::coin_from_file(p, io::read_json(olds[0])),
                                   io::coin_from_file(p, io::read_json(olds[1]))};
  std::array<dap::PourOutput, 2> outputs;
  for (int j = 0; j < 2; ++j) {
    const auto colon = tos[j].rfind(':');
    if (colon == std::string::npos) throw UsageError("--to expects <address.json>:<value>");
    const mpz_class v(tos[j].substr(colon + 1), 10);
    if (v < 0) throw UsageError("coin value must be non-negative");
    outputs[j] = {io::public_address_from_json(p, io::read_json(tos[j].substr(0, colon))),
                  Scalar(p.domain(), v)};
  }
  const PparFile ppar = load_ppar(ledger);
  const auto [qap, layout] = dap::pour_qap(p);
  try {
    const dap::PourResult r = dap::pour(p, lf.state, old, outputs, ppar.pk, qap, seed);
    io::write_json(out, io::to_json(dap::Transaction(r.tx)));
  } catch (const UnsatisfiedWitness& e) {
    std::cerr << "pour: " << e.what() << " (are values conserved?)\n";
    report("", {{"proved", false}});
    return kReject;
  }
  report("pour transaction written to " + out.string() + "\n", {{"proved", true}, {"tx", out.string()}});
  return kOk;
}

int cmd_verify_tx(const fs::path& ledger, const fs::path& tx_path) {
  FileLock lock(ledger);
  LedgerFiles lf = load_ledger(ledger);
  const dap::Transaction tx = io::transaction_from_json(lf.params, io::read_json(tx_path));
  const PparFile ppar = load_ppar(ledger);
  const bool ok = dap::verify_tx(lf.params, lf.state, tx, ppar.vk);
  if (ok) io::write_json(ledger, io::to_json(lf.params, lf.state));
  report(ok ? "accept\n" : "reject\n", {{"accepted", ok}});
  return ok ? kOk : kReject;
}

int cmd_receive(const fs::path& ledger, const fs::path& addr_path, const std::string& prefix) {
  const LedgerFiles lf = load_ledger(ledger);
  const dap::Address a = io::address_from_json(lf.params, io::read_json(addr_path));
  const auto coins = dap::receive(lf.params, lf.state, a);
  std::ostringstream os;
  json list = json::array();
  for (std::size_t i = 0; i < coins.size(); ++i) {
    os << "coin v=" << coins[i].v.to_string() << " cm=" << coins[i].cm.to_string() << "\n";
    json c{{"v", coins[i].v.to_string()}, {"cm", coins[i].cm.to_string()}};
    if (!prefix.empty()) {
      const std::string path = prefix + std::to_string(i + 1) + ".json";
      io::write_json(path, io::coin_file(lf.params, coins[i], a));
      c["file"] = path;
    }
    list.push_back(c);
  }
  if (coins.empty()) os << "no coins\n";
  report(os.str(), {{"coins", list}});
  return kOk;
}

int cmd_show(const fs::path& ledger) {
  const LedgerFiles lf = load_ledger(ledger);
  const auto& s = lf.state;
  std::size_t mints = 0;
  for (const auto& tx : s.txs()) mints += std::holds_alternative<dap::MintTx>(tx);
  std::ostringstream os;
  os << "depth " << lf.params.depth << ", " << s.tree().size() << "/" << s.tree().capacity()
     << " commitments\nroot " << s.root().to_string() << "\n"
     << s.serials().size() << " serial numbers spent\n"
     << mints << " mint, " << s.txs().size() - mints << " pour transactions\n";
  report(os.str(), {{"depth", lf.params.depth},
                    {"commitments", s.tree().size()},
                    {"root", s.root().to_string()},
                    {"serials", s.serials().size()},
                    {"mints", mints},
                    {"pours", s.txs().size() - mints}});
  return kOk;
}

int cmd_demo(std::uint64_t seed, unsigned depth) {
  std::ostringstream os;
  json phases = json::array();
  bool all_ok = true;
  auto phase = [&](const std::string& name, bool ok, const std::string& detail) {
    os << "[" << name << "] " << detail << "\n";
    phases.push_back({{"phase", name}, {"ok", ok}, {"detail", detail}});
    all_ok = all_ok && ok;
  };

  const dap::DapParams p = dap::DapParams::standard(depth);
  const Domain d = p.domain();
  const dap::Ppar ppar = dap::system_setup(p, seed);
  phase("system setup", true, std::to_string(ppar.qap.num_gates) + " pour constraints");
  dap::LedgerState ledger(p);

  const dap::Address alice = dap::create_address(p, seed * 4 + 1);
  const dap::Address bob = dap::create_address(p, seed * 4 + 2);
  phase("create address", true, "alice and bob");

  const auto m1 = dap::mint(p, ledger, alice, Scalar(d, 2), seed * 4 + 3);
  const bool ok1 = dap::verify_tx(p, ledger, m1.tx, ppar.keys.vk);
  const auto m2 = dap::mint(p, ledger, alice, Scalar(d, 3), seed * 4 + 4);
  const bool ok2 = dap::verify_tx(p, ledger, m2.tx, ppar.keys.vk);
  phase("mint", ok1 && ok2, "alice mints 2 and 3");

  const auto pr = dap::pour(p, ledger, {dap::OldInput{m1.coin, alice}, dap::OldInput{m2.coin, alice}},
                            {dap::PourOutput{bob.public_part(), Scalar(d, 4)},
                             dap::PourOutput{bob.public_part(), Scalar(d, 1)}},
                            ppar.keys.pk, ppar.qap, seed);
  phase("pour", true, "2 + 3 -> 4 + 1 to bob");

  const bool okp = dap::verify_tx(p, ledger, pr.tx, ppar.keys.vk);
  phase("verify", okp, okp ? "pour accepted" : "pour REJECTED");

  const auto got = dap::receive(p, ledger, bob);
  const bool okr = got.size() == 2 && got[0].v == Scalar(d, 4) && got[1].v == Scalar(d, 1) &&
                   dap::receive(p, ledger, alice).empty();
  phase("receive", okr, "bob received " + std::to_string(got.size()) + " coins");

  const bool replay = dap::verify_tx(p, ledger, pr.tx, ppar.keys.vk);
  phase("double spend", !replay, replay ? "double-spend ACCEPTED" : "double-spend rejected");

  if (okr) {
    const auto back = dap::pour(p, ledger, {dap::OldInput{got[0], bob}, dap::OldInput{got[1], bob}},
                                {dap::PourOutput{alice.public_part(), Scalar(d, 5)},
                                 dap::PourOutput{alice.public_part(), Scalar(d, 0)}},
                                ppar.keys.pk, ppar.qap, seed + 1);
    const bool okb = dap::verify_tx(p, ledger, back.tx, ppar.keys.vk);
    const bool spent = dap::receive(p, ledger, bob).empty() && dap::receive(p, ledger, alice).size() == 2;
    phase("spend received", okb && spent,
          spent ? "bob pays 4 + 1 -> 5 + 0 to alice; bob has no coins left" : "receive still lists spent coins");
  }

  report(os.str(), {{"phases", phases}, {"ok", all_ok}});
  return all_ok ? kOk : kReject;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zkdesk: desk-scale zk-SNARK pipeline and toy payment ledger (INSECURE demo group)"};
  app.set_help_all_flag("--help-all");
  bool show_example = false;
  app.add_flag("--show-paper-example", show_example, "print the worked example tables and exit");
  app.add_flag("--json", g_json, "single-line JSON on stdout");

  std::function<int()> run;

  // pipeline
  std::string src, modulus;
  bool rational = false, example = false;
  fs::path out;
  auto* compile = app.add_subcommand("compile", "source -> circuit.json");
  compile->add_option("src", src, "source file");
  compile->add_flag("--example", example, "use the built-in example program");
  compile->add_option("-o,--out", out, "circuit file")->required();
  compile->add_flag("--rational", rational, "exact rational arithmetic");
  compile->add_option("--modulus", modulus, "prime field modulus (default: 254-bit SNARK field)");
  compile->callback([&] { run = [&] { return cmd_compile(src, example, out, rational, modulus); }; });

  fs::path circuit, witness_path, pk_path, vk_path, proof_path;
  auto* r1cs = app.add_subcommand("r1cs", "circuit.json -> dense constraint rows");
  r1cs->add_option("circuit", circuit)->required();
  r1cs->add_option("-o,--out", out)->required();
  r1cs->callback([&] { run = [&] { return cmd_r1cs(circuit, out); }; });

  std::string input;
  auto* witness = app.add_subcommand("witness", "evaluate the circuit at an input");
  witness->add_option("circuit", circuit)->required();
  witness->add_option("--input", input, "x=<n>")->required();
  witness->add_option("-o,--out", out)->required();
  witness->callback([&] { run = [&] { return cmd_witness(circuit, input, out); }; });

  auto* qap = app.add_subcommand("qap", "circuit.json -> qap.json");
  qap->add_option("circuit", circuit)->required();
  qap->add_option("-o,--out", out)->required();
  qap->callback([&] { run = [&] { return cmd_qap(circuit, out); }; });

  std::uint64_t seed = 0;
  std::vector<std::string> outs;
  auto* setup_cmd = app.add_subcommand("setup", "circuit.json -> pk.json vk.json");
  setup_cmd->add_option("circuit", circuit)->required();
  setup_cmd->add_option("--seed", seed)->required();
  setup_cmd->add_option("-o,--out", outs, "pk.json vk.json")->required()->expected(2);
  setup_cmd->callback([&] { run = [&] { return cmd_setup(circuit, seed, outs); }; });

  auto* prove_cmd = app.add_subcommand("prove", "pk.json circuit.json w.json -> proof.json");
  prove_cmd->add_option("pk", pk_path)->required();
  prove_cmd->add_option("circuit", circuit)->required();
  prove_cmd->add_option("witness", witness_path)->required();
  prove_cmd->add_option("-o,--out", out)->required();
  prove_cmd->callback([&] { run = [&] { return cmd_prove(pk_path, circuit, witness_path, out); }; });

  std::vector<std::string> publics;
  auto* verify_cmd = app.add_subcommand("verify", "check a proof against public values");
  verify_cmd->add_option("vk", vk_path)->required();
  verify_cmd->add_option("proof", proof_path)->required();
  verify_cmd->add_option("--public", publics, "name=<n>, repeatable")->required();
  verify_cmd->callback([&] { run = [&] { return cmd_verify(vk_path, proof_path, publics); }; });

  // ledger
  auto* ledger = app.add_subcommand("ledger", "toy anonymous-payment ledger");
  ledger->require_subcommand(1);
  fs::path ledger_path = "ledger.json";
  ledger->add_option("--ledger", ledger_path, "ledger file")->capture_default_str();
  unsigned depth = 4;

  auto* init = ledger->add_subcommand("init", "new empty ledger and pour keys");
  init->add_option("--seed", seed)->capture_default_str();
  init->add_option("--depth", depth)->capture_default_str();
  init->add_option("--modulus", modulus, "prime with p = 2 mod 3");
  init->callback([&] { run = [&] { return cmd_init(ledger_path, seed, depth, modulus); }; });

  auto* keygen = ledger->add_subcommand("keygen", "new payment address");
  keygen->add_option("--seed", seed)->required();
  keygen->add_option("-o,--out", out)->required();
  keygen->callback([&] { run = [&] { return cmd_keygen(ledger_path, seed, out); }; });

  fs::path addr_path;
  std::string value;
  auto* mint = ledger->add_subcommand("mint", "mint a coin and append it");
  mint->add_option("--addr", addr_path)->required();
  mint->add_option("--value", value)->required();
  mint->add_option("--seed", seed)->capture_default_str();
  fs::path coin_out = "coin.json";
  mint->add_option("-o,--out", coin_out)->capture_default_str();
  mint->callback([&] { run = [&] { return cmd_mint(ledger_path, addr_path, value, seed, coin_out); }; });

  std::vector<std::string> olds, tos;
  fs::path tx_out = "tx.json";
  auto* pour = ledger->add_subcommand("pour", "spend two coins into two new ones");
  pour->add_option("--old", olds, "two coin files")->required()->expected(2);
  pour->add_option("--to", tos, "two <address.json>:<value>")->required()->expected(2);
  pour->add_option("--seed", seed)->capture_default_str();
  pour->add_option("-o,--out", tx_out)->capture_default_str();
  pour->callback([&] { run = [&] { return cmd_pour(ledger_path, olds, tos, seed, tx_out); }; });

  fs::path tx_path;
  auto* verify_tx = ledger->add_subcommand("verify-tx", "check a transaction and apply it");
  verify_tx->add_option("tx", tx_path)->required();
  verify_tx->callback([&] { run = [&] { return cmd_verify_tx(ledger_path, tx_path); }; });

  std::string prefix;
  auto* receive = ledger->add_subcommand("receive", "scan for unspent coins paid to an address");
  receive->add_option("--addr", addr_path)->required();
  receive->add_option("--out-prefix", prefix, "write coin files <prefix>1.json, ...");
  receive->callback([&] { run = [&] { return cmd_receive(ledger_path, addr_path, prefix); }; });

  auto* show = ledger->add_subcommand("show", "ledger summary");
  show->callback([&] { run = [&] { return cmd_show(ledger_path); }; });

  auto* demo = ledger->add_subcommand("demo", "full lifecycle in memory");
  demo->add_option("--seed", seed)->capture_default_str();
  demo->add_option("--depth", depth)->capture_default_str();
  demo->callback([&] { run = [&] { return cmd_demo(seed, depth); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (show_example) return show_worked_example();
    if (!run) {
      std::cerr << app.help();
      return kUsage;
    }
    return run();
  } catch (const ParseError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
  } catch (const NotDivisible& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kReject;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kUsage;
}
