// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_run.hpp"
#include "support.hpp"
#include "zkdesk/dap.hpp"
#include "zkdesk/qap.hpp"
#include "zkdesk/rng.hpp"
#include "zkdesk/snark.hpp"

using namespace zkdesk;
using ref::close_to;
using ref::q;

namespace {

/// Collects failed checks for one criterion.
struct Checks {
  std::vector<std::string> failed;
  void operator()(bool ok, const std::string& what) {
    if (!ok) failed.push_back(what);
  }
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;  // 0 = no limit
  std::function<void(Checks&)> body;
};

// --- 1 ---------------------------------------------------------------------

std::vector<Scalar> row(std::initializer_list<long> xs) {
  std::vector<Scalar> v;
  for (long x : xs) v.push_back(q(x));
  return v;
}

void golden(Checks& check) {
  const FlatProgram fp = flatten(parse_source(kExampleSource), ref::Q);
  check(fp.gates.size() == 4, "four gates");
  check(describe(fp) == "sym1 = x * x\ny = sym1 * x\nsym2 = x + y\nout = sym2 + 5\n", "gate text");
  check(fp.wires == std::vector<std::string>{"one", "x", "out", "sym1", "y", "sym2"}, "wire order");

  const ConstraintSystem cs = compile_to_r1cs(fp);
  const std::vector<std::vector<Scalar>> V{row({0, 1, 0, 0, 0, 0}), row({0, 0, 0, 1, 0, 0}),
                                           row({0, 1, 0, 0, 1, 0}), row({5, 0, 0, 0, 0, 1})};
  const std::vector<std::vector<Scalar>> W{row({0, 1, 0, 0, 0, 0}), row({0, 1, 0, 0, 0, 0}),
                                           row({1, 0, 0, 0, 0, 0}), row({1, 0, 0, 0, 0, 0})};
  const std::vector<std::vector<Scalar>> K{row({0, 0, 0, 1, 0, 0}), row({0, 0, 0, 0, 1, 0}),
                                           row({0, 0, 0, 0, 0, 1}), row({0, 0, 1, 0, 0, 0})};
  check(cs.rows.size() == 4, "four rows");
  for (std::size_t i = 0; i < cs.rows.size() && i < 4; ++i) {
    check(dense(cs.rows[i].v, 6, ref::Q) == V[i], "V row " + std::to_string(i));
    check(dense(cs.rows[i].w, 6, ref::Q) == W[i], "W row " + std::to_string(i));
    check(dense(cs.rows[i].k, 6, ref::Q) == K[i], "K row " + std::to_string(i));
  }

  const WitnessVector t = generate_witness(fp, q(3));
  check(t.t == row({1, 3, 35, 9, 27, 30}), "witness at x = 3");

  const Qap qap = r1cs_to_qap(cs);
  check(qap.v_polys[0] == Poly({q(-5), q(55, 6), q(-5), q(5, 6)}), "v for the one wire");
  const Combined c = combine_with_witness(qap, t);
  check(close_to(c.v, {43.0, -73.333, 38.5, -5.166}), "V decimals");
  check(close_to(c.w, {-3.0, 10.333, -5.0, 0.666}), "W decimals");
  check(close_to(c.k, {-41.0, 71.666, -24.5, 2.833}), "K decimals");
  const Poly target = target_poly(c);
  check(close_to(target, {-88.0, 592.666, -1063.777, 805.833, -294.777, 51.5, -3.444}), "T decimals");
  check(qap.z == Poly({q(24), q(-50), q(35), q(-10), q(1)}), "Z exact");
  const auto [h, rem] = divmod(target, qap.z);
  check(rem.is_zero(), "remainder zero");
  check(close_to(h, {-3.666, 17.055, -3.444}), "H decimals");
}

// --- 2 ---------------------------------------------------------------------

void qap_consistency(Checks& check) {
  const Domain F = Domain::default_field();
  gen::Generator g(2001);
  SeededRng rng(2002, "acceptance-qap");
  int satisfied = 0, unsatisfied = 0;
  for (int i = 0; i < 200; ++i) {
    const gen::Program p = g.program(20, F);
    const FlatProgram fp = flatten(parse_source(p.source), F);
    const ConstraintSystem cs = compile_to_r1cs(fp);
    const Qap qap = r1cs_to_qap(cs);
    const std::string tag = "instance " + std::to_string(i);
    bool rows_ok = true;
    for (std::size_t r = 0; r < cs.rows.size(); ++r) {
      const Scalar x = qap.node(r + 1);
      const auto v = dense(cs.rows[r].v, cs.num_wires, F), w = dense(cs.rows[r].w, cs.num_wires, F),
                 k = dense(cs.rows[r].k, cs.num_wires, F);
      for (std::size_t j = 0; j < cs.num_wires; ++j) {
        rows_ok = rows_ok && qap.v_polys[j].eval(x) == v[j] && qap.w_polys[j].eval(x) == w[j] &&
                  qap.k_polys[j].eval(x) == k[j];
      }
    }
    check(rows_ok, tag + ": node evaluation");

    WitnessVector t = generate_witness(fp, rng.next_scalar(F));
    if (i % 2) t.t[1 + rng.next_u64() % (t.t.size() - 1)] += rng.next_nonzero_scalar(F);
    bool divisible = true;
    try {
      compute_h(target_poly(combine_with_witness(qap, t)), qap.z);
    } catch (const NotDivisible&) {
      divisible = false;
    }
    const bool sat = is_satisfied(cs, t);
    (sat ? satisfied : unsatisfied)++;
    check(divisible == sat, tag + ": divisible iff satisfied");
  }
  check(satisfied > 0 && unsatisfied > 0, "both outcomes exercised");
}

// --- 3 ---------------------------------------------------------------------

void snark_props(Checks& check) {
  const Domain F = Domain::default_field();
  gen::Generator g(3001);
  SeededRng rng(3002, "acceptance-snark");
  for (int i = 0; i < 100; ++i) {
    const gen::Program p = g.program(20, F);
    const FlatProgram fp = flatten(parse_source(p.source), F);
    const Qap qap = r1cs_to_qap(compile_to_r1cs(fp));
    const KeyPair keys = setup(qap, SnarkParams{128, 5000 + static_cast<std::uint64_t>(i)});
    const Scalar x = rng.next_scalar(F);
    const Scalar out = p.run(x);
    const std::map<std::size_t, Scalar> pub{{0, Scalar::one(F)}, {2, out}};
    const Proof proof = prove(keys.pk, qap, generate_witness(fp, x));
    const std::string tag = "pair " + std::to_string(i);
    check(verify(keys.vk, pub, proof), tag + ": completeness");

    Proof t = proof;
    hh::Element* parts[] = {&t.pi_v, &t.pi_w, &t.pi_k, &t.pi_h};
    hh::Element& victim = *parts[i % 4];
    victim = hh::combine(victim, hh::encode(rng.next_nonzero_scalar(F)));
    check(!verify(keys.vk, pub, t), tag + ": tampered proof rejected");

    const std::map<std::size_t, Scalar> wrong{{0, Scalar::one(F)}, {2, out + rng.next_nonzero_scalar(F)}};
    check(!verify(keys.vk, wrong, proof), tag + ": wrong public input rejected");
  }
}

// --- 4 ---------------------------------------------------------------------

void oracle_instance(Checks& check, const FlatProgram& fp, const WitnessVector& t, const std::string& tag) {
  const ConstraintSystem cs = compile_to_r1cs(fp);
  const Qap qap = r1cs_to_qap(cs);
  const auto A = oracle::Arith::of(fp.domain);
  const bool sat = is_satisfied(cs, t);
  check(sat == oracle::rows_hold(A, cs, oracle::values(t.t)), tag + ": dot-product oracle");

  const Poly target = target_poly(combine_with_witness(qap, t));
  auto [oq, orem] = oracle::long_division(A, oracle::coeffs(target), oracle::coeffs(qap.z));
  try {
    const Poly h = compute_h(target, qap.z);
    check(orem.empty() && oq == oracle::coeffs(h), tag + ": quotient matches long division");
  } catch (const NotDivisible& e) {
    check(!orem.empty() && oracle::coeffs(e.remainder()) == orem, tag + ": remainder matches long division");
  }
}

void oracle_equivalence(Checks& check) {
  const FlatProgram ex = flatten(parse_source(kExampleSource), ref::Q);
  oracle_instance(check, ex, generate_witness(ex, q(3)), "example");
  WitnessVector bad = generate_witness(ex, q(3));
  bad.t[3] = q(10);
  oracle_instance(check, ex, bad, "example, corrupted");

  const Domain F = Domain::default_field();
  gen::Generator g(4001);
  SeededRng rng(4002, "acceptance-oracle");
  for (int i = 0; i < 100; ++i) {
    const Domain d = i % 4 == 3 ? ref::Q : F;
    const gen::Program p = g.program(20, d);
    const FlatProgram fp = flatten(parse_source(p.source), d);
    const Scalar x = d.is_rational() ? Scalar(d, static_cast<long>(rng.next_u64() % 21) - 10) : rng.next_scalar(d);
    WitnessVector t = generate_witness(fp, x);
    if (i % 2) t.t[1 + rng.next_u64() % (t.t.size() - 1)] += Scalar::one(d);
    oracle_instance(check, fp, t, "instance " + std::to_string(i));
  }
}

// --- 5 ---------------------------------------------------------------------

void ledger_lifecycle(Checks& check) {
  using namespace dap;
  const DapParams p = DapParams::standard(4);
  const Domain D = p.domain();
  const Ppar ppar = system_setup(p, 1);
  LedgerState ledger(p);
  const Address alice = create_address(p, 1), bob = create_address(p, 2);

  const MintResult m2 = mint(p, ledger, alice, Scalar(D, 2), 10);
  check(verify_tx(p, ledger, m2.tx, ppar.keys.vk), "mint 2 accepted");
  const MintResult m3 = mint(p, ledger, alice, Scalar(D, 3), 11);
  check(verify_tx(p, ledger, m3.tx, ppar.keys.vk), "mint 3 accepted");

  const PourResult pr = pour(p, ledger, {OldInput{m2.coin, alice}, OldInput{m3.coin, alice}},
                             {PourOutput{bob.public_part(), Scalar(D, 4)}, PourOutput{bob.public_part(), Scalar(D, 1)}},
                             ppar.keys.pk, ppar.qap, 5);
  PourTx fabricated = pr.tx;
  fabricated.rt += Scalar::one(D);
  check(!verify_tx(p, ledger, fabricated, ppar.keys.vk), "fabricated root rejected");
  check(verify_tx(p, ledger, pr.tx, ppar.keys.vk), "pour accepted");
  check(!verify_tx(p, ledger, pr.tx, ppar.keys.vk), "pour replay rejected");

  const auto got = receive(p, ledger, bob);
  check(got.size() == 2, "bob receives two coins");
  if (got.size() == 2) {
    check(got[0].cm == pr.new_coins[0].cm && got[0].v == Scalar(D, 4), "first coin is 4");
    check(got[1].cm == pr.new_coins[1].cm && got[1].v == Scalar(D, 1), "second coin is 1");
    check(receive(p, ledger, alice).empty(), "alice's spent coins are not listed");

    const PourResult back =
        pour(p, ledger, {OldInput{got[0], bob}, OldInput{got[1], bob}},
             {PourOutput{alice.public_part(), Scalar(D, 5)}, PourOutput{alice.public_part(), Scalar(D, 0)}},
             ppar.keys.pk, ppar.qap, 6);
    check(verify_tx(p, ledger, back.tx, ppar.keys.vk), "bob's pour accepted");
    check(receive(p, ledger, bob).empty(), "bob's coins excluded after spending");
    check(receive(p, ledger, alice).size() == 2, "alice receives two coins");
  }
}

// --- 6 ---------------------------------------------------------------------

void cli_session(Checks& check, const cli::fs::path& d) {
  const char* steps[] = {
      "compile --example -o c.json",
      "witness c.json --input x=3 -o w.json",
      "setup c.json --seed 9 -o pk.json vk.json",
      "prove pk.json c.json w.json -o proof.json",
      "verify vk.json proof.json --public out=35",
      "ledger init --seed 3 --depth 4",
      "ledger keygen --seed 1 -o alice.json",
      "ledger keygen --seed 2 -o bob.json",
      "ledger mint --addr alice.json --value 2 --seed 10 -o c1.json",
      "ledger mint --addr alice.json --value 3 --seed 11 -o c2.json",
      "ledger pour --old c1.json c2.json --to bob.pub.json:4 bob.pub.json:1 --seed 5 -o tx.json",
      "ledger verify-tx tx.json",
  };
  for (const char* s : steps) check(cli::zk(d, s).code == 0, std::string("`") + s + "` exits 0");
}

void determinism(Checks& check) {
  const auto a = cli::scratch("accept-a"), b = cli::scratch("accept-b");
  cli_session(check, a);
  cli_session(check, b);
  for (const char* f : {"c.json", "w.json", "pk.json", "vk.json", "proof.json", "ledger.json", "ledger.ppar.json",
                        "c1.json", "c2.json", "tx.json"}) {
    const std::string x = cli::slurp(a / f);
    check(!x.empty() && x == cli::slurp(b / f), std::string(f) + " identical");
  }
  cli::fs::remove_all(a);
  cli::fs::remove_all(b);
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "golden pipeline reproduction", 1.0, golden},
      {2, "QAP consistency on 200 random programs", 30.0, qap_consistency},
      {3, "SNARK completeness, tampering, wrong public input", 60.0, snark_props},
      {4, "oracle equivalence", 0.0, oracle_equivalence},
      {5, "ledger lifecycle", 30.0, ledger_lifecycle},
      {6, "determinism of CLI outputs", 0.0, determinism},
  };
  bool all = true;
  for (const auto& c : criteria) {
    Checks checks;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(checks);
    } catch (const std::exception& e) {
      checks.failed.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && secs >= c.limit_s) {
      std::ostringstream os;
      os << "runtime " << secs << " s over " << c.limit_s << " s";
      checks.failed.push_back(os.str());
    }
    const bool ok = checks.failed.empty();
    all = all && ok;
    std::cout << (ok ? "PASS" : "FAIL") << " " << c.id << " " << c.name << " (" << std::fixed;
    std::cout.precision(2);
    std::cout << secs << " s)";
    if (!ok) {
      std::cout << ": " << checks.failed.front();
      if (checks.failed.size() > 1) std::cout << " (+" << checks.failed.size() - 1 << " more)";
    }
    std::cout << std::endl;
  }
  return all ? 0 : 1;
}
