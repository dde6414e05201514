#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "doctest.h"
#include "harness.hpp"
#include "json.hpp"
#include "rng.hpp"

using namespace scdg;

namespace {

GameParams fig_pin(int theta1) {
  GameParams p;
  p.c1 = 500.0;
  p.c2 = 150.0;
  p.tau = 1000.0;
  p.theta1 = theta1;
  p.theta2 = 200;
  return p;
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t nl = s.find('\n', pos);
    out.push_back(s.substr(pos, nl - pos));
    if (nl == std::string::npos) break;
    pos = nl + 1;
  }
  return out;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t c = line.find(',', pos);
    out.push_back(line.substr(pos, c - pos));
    if (c == std::string::npos) break;
    pos = c + 1;
  }
  return out;
}

}  // namespace

TEST_CASE("twelve significant digit cells") {
  CHECK(format_sig(42.0) == "42");
  CHECK(format_sig(0.5) == "0.5");
  CHECK(format_sig(43.057996485061516) == "43.0579964851");
  CHECK(format_sig(-1e-9) == "-1e-09");
  CHECK(format_sig(0.0) == "0");
}

TEST_CASE("name round trips") {
  SweepField f = SweepField::C1;
  CHECK(sweep_field_from_name("theta2", &f));
  CHECK(f == SweepField::Theta2);
  CHECK_FALSE(sweep_field_from_name("theta3", &f));

  PayoffMode m = PayoffMode::Full;
  CHECK(payoff_mode_from_name("large-n", &m));
  CHECK(m == PayoffMode::LargeN);
  CHECK_FALSE(payoff_mode_from_name("exact", &m));
}

TEST_CASE("sweep emits one row per step plus a header") {
  GameParams base = fig_pin(50);
  SweepSpec spec;
  spec.field = SweepField::Tau;
  spec.from = 500.0;
  spec.to = 1500.0;
  spec.steps = 2;

  const std::string csv = run_sweep_csv(base, spec);
  const auto lines = split_lines(csv);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] ==
        "swept_value,regime,r12,r21,tau1,tau2,psi1,psi2,psiT,sc_sum,"
        "provenance,error");
  CHECK(split_fields(lines[1])[0] == "500");
  CHECK(split_fields(lines[2])[0] == "1500");
  CHECK(split_fields(lines[1]).size() == 12);
}

TEST_CASE("sweep keeps rows for steps that fail validation") {
  GameParams base = fig_pin(50);
  SweepSpec spec;
  spec.field = SweepField::C1;
  spec.from = -5.0;
  spec.to = 5.0;
  spec.steps = 2;

  const auto lines = split_lines(run_sweep_csv(base, spec));
  REQUIRE(lines.size() == 3);
  const auto bad = split_fields(lines[1]);
  REQUIRE(bad.size() == 12);
  CHECK(bad[0] == "-5");
  CHECK(bad[1].empty());
  CHECK(bad[10].empty());
  CHECK(bad[11] == "c1 must be finite and >= 0");
  const auto good = split_fields(lines[2]);
  CHECK(good[11].empty());
  CHECK(good[1] == "T4");  // c1 = 5: both defenses now far below tau
}

TEST_CASE("sweep specs are validated") {
  const GameParams base = fig_pin(50);
  SweepSpec spec;
  spec.from = 1.0;
  spec.to = 2.0;
  spec.steps = 1;
  CHECK_THROWS_AS(run_sweep_csv(base, spec), DomainError);
  spec.steps = 5;
  spec.to = 1.0;
  CHECK_THROWS_AS(run_sweep_csv(base, spec), DomainError);
  spec.to = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(run_sweep_csv(base, spec), DomainError);
}

TEST_CASE("growing the weak layer's worth raises the incoming transfer") {
  GameParams base;
  base.tau = 1000.0;
  base.c1 = 150.0;
  base.c2 = 1200.0;
  base.theta2 = 200;

  SweepSpec spec;
  spec.field = SweepField::Theta1;
  spec.from = 50.0;
  spec.to = 150.0;
  spec.steps = 11;

  const auto lines = split_lines(run_sweep_csv(base, spec));
  REQUIRE(lines.size() == 12);
  double prev = -1.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_fields(lines[i]);
    REQUIRE(f.size() == 12);
    CHECK(f[1] == "T5M");
    CHECK(f[10] == "closed-form");
    CHECK(f[2] == "0");  // physical agency receives, never donates here
    const double r21 = std::stod(f[3]);
    CHECK(r21 >= prev);
    prev = r21;
  }
  CHECK(prev > 0.0);
}

TEST_CASE("corner regime rows all donate toward the targeted layer") {
  GameParams base;
  base.tau = 200.0;
  base.c1 = 800.0;
  base.theta1 = 50;
  base.theta2 = 100;

  SweepSpec spec;
  spec.field = SweepField::C2;
  spec.from = 300.0;
  spec.to = 1000.0;
  spec.steps = 8;

  const auto lines = split_lines(run_sweep_csv(base, spec));
  REQUIRE(lines.size() == 9);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_fields(lines[i]);
    CHECK(f[1] == "T3");
    CHECK(std::stod(f[2]) > 0.0);  // agency 1 tops up the social layer
    CHECK(f[3] == "0");
    CHECK(f[11].empty());
  }
}

TEST_CASE("single record CSV") {
  const std::string csv = solve_csv(fig_pin(50));
  const auto lines = split_lines(csv);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] ==
        "c1,c2,tau,v1,v2,theta1,theta2,mode,regime,regime_detail,r12,r21,d1,"
        "d2,tau1,tau2,psi1,psi2,psiT,sc_sum,provenance");
  const auto f = split_fields(lines[1]);
  REQUIRE(f.size() == 21);
  CHECK(f[0] == "500");
  CHECK(f[5] == "50");
  CHECK(f[7] == "large-n");
  CHECK(f[8] == "T5");
  CHECK(f[10] == "43.0579964851");
  CHECK(f[20] == "closed-form");
}

TEST_CASE("single record JSON mirrors the CSV") {
  const std::string text = solve_json(fig_pin(50));
  CHECK(text.back() == '\n');
  CHECK(text.rfind("{\n  \"c1\"", 0) == 0);  // insertion order preserved
  const nlohmann::json j = nlohmann::json::parse(text);
  CHECK(j.at("regime") == "T5");
  CHECK(j.at("theta1") == 50);
  CHECK(j.at("mode") == "large-n");
  CHECK(j.at("r12").get<double>() ==
        doctest::Approx(43.057996485061516).epsilon(1e-13));
  CHECK(j.at("provenance") == "closed-form");
  CHECK(j.at("sc_sum").get<double>() ==
        doctest::Approx(j.at("psi1").get<double>() +
                        j.at("psi2").get<double>())
            .epsilon(1e-13));
}

TEST_CASE("state evaluation follows the classification") {
  const GameParams p = fig_pin(50);
  const Transfers zero = make_transfers(p, 0.0, 0.0);
  const Regime r = classify_regime(p, zero);
  REQUIRE(r.tag == RegimeTag::T5);
  const Utilities direct =
      expected_utilities(p, zero, allocation_for(p, zero.d1, zero.d2, r),
                         PayoffMode::LargeN);
  const Utilities via = evaluate_state(p, zero, PayoffMode::LargeN);
  CHECK(via.psi1 == direct.psi1);
  CHECK(via.psi2 == direct.psi2);

  // Band-edge endowments have no closed form; the state is priced by the
  // exact-mode grid response instead.
  GameParams q;
  q.tau = 100.0;
  q.c1 = 200.0;
  q.c2 = 150.0;
  q.theta1 = 4;
  q.theta2 = 4;
  const Transfers qz = make_transfers(q, 0.0, 0.0);
  REQUIRE(classify_regime(q, qz).tag == RegimeTag::Unclassified);
  const Utilities u = evaluate_state(q, qz, PayoffMode::LargeN);
  OracleConfig cfg;
  cfg.mode = PayoffMode::Full;
  const ArgmaxResult resp = refined_argmax_to(q, qz.d1, qz.d2, cfg);
  const Utilities expect = expected_utilities(
      q, qz, make_allocation(q, resp.tau1, q.tau - resp.tau1),
      PayoffMode::Full);
  CHECK(u.psi1 == expect.psi1);
  CHECK(u.psi2 == expect.psi2);
  CHECK(u.psi1 + u.psi2 + u.psiT ==
        doctest::Approx(q.total_value()).epsilon(1e-12));
}

TEST_CASE("comparison report basics") {
  const GameParams p = fig_pin(100);
  CHECK_THROWS_AS(run_compare(p, 0, 1), DomainError);

  const ComparisonReport rep = run_compare(p, 300, 42);
  CHECK(rep.trials == 300);
  CHECK(rep.seed == 42);
  // The equilibrium transfer is zero here, so the two deterministic rows
  // coincide exactly.
  CHECK(rep.spne.mean_psi1 == rep.no_transfer.mean_psi1);
  CHECK(rep.spne.mean_psi2 == rep.no_transfer.mean_psi2);
}

TEST_CASE("random transfers can help the recipient while hurting the donor") {
  const ComparisonReport rep = run_compare(fig_pin(100), 1000, 42);
  CHECK(rep.random_transfer.mean_psi2 > rep.spne.mean_psi2);
  CHECK(rep.random_transfer.mean_psi1 < rep.spne.mean_psi1);
  CHECK(rep.spne.mean_sc_sum >= rep.random_transfer.mean_sc_sum);
}

TEST_CASE("per trial substreams are reproducible from the public protocol") {
  const GameParams p = fig_pin(100);
  const int trials = 2000;
  const std::uint64_t seed = 7;
  const ComparisonReport rep = run_compare(p, trials, seed);

  double s1 = 0.0, s2 = 0.0;
  std::vector<double> sc(trials);
  for (int i = 0; i < trials; ++i) {
    SplitMix64 g = SplitMix64::for_trial(seed, static_cast<std::uint64_t>(i));
    const bool donor2 = (g.next() >> 63) != 0;
    const double amount = g.next_unit() * (donor2 ? p.c2 : p.c1);
    const Transfers t = donor2 ? make_transfers(p, 0.0, amount)
                               : make_transfers(p, amount, 0.0);
    const Utilities u = evaluate_state(p, t, PayoffMode::LargeN);
    s1 += u.psi1;
    s2 += u.psi2;
    sc[i] = u.sc_sum();
  }
  CHECK(rep.random_transfer.mean_psi1 ==
        doctest::Approx(s1 / trials).epsilon(1e-13));
  CHECK(rep.random_transfer.mean_psi2 ==
        doctest::Approx(s2 / trials).epsilon(1e-13));

  // Larger samples stay within sampling noise of this estimate.
  double mean = 0.0;
  for (double v : sc) mean += v;
  mean /= trials;
  double var = 0.0;
  for (double v : sc) var += (v - mean) * (v - mean);
  var /= (trials - 1);
  const double se = std::sqrt(var / trials);
  const ComparisonReport big = run_compare(p, 20000, seed);
  CHECK(std::fabs(big.random_transfer.mean_sc_sum -
                  rep.random_transfer.mean_sc_sum) <= 4.0 * se);
}

TEST_CASE("comparison CSV is deterministic and thread count free") {
  const GameParams p = fig_pin(50);
  const std::string a = compare_csv(p, 400, 42);
  const std::string b = compare_csv(p, 400, 42);
  CHECK(a == b);

  setenv("SCDG_THREADS", "3", 1);
  const std::string c = compare_csv(p, 400, 42);
  setenv("SCDG_THREADS", "1", 1);
  const std::string d = compare_csv(p, 400, 42);
  unsetenv("SCDG_THREADS");
  CHECK(c == a);
  CHECK(d == a);

  const auto lines = split_lines(a);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0].rfind("# random-transfer", 0) == 0);
  CHECK(lines[1].rfind("# rng: splitmix64", 0) == 0);
  CHECK(lines[2] == "strategy,trials,mean_psi1,mean_psi2,mean_psiT,mean_sc_sum");
  CHECK(split_fields(lines[3])[0] == "no-transfer");
  CHECK(split_fields(lines[4])[0] == "spne");
  CHECK(split_fields(lines[5])[0] == "random-transfer");
  CHECK(split_fields(lines[5])[1] == "400");
}

TEST_CASE("closed form survives the oracle on a pinned interior instance") {
  const OracleCheckReport rep = run_oracle_check(fig_pin(70));
  CHECK(rep.all_ok);
  REQUIRE(rep.rows.size() == 5);
  CHECK(rep.rows[0].check == "stage2_tau1");
  CHECK(rep.rows[1].check == "stage2_attacker_payoff");
  CHECK(rep.rows[2].check == "stage1_transfer_amount");
  CHECK(rep.rows[3].check == "stage1_donor_not_worse");
  CHECK(rep.rows[4].check == "stage1_recipient_not_worse");

  const auto lines = split_lines(oracle_check_csv(rep));
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "check,closed_form,oracle,gap,tolerance,status");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_fields(lines[i]);
    REQUIRE(f.size() == 6);
    CHECK(f[5] == "ok");
  }
}

TEST_CASE("oracle check reports numeric instances as out of scope") {
  GameParams q;
  q.tau = 100.0;
  q.c1 = 200.0;
  q.c2 = 150.0;
  q.theta1 = 4;
  q.theta2 = 4;
  const OracleCheckReport rep = run_oracle_check(q);
  CHECK(rep.all_ok);
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].check == "closed_form_applicable");
}

TEST_CASE("worker cap follows the environment variable") {
  setenv("SCDG_THREADS", "5", 1);
  CHECK(thread_cap() == 5);
  setenv("SCDG_THREADS", "999", 1);
  CHECK(thread_cap() == 256);
  setenv("SCDG_THREADS", "0", 1);
  CHECK(thread_cap() >= 1);
  setenv("SCDG_THREADS", "abc", 1);
  CHECK(thread_cap() >= 1);
  unsetenv("SCDG_THREADS");
  CHECK(thread_cap() >= 1);
}

TEST_CASE("parallel runner covers the range and rethrows") {
  setenv("SCDG_THREADS", "4", 1);
  std::atomic<long> sum{0};
  parallel_for(100, [&](int i) { sum += i; });
  CHECK(sum.load() == 4950);

  CHECK_THROWS_AS(
      parallel_for(100,
                   [](int i) {
                     if (i == 57) throw DomainError("worker failure");
                   }),
      DomainError);
  unsetenv("SCDG_THREADS");

  parallel_for(0, [](int) { throw DomainError("never called"); });
}
