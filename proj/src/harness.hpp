#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "spne.hpp"

namespace scdg {

// Parameter axes a sweep can vary.
enum class SweepField { C1, C2, Tau, V1, V2, Theta1, Theta2 };

const char* to_string(SweepField f);
bool sweep_field_from_name(const std::string& name, SweepField* out);
bool payoff_mode_from_name(const std::string& name, PayoffMode* out);

struct SweepSpec {
  SweepField field = SweepField::C1;
  double from = 0.0;
  double to = 0.0;  // must exceed `from`
  int steps = 2;    // evaluated points, endpoints included, >= 2
};

// One row per step. Steps whose parameters fail validation keep their row:
// the error column carries the message and the numeric cells stay empty.
std::string run_sweep_csv(const GameParams& base, const SweepSpec& spec,
                          const SolveOptions& opt = {});

// Single-instance solution as a one-record CSV (with header) or a flat JSON
// object.
std::string solve_csv(const GameParams& p, const SolveOptions& opt = {});
std::string solve_json(const GameParams& p, const SolveOptions& opt = {});

// Expected payoffs when play proceeds from the given post-transfer
// endowments: classified endowments get the closed-form attacker response
// priced in `mode`; anything else gets a grid response priced in Full.
Utilities evaluate_state(const GameParams& p, const Transfers& t,
                         PayoffMode mode);

// Monte Carlo comparison of stage-1 behaviors on one instance.
struct StrategyStats {
  double mean_psi1 = 0.0;
  double mean_psi2 = 0.0;
  double mean_psiT = 0.0;
  double mean_sc_sum = 0.0;
};

struct ComparisonReport {
  StrategyStats no_transfer;      // both agencies keep their budgets
  StrategyStats spne;             // equilibrium transfer
  StrategyStats random_transfer;  // uniform direction, uniform feasible amount
  int trials = 0;
  std::uint64_t seed = 0;
};

ComparisonReport run_compare(const GameParams& p, int trials,
                             std::uint64_t seed, const SolveOptions& opt = {});
std::string compare_csv(const GameParams& p, int trials, std::uint64_t seed,
                        const SolveOptions& opt = {});

// Closed form versus grid oracle on one instance.
struct OracleCheckRow {
  std::string check;
  double closed_form = 0.0;
  double oracle = 0.0;
  double gap = 0.0;
  double tolerance = 0.0;
  bool ok = true;
};

struct OracleCheckReport {
  std::vector<OracleCheckRow> rows;
  bool all_ok = true;
};

OracleCheckReport run_oracle_check(const GameParams& p,
                                   const OracleConfig& cfg = {});
std::string oracle_check_csv(const OracleCheckReport& rep);
std::string oracle_check_csv(const GameParams& p,
                             const OracleConfig& cfg = {});

// Shortest form with 12 significant digits; used for every CSV cell.
std::string format_sig(double x);

// Worker count: SCDG_THREADS when set (clamped to >= 1), else the hardware
// concurrency. Results never depend on it; only wall time does.
int thread_cap();

// Runs fn(0..n-1) across thread_cap() workers in contiguous chunks and
// rethrows the first worker exception.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace scdg
