#pragma once

#include <vector>

#include "spne.hpp"

namespace scdg {

// Brute-force search settings.
//   grid_points  points per stage-2 grid and per transfer sweep; odd, >= 101
//   tol_abs      absolute comparison tolerance; any negative value means
//                "derive it as 1e-6 * total layer value"
//   mode         payoff pricing used while searching
struct OracleConfig {
  int grid_points = 2001;
  double tol_abs = -1.0;
  PayoffMode mode = PayoffMode::LargeN;
};

void validate_config(const OracleConfig& cfg);
double resolved_tol(const OracleConfig& cfg, const GameParams& p);

// Attacker payoff at a fully specified state.
double attacker_value(const GameParams& p, double d1, double d2, double tau1,
                      double tau2, PayoffMode mode);

struct ArgmaxResult {
  int index = 0;       // winning index on the plain grid
  double tau1 = 0.0;   // physical-layer attack budget at the optimum
  double value = 0.0;  // attacker payoff there
};

// Attacker best response on the plain grid tau1 = tau * k / (grid_points - 1),
// ties resolved to the smallest k.
ArgmaxResult grid_argmax_to(const GameParams& p, double d1, double d2,
                            const OracleConfig& cfg);

// Plain grid argmax followed by three local re-gridding passes (251 points
// each) inside the winning bracket. Returns the best point seen anywhere, so
// its value never falls below the plain grid's.
ArgmaxResult refined_argmax_to(const GameParams& p, double d1, double d2,
                               const OracleConfig& cfg);

// One donor direction of the stage-1 sweep: r_k = c_donor * k / grid_points,
// attacker best-responding (refined) at every step.
struct DirectionScan {
  int donor = 0;  // 1 or 2
  std::vector<double> amounts;
  std::vector<double> donor_curve;
  std::vector<double> recipient_curve;
  int best_index = 0;           // donor argmax among steps that keep the
                                // recipient at least at its no-transfer level
  int unconstrained_index = 0;  // donor argmax ignoring that floor
};

struct BestTransfer {
  Transfers transfers;
  int direction = 0;       // 0 none, 1 = agency 1 donates, 2 = agency 2 donates
  double donor_gain = 0.0;  // donor improvement over keeping its budget
  DirectionScan scan12;
  DirectionScan scan21;
};

// Sweeps both donor directions and picks the one whose donor strictly gains
// (by more than 1e-12 * total) without hurting the recipient; ties between
// steps go to the smaller transfer.
BestTransfer grid_best_transfer(const GameParams& p, const OracleConfig& cfg);

// Grid solution of the full two-stage game. Always prices payoffs in Full
// mode regardless of cfg.mode. Throws InvariantError if the assembled
// solution fails its own stage checks.
SpneSolution numeric_spne(const GameParams& p, const OracleConfig& cfg = {});

}  // namespace scdg
