#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace scdg {

namespace {

constexpr double kStrictSlack = 1e-12;  // of total value
constexpr int kRefineRounds = 3;
constexpr int kRefinePoints = 251;

}  // namespace

void validate_config(const OracleConfig& cfg) {
  if (cfg.grid_points < 101 || cfg.grid_points % 2 == 0) {
    throw DomainError("grid_points must be odd and >= 101");
  }
  if (!std::isfinite(cfg.tol_abs) || cfg.tol_abs == 0.0) {
    throw DomainError("tol_abs must be positive or negative for automatic");
  }
}

double resolved_tol(const OracleConfig& cfg, const GameParams& p) {
  return cfg.tol_abs > 0.0 ? cfg.tol_abs : 1e-6 * p.total_value();
}

double attacker_value(const GameParams& p, double d1, double d2, double tau1,
                      double tau2, PayoffMode mode) {
  const CbgSpec g1{p.theta1, p.v1};
  const CbgSpec g2{p.theta2, p.v2};
  return p.total_value() - (defender_payoff(g1, d1, tau1, mode) +
                            defender_payoff(g2, d2, tau2, mode));
}

ArgmaxResult grid_argmax_to(const GameParams& p, double d1, double d2,
                            const OracleConfig& cfg) {
  validate(p);
  validate_config(cfg);
  const int n = p.tau == 0.0 ? 1 : cfg.grid_points;
  ArgmaxResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    const double tau1 =
        n == 1 ? 0.0 : p.tau * (static_cast<double>(k) / (n - 1));
    const double v = attacker_value(p, d1, d2, tau1, p.tau - tau1, cfg.mode);
    if (v > best.value) {
      best.index = k;
      best.tau1 = tau1;
      best.value = v;
    }
  }
  return best;
}

ArgmaxResult refined_argmax_to(const GameParams& p, double d1, double d2,
                               const OracleConfig& cfg) {
  ArgmaxResult best = grid_argmax_to(p, d1, d2, cfg);
  if (p.tau == 0.0) return best;

  const double step = p.tau / (cfg.grid_points - 1);
  double lo = std::max(0.0, best.tau1 - step);
  double hi = std::min(p.tau, best.tau1 + step);

  for (int round = 0; round < kRefineRounds; ++round) {
    double round_t = lo;
    double round_v = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < kRefinePoints; ++j) {
      const double t =
          lo + (hi - lo) * (static_cast<double>(j) / (kRefinePoints - 1));
      const double v = attacker_value(p, d1, d2, t, p.tau - t, cfg.mode);
      if (v > round_v) {
        round_v = v;
        round_t = t;
      }
    }
    if (round_v > best.value) {
      best.value = round_v;
      best.tau1 = round_t;
    }
    const double rstep = (hi - lo) / (kRefinePoints - 1);
    const double nlo = std::max(lo, round_t - rstep);
    const double nhi = std::min(hi, round_t + rstep);
    lo = nlo;
    hi = nhi;
  }
  return best;
}

namespace {

// Donor payoff curve over the transfer sweep, attacker best-responding at
// every step.
DirectionScan scan_direction(const GameParams& p, int donor,
                             const OracleConfig& cfg) {
  DirectionScan s;
  s.donor = donor;
  const double c_d = donor == 1 ? p.c1 : p.c2;
  const int n = c_d == 0.0 ? 1 : cfg.grid_points;
  s.amounts.reserve(n);
  s.donor_curve.reserve(n);
  s.recipient_curve.reserve(n);

  for (int k = 0; k < n; ++k) {
    const double r = c_d * (static_cast<double>(k) / n);
    const Transfers t = donor == 1 ? make_transfers(p, r, 0.0)
                                   : make_transfers(p, 0.0, r);
    const ArgmaxResult resp = refined_argmax_to(p, t.d1, t.d2, cfg);
    const ToAllocation a = make_allocation(p, resp.tau1, p.tau - resp.tau1);
    const Utilities u = expected_utilities(p, t, a, cfg.mode);
    s.amounts.push_back(r);
    s.donor_curve.push_back(donor == 1 ? u.psi1 : u.psi2);
    s.recipient_curve.push_back(donor == 1 ? u.psi2 : u.psi1);
  }

  const double floor = s.recipient_curve[0] - kStrictSlack * p.total_value();
  double best_ok = -std::numeric_limits<double>::infinity();
  double best_any = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    if (s.donor_curve[k] > best_any) {
      best_any = s.donor_curve[k];
      s.unconstrained_index = k;
    }
    if (s.recipient_curve[k] >= floor && s.donor_curve[k] > best_ok) {
      best_ok = s.donor_curve[k];
      s.best_index = k;
    }
  }
  return s;
}

}  // namespace

BestTransfer grid_best_transfer(const GameParams& p, const OracleConfig& cfg) {
  validate(p);
  validate_config(cfg);

  BestTransfer bt;
  bt.scan12 = scan_direction(p, 1, cfg);
  bt.scan21 = scan_direction(p, 2, cfg);

  const double thr = kStrictSlack * p.total_value();
  const double gain12 =
      bt.scan12.donor_curve[bt.scan12.best_index] - bt.scan12.donor_curve[0];
  const double gain21 =
      bt.scan21.donor_curve[bt.scan21.best_index] - bt.scan21.donor_curve[0];

  if (gain12 > thr && gain12 >= gain21) {
    bt.direction = 1;
    bt.donor_gain = gain12;
    bt.transfers = make_transfers(p, bt.scan12.amounts[bt.scan12.best_index], 0.0);
  } else if (gain21 > thr) {
    bt.direction = 2;
    bt.donor_gain = gain21;
    bt.transfers = make_transfers(p, 0.0, bt.scan21.amounts[bt.scan21.best_index]);
  } else {
    bt.direction = 0;
    bt.donor_gain = 0.0;
    bt.transfers = make_transfers(p, 0.0, 0.0);
  }
  return bt;
}

SpneSolution numeric_spne(const GameParams& p, const OracleConfig& cfg_in) {
  validate(p);
  validate_config(cfg_in);
  OracleConfig cfg = cfg_in;
  cfg.mode = PayoffMode::Full;
  const double tol = resolved_tol(cfg, p);

  const BestTransfer bt = grid_best_transfer(p, cfg);
  const Transfers& tr = bt.transfers;
  const ArgmaxResult resp = refined_argmax_to(p, tr.d1, tr.d2, cfg);
  const ToAllocation alloc = make_allocation(p, resp.tau1, p.tau - resp.tau1);
  const Utilities u = expected_utilities(p, tr, alloc, PayoffMode::Full);

  // Stage-2 sanity: the returned split must support at least the plain grid
  // optimum for the attacker.
  const ArgmaxResult plain = grid_argmax_to(p, tr.d1, tr.d2, cfg);
  if (resp.value + tol < plain.value) {
    throw InvariantError("stage-2 refinement lost the grid optimum");
  }

  // Stage-1 sanity: the selected transfer may not hurt either party relative
  // to keeping the budgets.
  if (bt.direction != 0) {
    const DirectionScan& s = bt.direction == 1 ? bt.scan12 : bt.scan21;
    if (s.donor_curve[s.best_index] + tol < s.donor_curve[0]) {
      throw InvariantError("selected transfer hurts the donor");
    }
    if (s.recipient_curve[s.best_index] + tol < s.recipient_curve[0]) {
      throw InvariantError("selected transfer hurts the recipient");
    }
  }

  SpneSolution out;
  out.transfers = tr;
  out.allocation = alloc;
  out.utilities = u;
  out.regime = classify_regime(p, tr);
  out.provenance = Provenance::Numeric;
  return out;
}

}  // namespace scdg
