#pragma once

#include "blotto.hpp"
#include "params.hpp"

namespace scdg {

// How a solution was obtained.
//   ClosedForm  regime formulas end to end
//   Numeric     grid search fallback (unclassified or demoted instances)
enum class Provenance { ClosedForm, Numeric };

const char* to_string(Provenance pr);

// Expected payoffs of the three players. psiT is the attacker; the defender
// pair's welfare is sc_sum().
struct Utilities {
  double psi1 = 0.0;
  double psi2 = 0.0;
  double psiT = 0.0;

  double sc_sum() const { return psi1 + psi2; }
};

struct SpneSolution {
  Transfers transfers;
  ToAllocation allocation;
  Regime regime;
  Utilities utilities;
  Provenance provenance = Provenance::ClosedForm;
};

struct SolveOptions {
  PayoffMode mode = PayoffMode::LargeN;
  // The equalizing bound itself flips the attacker's target; the donor holds
  // back this fraction of it.
  double t3_margin = 1e-6;
};

// Attacker's equilibrium split against endowments (d1, d2) classified as
// `r`. Throws RegimeError when r is Unclassified.
ToAllocation allocation_for(const GameParams& p, double d1, double d2,
                            const Regime& r);

// Per-layer contest payoffs at a fully specified state. psiT is derived from
// value conservation, so psi1 + psi2 + psiT reproduces the total exactly up
// to one rounding.
Utilities expected_utilities(const GameParams& p, const Transfers& t,
                             const ToAllocation& a, PayoffMode mode);

// Outcome of the first stage.
struct TransferDecision {
  Transfers transfers;
  Regime regime;         // classification at the post-transfer endowments
  bool demoted = false;  // closed form abandoned: regime changed under it
};

// Stage-1 equilibrium transfer: classify the no-transfer endowments, apply
// that regime's transfer rule, and confirm the regime survives the transfer.
// On a mismatch the decision reverts to zero transfer and reports
// Unclassified so the caller can fall back to the numeric path.
TransferDecision spne_transfer(const GameParams& p,
                               const SolveOptions& opt = {});

// Full two-stage solution. Classified instances use the closed forms;
// everything else goes through the grid oracle (which always prices payoffs
// in Full mode).
SpneSolution solve(const GameParams& p, const SolveOptions& opt = {});

}  // namespace scdg
