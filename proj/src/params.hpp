#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace scdg {

// Invalid game description or configuration (maps to exit code 2 in the CLI).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation asked for a closed form outside the classified regimes.
class RegimeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Internal consistency check failed (maps to exit code 3 in the CLI).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// One game instance.
//   c1, c2     pre-transfer defense budgets of the two allied agencies
//              (agency 1 defends the physical layer, agency 2 the social one)
//   tau        attacker budget, split across the two layers in stage 2
//   theta_i    battlefield count of layer i (>= 3)
//   v_i        value of one battlefield on layer i
struct GameParams {
  double c1 = 0.0;
  double c2 = 0.0;
  double tau = 0.0;
  double v1 = 1.0;
  double v2 = 1.0;
  int theta1 = 3;
  int theta2 = 3;

  double phi1() const { return static_cast<double>(theta1) * v1; }
  double phi2() const { return static_cast<double>(theta2) * v2; }
  double total_value() const { return phi1() + phi2(); }
};

// Throws DomainError naming the violated field.
void validate(const GameParams& p);

// Swapped-layer view (agency/layer 1 <-> 2). Used by mirror code paths and
// symmetry tests.
GameParams swap_layers(const GameParams& p);

// Stage-1 net budget transfer between the two agencies. Normalized so at
// most one direction is nonzero; d1/d2 are the post-transfer endowments and
// conserve c1 + c2.
struct Transfers {
  double r12 = 0.0;
  double r21 = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

// Builds the normalized net transfer and post-transfer endowments.
// Throws DomainError if a donor overdraws its budget or an amount is invalid.
Transfers make_transfers(const GameParams& p, double r12, double r21);

// Stage-2 attacker split. tau1 + tau2 must equal tau within 1e-9 * max(1, tau).
struct ToAllocation {
  double tau1 = 0.0;
  double tau2 = 0.0;
};

ToAllocation make_allocation(const GameParams& p, double tau1, double tau2);

// Closed-form applicability regions for the equilibrium formulas.
//   T3    attacker weaker than both post-transfer defenses; corner allocation
//   T4    combined defense below the attacker budget; interior split with the
//         attacker dominant on both layers
//   T5    defense dominant on the physical layer, attacker dominant on the
//         social layer at the optimum
//   T5M   the mirror of T5 (layers exchanged)
enum class RegimeTag { T3, T4, T5, T5M, Unclassified };

// For T3, which layer the attacker concentrates on.
enum class T3Detail { None, TargetsPhysical, TargetsSocial, Indifferent };

struct Regime {
  RegimeTag tag = RegimeTag::Unclassified;
  T3Detail detail = T3Detail::None;
};

const char* to_string(RegimeTag t);
const char* to_string(T3Detail d);

// Strict a < b with relative slack 1e-12; boundary ties fail, which makes
// boundary instances fall through to Unclassified. NaN never passes.
bool strictly_less(double a, double b);

// |a - b| <= 1e-12 * max(|a|, |b|).
bool nearly_equal_rel(double a, double b);

// Deterministic and total: every valid input maps to exactly one tag.
// Checks T3, then T4, then T5, then T5M; the condition sets are analytically
// disjoint, so the order only matters under floating-point ties.
Regime classify_regime(const GameParams& p, double d1, double d2);
Regime classify_regime(const GameParams& p, const Transfers& t);

namespace detail {

// Shared by classification and the closed-form allocations so that the
// membership test and the formula it guards evaluate the same expressions.

inline bool in_open_band(double ratio, int theta) {
  return strictly_less(2.0 / static_cast<double>(theta), ratio) &&
         strictly_less(ratio, 1.0);
}

// Interior split when the attacker dominates both layers. Weight form keeps
// the result exactly symmetric under a layer swap.
inline void interior_split(double tau, double d1, double d2, double phi1,
                           double phi2, double* tau1, double* tau2) {
  const double w1 = std::sqrt(phi1 * d1);
  const double w2 = std::sqrt(phi2 * d2);
  const double w = w1 + w2;
  *tau1 = tau * (w1 / w);
  *tau2 = tau * (w2 / w);
}

// Split when the defense of layer "s" dominates and the attacker dominates
// layer "w": the attacker puts delta on the weak layer, the rest on the
// strong one.
inline void strong_weak_split(double tau, double ds, double dw, double phis,
                              double phiw, double* tau_s, double* tau_w) {
  const double delta = std::sqrt(((phiw * ds) * dw) / phis);
  *tau_w = delta;
  *tau_s = tau - delta;
}

inline bool strong_weak_conditions(double tau, double ds, double dw,
                                   double phis, double phiw, int thetas,
                                   int thetaw) {
  double ts = 0.0, tw = 0.0;
  strong_weak_split(tau, ds, dw, phis, phiw, &ts, &tw);
  return in_open_band(ts / ds, thetas) && in_open_band(dw / tw, thetaw);
}

}  // namespace detail

}  // namespace scdg
