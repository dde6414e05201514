#pragma once

#include "params.hpp"

namespace scdg {

// How the per-layer contest payoff is evaluated.
//   Full    exact piecewise expected payoff for theta battlefields
//   LargeN  the limiting linear form (share = ratio / 2 on both sides)
enum class PayoffMode { Full, LargeN };

const char* to_string(PayoffMode m);

// One layer viewed as a standalone contest: theta battlefields each worth
// `value`, total pot phi = theta * value.
struct CbgSpec {
  int theta = 3;
  double value = 1.0;

  double phi() const { return static_cast<double>(theta) * value; }
};

// Expected share of the pot won by the weaker contestant as a function of
// the budget ratio x = weak / strong, x in [0, 1]. Piecewise in x:
//   [0, 1/theta)             0
//   [1/theta, 1/(theta-1))   (2b - 2) / (b theta^2), b = ceil(x / (1 - (theta-1) x))
//   [1/(theta-1), 2/theta)   2/theta - 2/(theta^2 x)
//   [2/theta, 1]             x / 2
// Continuous at the outer band edges; the second band has internal steps at
// the integer jumps of b. Monotone nondecreasing, with range [0, 1/2].
double weak_side_share(double x, int theta);

// Expected defender payoff on one layer. Degenerate budgets resolve first:
// both zero -> phi/2, only attack zero -> phi, only defense zero -> 0.
// Otherwise the weaker side's share is priced by `mode` and the stronger
// side keeps the rest. Homogeneous of degree zero in (defense, attack).
double defender_payoff(const CbgSpec& g, double defense, double attack,
                       PayoffMode mode);

// phi minus the defender payoff, as a single subtraction, so the two
// add back to phi.
double attacker_payoff(const CbgSpec& g, double defense, double attack,
                       PayoffMode mode);

}  // namespace scdg
