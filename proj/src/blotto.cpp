#include "blotto.hpp"

#include <cmath>

namespace scdg {

const char* to_string(PayoffMode m) {
  return m == PayoffMode::Full ? "full" : "large-n";
}

double weak_side_share(double x, int theta) {
  if (!(x >= 0.0) || x > 1.0) throw DomainError("ratio must lie in [0, 1]");
  if (theta < 3) throw DomainError("theta must be an integer >= 3");
  const double th = static_cast<double>(theta);

  if (x < 1.0 / th) return 0.0;

  if (x < 1.0 / (th - 1.0)) {
    const double denom = 1.0 - (th - 1.0) * x;
    if (denom > 0.0) {
      const double b = std::ceil(x / denom);
      if (std::isfinite(b) && b >= 1.0) {
        return (2.0 * b - 2.0) / (b * (th * th));
      }
    }
    // Right at the band edge the split count b blows up; its values approach
    // the next band's expression, so evaluate that instead.
    return 2.0 / th - 2.0 / ((th * th) * x);
  }

  if (x < 2.0 / th) return 2.0 / th - 2.0 / ((th * th) * x);

  return x / 2.0;
}

double defender_payoff(const CbgSpec& g, double defense, double attack,
                       PayoffMode mode) {
  if (g.theta < 3) throw DomainError("theta must be an integer >= 3");
  if (!std::isfinite(g.value) || g.value <= 0.0) {
    throw DomainError("battlefield value must be finite and > 0");
  }
  if (!std::isfinite(defense) || defense < 0.0) {
    throw DomainError("defense budget must be finite and >= 0");
  }
  if (!std::isfinite(attack) || attack < 0.0) {
    throw DomainError("attack budget must be finite and >= 0");
  }

  const double phi = g.phi();
  if (attack == 0.0 && defense == 0.0) return 0.5 * phi;
  if (attack == 0.0) return phi;
  if (defense == 0.0) return 0.0;

  if (defense < attack) {
    const double x = defense / attack;
    const double share =
        mode == PayoffMode::Full ? weak_side_share(x, g.theta) : 0.5 * x;
    return phi * share;
  }
  // Defender at least as strong; the attacker is the weak side. Using the
  // ratio attack/defense directly makes the two orientations of the same
  // budget pair share one rounding path.
  const double x = attack / defense;
  const double share =
      mode == PayoffMode::Full ? weak_side_share(x, g.theta) : 0.5 * x;
  return phi - phi * share;
}

double attacker_payoff(const CbgSpec& g, double defense, double attack,
                       PayoffMode mode) {
  return g.phi() - defender_payoff(g, defense, attack, mode);
}

}  // namespace scdg
