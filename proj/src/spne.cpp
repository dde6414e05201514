#include "spne.hpp"

#include <algorithm>
#include <cmath>

#include "oracle.hpp"

namespace scdg {

const char* to_string(Provenance pr) {
  return pr == Provenance::ClosedForm ? "closed-form" : "numeric";
}

ToAllocation allocation_for(const GameParams& p, double d1, double d2,
                            const Regime& r) {
  const double tau = p.tau;
  const double phi1 = p.phi1();
  const double phi2 = p.phi2();
  double tau1 = 0.0;
  double tau2 = 0.0;

  switch (r.tag) {
    case RegimeTag::T3:
      switch (r.detail) {
        case T3Detail::TargetsPhysical:
          tau1 = tau;
          tau2 = 0.0;
          break;
        case T3Detail::TargetsSocial:
          tau1 = 0.0;
          tau2 = tau;
          break;
        default:
          // Indifferent: any split is a best response; report the
          // endowment-proportional one.
          tau1 = tau * (d1 / (d1 + d2));
          tau2 = tau * (d2 / (d1 + d2));
          break;
      }
      break;
    case RegimeTag::T4:
      detail::interior_split(tau, d1, d2, phi1, phi2, &tau1, &tau2);
      break;
    case RegimeTag::T5:
      detail::strong_weak_split(tau, d1, d2, phi1, phi2, &tau1, &tau2);
      break;
    case RegimeTag::T5M:
      detail::strong_weak_split(tau, d2, d1, phi2, phi1, &tau2, &tau1);
      break;
    case RegimeTag::Unclassified:
      throw RegimeError("no closed-form allocation outside T3/T4/T5/T5M");
  }
  return make_allocation(p, tau1, tau2);
}

Utilities expected_utilities(const GameParams& p, const Transfers& t,
                             const ToAllocation& a, PayoffMode mode) {
  const CbgSpec g1{p.theta1, p.v1};
  const CbgSpec g2{p.theta2, p.v2};
  Utilities u;
  u.psi1 = defender_payoff(g1, t.d1, a.tau1, mode);
  u.psi2 = defender_payoff(g2, t.d2, a.tau2, mode);
  u.psiT = p.total_value() - (u.psi1 + u.psi2);
  return u;
}

namespace {

// Transfer that makes the attacker indifferent between the layers when it
// currently prefers the recipient's. Positive iff phi_r / c_r exceeds
// phi_d / c_d.
double t3_equalizing_bound(double phi_d, double c_d, double phi_r,
                           double c_r) {
  return (phi_r * c_d - phi_d * c_r) / (phi_d + phi_r);
}

// Donor amount when both endowments sit below the attacker's interior split.
// Nonpositive when no transfer helps.
double t4_amount(double c_d, double c_r, double phi_d, double phi_r) {
  return (c_d - c_r) / 2.0 -
         ((c_d + c_r) / 2.0) * std::sqrt(phi_d / (phi_d + phi_r));
}

// Donor amount from the strongly defended layer's agency to the weakly
// defended one. Nonpositive when no transfer helps.
double t5_amount(double tau, double c_d, double c_r, double phi_d,
                 double phi_r) {
  const double s = (c_d + c_r) / (2.0 * tau);
  const double xi = (phi_r / phi_d) * (s * s);
  return (xi * c_d - c_r) / (1.0 + xi);
}

}  // namespace

TransferDecision spne_transfer(const GameParams& p, const SolveOptions& opt) {
  validate(p);
  if (!(opt.t3_margin >= 0.0) || opt.t3_margin >= 1.0) {
    throw DomainError("t3_margin must lie in [0, 1)");
  }

  const Transfers zero = make_transfers(p, 0.0, 0.0);
  const Regime base = classify_regime(p, zero);

  if (base.tag == RegimeTag::Unclassified) {
    return TransferDecision{zero, base, false};
  }

  const double phi1 = p.phi1();
  const double phi2 = p.phi2();
  double r12 = 0.0;
  double r21 = 0.0;

  switch (base.tag) {
    case RegimeTag::T3:
      // The untargeted agency tops up the targeted one, stopping short of
      // the point where the attacker would switch layers.
      if (base.detail == T3Detail::TargetsPhysical) {
        const double bound = t3_equalizing_bound(phi2, p.c2, phi1, p.c1);
        if (bound > 0.0) r21 = (1.0 - opt.t3_margin) * bound;
      } else if (base.detail == T3Detail::TargetsSocial) {
        const double bound = t3_equalizing_bound(phi1, p.c1, phi2, p.c2);
        if (bound > 0.0) r12 = (1.0 - opt.t3_margin) * bound;
      }
      break;
    case RegimeTag::T4:
      if (p.c1 > p.c2) {
        r12 = std::max(0.0, t4_amount(p.c1, p.c2, phi1, phi2));
      } else if (p.c2 > p.c1) {
        r21 = std::max(0.0, t4_amount(p.c2, p.c1, phi2, phi1));
      }
      break;
    case RegimeTag::T5:
      r12 = std::max(0.0, t5_amount(p.tau, p.c1, p.c2, phi1, phi2));
      break;
    case RegimeTag::T5M:
      r21 = std::max(0.0, t5_amount(p.tau, p.c2, p.c1, phi2, phi1));
      break;
    case RegimeTag::Unclassified:
      break;
  }

  const Transfers tr = make_transfers(p, r12, r21);
  const Regime post = classify_regime(p, tr);
  if (post.tag == base.tag) {
    return TransferDecision{tr, post, false};
  }
  // The formula pushed the game out of its own regime; hand the instance to
  // the numeric path instead of trusting either classification.
  return TransferDecision{zero, Regime{RegimeTag::Unclassified, T3Detail::None},
                          true};
}

SpneSolution solve(const GameParams& p, const SolveOptions& opt) {
  validate(p);
  const TransferDecision td = spne_transfer(p, opt);
  if (td.regime.tag == RegimeTag::Unclassified) {
    return numeric_spne(p, OracleConfig{});
  }
  SpneSolution s;
  s.transfers = td.transfers;
  s.regime = td.regime;
  s.allocation = allocation_for(p, td.transfers.d1, td.transfers.d2, td.regime);
  s.utilities = expected_utilities(p, td.transfers, s.allocation, opt.mode);
  s.provenance = Provenance::ClosedForm;
  return s;
}

}  // namespace scdg
