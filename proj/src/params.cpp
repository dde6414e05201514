#include "params.hpp"

#include <algorithm>
#include <cmath>

namespace scdg {

namespace {

constexpr double kRelTol = 1e-12;

void require(bool ok, const char* msg) {
  if (!ok) throw DomainError(msg);
}

}  // namespace

void validate(const GameParams& p) {
  require(std::isfinite(p.c1) && p.c1 >= 0.0, "c1 must be finite and >= 0");
  require(std::isfinite(p.c2) && p.c2 >= 0.0, "c2 must be finite and >= 0");
  require(std::isfinite(p.tau) && p.tau >= 0.0, "tau must be finite and >= 0");
  require(std::isfinite(p.v1) && p.v1 > 0.0, "v1 must be finite and > 0");
  require(std::isfinite(p.v2) && p.v2 > 0.0, "v2 must be finite and > 0");
  require(p.theta1 >= 3, "theta1 must be an integer >= 3");
  require(p.theta2 >= 3, "theta2 must be an integer >= 3");
  require(p.c1 > 0.0 || p.c2 > 0.0 || p.tau > 0.0,
          "at least one of c1 c2 tau must be > 0");
  require(std::isfinite(p.phi1()) && std::isfinite(p.phi2()),
          "layer values theta*v must be finite");
}

GameParams swap_layers(const GameParams& p) {
  GameParams q = p;
  std::swap(q.c1, q.c2);
  std::swap(q.v1, q.v2);
  std::swap(q.theta1, q.theta2);
  return q;
}

Transfers make_transfers(const GameParams& p, double r12, double r21) {
  require(std::isfinite(r12) && r12 >= 0.0, "r12 must be finite and >= 0");
  require(std::isfinite(r21) && r21 >= 0.0, "r21 must be finite and >= 0");
  Transfers t;
  const double net = r12 - r21;
  if (net >= 0.0) {
    t.r12 = net;
  } else {
    t.r21 = -net;
  }
  require(t.r12 <= p.c1, "transfer r12 exceeds donor budget c1");
  require(t.r21 <= p.c2, "transfer r21 exceeds donor budget c2");
  t.d1 = (p.c1 - t.r12) + t.r21;
  t.d2 = (p.c2 - t.r21) + t.r12;
  return t;
}

ToAllocation make_allocation(const GameParams& p, double tau1, double tau2) {
  require(std::isfinite(tau1) && tau1 >= 0.0, "tau1 must be finite and >= 0");
  require(std::isfinite(tau2) && tau2 >= 0.0, "tau2 must be finite and >= 0");
  const double slack = 1e-9 * std::max(1.0, p.tau);
  require(std::fabs((tau1 + tau2) - p.tau) <= slack,
          "tau1 + tau2 must equal tau");
  return ToAllocation{tau1, tau2};
}

const char* to_string(RegimeTag t) {
  switch (t) {
    case RegimeTag::T3: return "T3";
    case RegimeTag::T4: return "T4";
    case RegimeTag::T5: return "T5";
    case RegimeTag::T5M: return "T5M";
    case RegimeTag::Unclassified: return "Unclassified";
  }
  return "Unclassified";
}

const char* to_string(T3Detail d) {
  switch (d) {
    case T3Detail::None: return "";
    case T3Detail::TargetsPhysical: return "targets-physical";
    case T3Detail::TargetsSocial: return "targets-social";
    case T3Detail::Indifferent: return "indifferent";
  }
  return "";
}

bool strictly_less(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) return false;
  if (std::isinf(a) || std::isinf(b)) return a < b;
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return b - a > kRelTol * scale;
}

bool nearly_equal_rel(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) return false;
  if (a == b) return true;
  if (std::isinf(a) || std::isinf(b)) return false;
  return std::fabs(a - b) <= kRelTol * std::max(std::fabs(a), std::fabs(b));
}

Regime classify_regime(const GameParams& p, double d1, double d2) {
  using detail::in_open_band;
  const double tau = p.tau;
  const double phi1 = p.phi1();
  const double phi2 = p.phi2();

  // T3: attacker budget is inside the band on both layers at once.
  if (in_open_band(tau / d1, p.theta1) && in_open_band(tau / d2, p.theta2)) {
    Regime out{RegimeTag::T3, T3Detail::Indifferent};
    const double a1 = phi1 / d1;
    const double a2 = phi2 / d2;
    if (!nearly_equal_rel(a1, a2)) {
      out.detail = a1 > a2 ? T3Detail::TargetsPhysical : T3Detail::TargetsSocial;
    }
    return out;
  }

  // T4: combined defense below the attacker budget, and the candidate
  // interior split leaves the attacker dominant on both layers.
  if (strictly_less(d1 + d2, tau)) {
    double t1 = 0.0, t2 = 0.0;
    detail::interior_split(tau, d1, d2, phi1, phi2, &t1, &t2);
    if (in_open_band(d1 / t1, p.theta1) && in_open_band(d2 / t2, p.theta2)) {
      return Regime{RegimeTag::T4, T3Detail::None};
    }
  }

  // T5: physical defense dominant, social side attacker dominant.
  if (detail::strong_weak_conditions(tau, d1, d2, phi1, phi2, p.theta1,
                                     p.theta2)) {
    return Regime{RegimeTag::T5, T3Detail::None};
  }
  // T5M: the mirrored pattern.
  if (detail::strong_weak_conditions(tau, d2, d1, phi2, phi1, p.theta2,
                                     p.theta1)) {
    return Regime{RegimeTag::T5M, T3Detail::None};
  }

  return Regime{RegimeTag::Unclassified, T3Detail::None};
}

Regime classify_regime(const GameParams& p, const Transfers& t) {
  return classify_regime(p, t.d1, t.d2);
}

}  // namespace scdg
