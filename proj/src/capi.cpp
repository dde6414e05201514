#include "scdg/scdg.h"

#include <exception>
#include <functional>
#include <new>
#include <string>

#include "harness.hpp"
#include "oracle.hpp"
#include "spne.hpp"

struct scdg_text {
  std::string body;
};

namespace {

thread_local std::string g_last_error;

scdg_status fail(scdg_status st, const char* msg) {
  g_last_error = msg;
  return st;
}

scdg_status run(const std::function<scdg_status()>& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const scdg::DomainError& e) {
    return fail(SCDG_ERR_DOMAIN, e.what());
  } catch (const scdg::InvariantError& e) {
    return fail(SCDG_ERR_INVARIANT, e.what());
  } catch (const std::exception& e) {
    return fail(SCDG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SCDG_ERR_INTERNAL, "unknown failure");
  }
}

bool to_params(const scdg_params* in, scdg::GameParams* out) {
  if (in == nullptr) return false;
  out->c1 = in->c1;
  out->c2 = in->c2;
  out->tau = in->tau;
  out->v1 = in->v1;
  out->v2 = in->v2;
  out->theta1 = in->theta1;
  out->theta2 = in->theta2;
  return true;
}

bool to_mode(scdg_mode in, scdg::PayoffMode* out) {
  switch (in) {
    case SCDG_MODE_FULL: *out = scdg::PayoffMode::Full; return true;
    case SCDG_MODE_LARGE_N: *out = scdg::PayoffMode::LargeN; return true;
  }
  return false;
}

scdg_regime from_regime(scdg::RegimeTag t) {
  switch (t) {
    case scdg::RegimeTag::T3: return SCDG_REGIME_T3;
    case scdg::RegimeTag::T4: return SCDG_REGIME_T4;
    case scdg::RegimeTag::T5: return SCDG_REGIME_T5;
    case scdg::RegimeTag::T5M: return SCDG_REGIME_T5M;
    case scdg::RegimeTag::Unclassified: return SCDG_REGIME_UNCLASSIFIED;
  }
  return SCDG_REGIME_UNCLASSIFIED;
}

scdg_status emit_text(std::string body, scdg_text** out) {
  auto* t = new (std::nothrow) scdg_text{std::move(body)};
  if (t == nullptr) return fail(SCDG_ERR_INTERNAL, "allocation failed");
  *out = t;
  return SCDG_OK;
}

}  // namespace

const char* scdg_text_data(const scdg_text* t) {
  return t == nullptr ? "" : t->body.c_str();
}

size_t scdg_text_size(const scdg_text* t) {
  return t == nullptr ? 0 : t->body.size();
}

void scdg_text_free(scdg_text* t) { delete t; }

scdg_status scdg_validate(const scdg_params* p) {
  return run([&]() -> scdg_status {
    scdg::GameParams gp;
    if (!to_params(p, &gp)) return fail(SCDG_ERR_ARG, "params is null");
    scdg::validate(gp);
    return SCDG_OK;
  });
}

scdg_status scdg_solve(const scdg_params* p, scdg_mode mode,
                       scdg_solution* out) {
  return run([&]() -> scdg_status {
    scdg::GameParams gp;
    if (!to_params(p, &gp)) return fail(SCDG_ERR_ARG, "params is null");
    if (out == nullptr) return fail(SCDG_ERR_ARG, "out is null");
    scdg::SolveOptions opt;
    if (!to_mode(mode, &opt.mode)) return fail(SCDG_ERR_ARG, "bad mode");
    const scdg::SpneSolution s = scdg::solve(gp, opt);
    out->r12 = s.transfers.r12;
    out->r21 = s.transfers.r21;
    out->d1 = s.transfers.d1;
    out->d2 = s.transfers.d2;
    out->tau1 = s.allocation.tau1;
    out->tau2 = s.allocation.tau2;
    out->psi1 = s.utilities.psi1;
    out->psi2 = s.utilities.psi2;
    out->psiT = s.utilities.psiT;
    out->sc_sum = s.utilities.sc_sum();
    out->regime = from_regime(s.regime.tag);
    out->provenance = s.provenance == scdg::Provenance::ClosedForm
                          ? SCDG_PROVENANCE_CLOSED_FORM
                          : SCDG_PROVENANCE_NUMERIC;
    return SCDG_OK;
  });
}

scdg_status scdg_solve_csv(const scdg_params* p, scdg_mode mode,
                           scdg_text** out) {
  return run([&]() -> scdg_status {
    scdg::GameParams gp;
    if (!to_params(p, &gp)) return fail(SCDG_ERR_ARG, "params is null");
    if (out == nullptr) return fail(SCDG_ERR_ARG, "out is null");
    scdg::SolveOptions opt;
    if (!to_mode(mode, &opt.mode)) return fail(SCDG_ERR_ARG, "bad mode");
    return emit_text(scdg::solve_csv(gp, opt), out);
  });
}

scdg_status scdg_solve_json(const scdg_params* p, scdg_mode mode,
                            scdg_text** out) {
  return run([&]() -> scdg_status {
    scdg::GameParams gp;
    if (!to_params(p, &gp)) return fail(SCDG_ERR_ARG, "params is null");
    if (out == nullptr) return fail(SCDG_ERR_ARG, "out is null");
    scdg::SolveOptions opt;
    if (!to_mode(mode, &opt.mode)) return fail(SCDG_ERR_ARG, "bad mode");
    return emit_text(scdg::solve_json(gp, opt), out);
  });
}

scdg_status scdg_sweep_csv(const scdg_params* p, const char* field,
                           double from, double to, int steps, scdg_mode mode,
                           scdg_text** out) {
  return run([&]() -> scdg_status {
    scdg::GameParams gp;
    if (!to_params(p, &gp)) return fail(SCDG_ERR_ARG, "params is null");
    if (field == nullptr) return fail(SCDG_ERR_ARG, "field is null");
    if (out == nullptr) return fail(SCDG_ERR_ARG, "out is null");
    scdg::SweepSpec spec;
    if (!scdg::sweep_field_from_name(field, &spec.field)) {
      return fail(SCDG_ERR_ARG, "unknown sweep field");
    }
    spec.from = from;
    spec.to = to;
    spec.steps = steps;
    scdg::SolveOptions opt;
    if (!to_mode(mode, &opt.mode)) return fail(SCDG_ERR_ARG, "bad mode");
    return emit_text(scdg::run_sweep_csv(gp, spec, opt), out);
  });
}

scdg_status scdg_compare_csv(const scdg_params* p, int trials, uint64_t seed,
                             scdg_mode mode, scdg_text** out) {
  return run([&]() -> scdg_status {
    scdg::GameParams gp;
    if (!to_params(p, &gp)) return fail(SCDG_ERR_ARG, "params is null");
    if (out == nullptr) return fail(SCDG_ERR_ARG, "out is null");
    scdg::SolveOptions opt;
    if (!to_mode(mode, &opt.mode)) return fail(SCDG_ERR_ARG, "bad mode");
    return emit_text(scdg::compare_csv(gp, trials, seed, opt), out);
  });
}

scdg_status scdg_oracle_check_csv(const scdg_params* p, int grid_points,
                                  double tol, scdg_mode mode, int* all_ok,
                                  scdg_text** out) {
  return run([&]() -> scdg_status {
    scdg::GameParams gp;
    if (!to_params(p, &gp)) return fail(SCDG_ERR_ARG, "params is null");
    if (all_ok == nullptr) return fail(SCDG_ERR_ARG, "all_ok is null");
    if (out == nullptr) return fail(SCDG_ERR_ARG, "out is null");
    scdg::OracleConfig cfg;
    cfg.grid_points = grid_points;
    cfg.tol_abs = tol <= 0.0 ? -1.0 : tol;
    if (!to_mode(mode, &cfg.mode)) return fail(SCDG_ERR_ARG, "bad mode");
    const scdg::OracleCheckReport rep = scdg::run_oracle_check(gp, cfg);
    *all_ok = rep.all_ok ? 1 : 0;
    return emit_text(scdg::oracle_check_csv(rep), out);
  });
}

scdg_status scdg_defender_payoff(int theta, double value, double defense,
                                 double attack, scdg_mode mode, double* out) {
  return run([&]() -> scdg_status {
    if (out == nullptr) return fail(SCDG_ERR_ARG, "out is null");
    scdg::PayoffMode m;
    if (!to_mode(mode, &m)) return fail(SCDG_ERR_ARG, "bad mode");
    *out = scdg::defender_payoff(scdg::CbgSpec{theta, value}, defense, attack,
                                 m);
    return SCDG_OK;
  });
}

const char* scdg_last_error(void) { return g_last_error.c_str(); }

const char* scdg_regime_name(scdg_regime r) {
  switch (r) {
    case SCDG_REGIME_T3: return "T3";
    case SCDG_REGIME_T4: return "T4";
    case SCDG_REGIME_T5: return "T5";
    case SCDG_REGIME_T5M: return "T5M";
    case SCDG_REGIME_UNCLASSIFIED: return "Unclassified";
  }
  return "Unclassified";
}

const char* scdg_version(void) { return "1.0.0"; }
