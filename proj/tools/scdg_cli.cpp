#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "scdg/scdg.h"

namespace {

struct CommonOpts {
  scdg_params params{0.0, 0.0, 0.0, 1.0, 1.0, 3, 3};
  std::string mode = "large-n";
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts* o) {
  cmd->add_option("--c1", o->params.c1, "agency 1 defense budget")->required();
  cmd->add_option("--c2", o->params.c2, "agency 2 defense budget")->required();
  cmd->add_option("--tau", o->params.tau, "attacker budget")->required();
  cmd->add_option("--v1", o->params.v1, "battlefield value, layer 1");
  cmd->add_option("--v2", o->params.v2, "battlefield value, layer 2");
  cmd->add_option("--theta1", o->params.theta1,
                  "battlefield count, layer 1 (>= 3)");
  cmd->add_option("--theta2", o->params.theta2,
                  "battlefield count, layer 2 (>= 3)");
  cmd->add_option("--mode", o->mode, "payoff mode")
      ->check(CLI::IsMember({"full", "large-n"}));
  cmd->add_option("--out", o->out, "output path (stdout when omitted)");
}

scdg_mode parse_mode(const std::string& name) {
  return name == "full" ? SCDG_MODE_FULL : SCDG_MODE_LARGE_N;
}

int status_to_exit(scdg_status st) {
  switch (st) {
    case SCDG_OK: return 0;
    case SCDG_ERR_ARG:
    case SCDG_ERR_DOMAIN: return 2;
    case SCDG_ERR_INVARIANT:
    case SCDG_ERR_INTERNAL: return 3;
  }
  return 3;
}

int report_failure(scdg_status st) {
  std::fprintf(stderr, "error: %s\n", scdg_last_error());
  return status_to_exit(st);
}

int emit(scdg_text* text, const std::string& path) {
  int rc = 0;
  if (path.empty()) {
    std::fwrite(scdg_text_data(text), 1, scdg_text_size(text), stdout);
  } else {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (f == nullptr) {
      std::fprintf(stderr, "error: cannot open %s for writing\n",
                   path.c_str());
      rc = 3;
    } else {
      std::fwrite(scdg_text_data(text), 1, scdg_text_size(text), f);
      if (std::fclose(f) != 0) {
        std::fprintf(stderr, "error: write to %s failed\n", path.c_str());
        rc = 3;
      }
    }
  }
  scdg_text_free(text);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smart City Defense Game solver"};
  app.require_subcommand(1);

  CommonOpts solve_opts;
  std::string solve_format = "csv";
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "solve one instance and print the record");
  add_common(solve_cmd, &solve_opts);
  solve_cmd->add_option("--format", solve_format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  CommonOpts sweep_opts;
  std::string sweep_param;
  double sweep_from = 0.0;
  double sweep_to = 0.0;
  int sweep_steps = 0;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "solve across one varied parameter");
  add_common(sweep_cmd, &sweep_opts);
  sweep_cmd->add_option("--param", sweep_param, "field to vary")
      ->required()
      ->check(CLI::IsMember(
          {"c1", "c2", "tau", "v1", "v2", "theta1", "theta2"}));
  sweep_cmd->add_option("--from", sweep_from, "first value")->required();
  sweep_cmd->add_option("--to", sweep_to, "last value")->required();
  sweep_cmd->add_option("--steps", sweep_steps, "evaluated points (>= 2)")
      ->required();

  CommonOpts compare_opts;
  int compare_trials = 10000;
  std::uint64_t compare_seed = 42;
  CLI::App* compare_cmd = app.add_subcommand(
      "compare", "Monte Carlo comparison of transfer behaviors");
  add_common(compare_cmd, &compare_opts);
  compare_cmd->add_option("--trials", compare_trials,
                          "random-transfer trials");
  compare_cmd->add_option("--seed", compare_seed, "rng seed");

  CommonOpts oracle_opts;
  int oracle_grid = 2001;
  double oracle_tol = -1.0;
  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle-check", "compare closed forms against the grid oracle");
  add_common(oracle_cmd, &oracle_opts);
  oracle_cmd->add_option("--grid-points", oracle_grid,
                         "grid points (odd, >= 101)");
  oracle_cmd->add_option("--tol", oracle_tol,
                         "absolute tolerance (<= 0 for 1e-6 of total value)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (solve_cmd->parsed()) {
    scdg_text* text = nullptr;
    const scdg_mode mode = parse_mode(solve_opts.mode);
    const scdg_status st =
        solve_format == "json"
            ? scdg_solve_json(&solve_opts.params, mode, &text)
            : scdg_solve_csv(&solve_opts.params, mode, &text);
    if (st != SCDG_OK) return report_failure(st);
    return emit(text, solve_opts.out);
  }

  if (sweep_cmd->parsed()) {
    scdg_text* text = nullptr;
    const scdg_status st = scdg_sweep_csv(
        &sweep_opts.params, sweep_param.c_str(), sweep_from, sweep_to,
        sweep_steps, parse_mode(sweep_opts.mode), &text);
    if (st != SCDG_OK) return report_failure(st);
    return emit(text, sweep_opts.out);
  }

  if (compare_cmd->parsed()) {
    scdg_text* text = nullptr;
    const scdg_status st =
        scdg_compare_csv(&compare_opts.params, compare_trials, compare_seed,
                         parse_mode(compare_opts.mode), &text);
    if (st != SCDG_OK) return report_failure(st);
    return emit(text, compare_opts.out);
  }

  if (oracle_cmd->parsed()) {
    scdg_text* text = nullptr;
    int all_ok = 0;
    const scdg_status st = scdg_oracle_check_csv(
        &oracle_opts.params, oracle_grid, oracle_tol,
        parse_mode(oracle_opts.mode), &all_ok, &text);
    if (st != SCDG_OK) return report_failure(st);
    const int rc = emit(text, oracle_opts.out);
    if (rc != 0) return rc;
    return all_ok ? 0 : 3;
  }

  return 2;
}
