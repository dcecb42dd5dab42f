// syntomo: batch surface over the truncated p-adic ring pipeline.
// Exit codes: 0 all checks pass, 1 some assertion failed (report still
// written), 2 invalid configuration.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "syntomo/config.hpp"

namespace {

int g_log_level = 0;  // from SYNTOMO_LOG: 0 quiet, 1 info

void log_info(const std::string& msg) {
  if (g_log_level >= 1) std::fprintf(stderr, "syntomo: %s\n", msg.c_str());
}

struct CommonOpts {
  std::string config_path;
  std::string suite;
  std::string out;
  std::string format;
  long long seed = -1;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "TOML configuration file");
  cmd->add_option("--out", o.out, "report output path (default: stdout)");
  cmd->add_option("--format", o.format, "report format: json or table");
  cmd->add_option("--seed", o.seed, "seed for randomized property checks");
  cmd->add_option("--threads", o.threads, "worker threads (execution is sequential)");
}

syntomo::RunConfig make_config(const CommonOpts& o) {
  syntomo::RunConfig rc =
      o.config_path.empty() ? syntomo::parse_run_config("") : syntomo::load_run_config(o.config_path);
  if (!o.suite.empty()) rc.suite = o.suite;
  if (!o.out.empty()) rc.out = o.out;
  if (!o.format.empty()) rc.format = o.format;
  if (o.seed >= 0) rc.pipeline.seed = (unsigned)o.seed;
  if (o.threads > 0) rc.threads = o.threads;
  rc.validate();
  return rc;
}

int emit(const syntomo::SuiteReport& rep, const syntomo::RunConfig& rc) {
  std::string text = syntomo::render_report(rep.doc, rc.format);
  if (rc.out.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    syntomo::write_report_atomic(rc.out, text);
    log_info("report written to " + rc.out);
  }
  return rep.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* lv = std::getenv("SYNTOMO_LOG")) g_log_level = std::atoi(lv);

  CLI::App app{"exact p-adic syntomic and (phi,Gamma) cohomology pipeline"};
  app.require_subcommand(1);

  CommonOpts run_o, coh_o, herr_o, cmp_o;
  CLI::App* run = app.add_subcommand("run", "run an invariant suite");
  add_common(run, run_o);
  run->add_option("--suite", run_o.suite, "operators, rings, homology, chain, herr or all");
  CLI::App* coh = app.add_subcommand("cohomology", "cohomology table of one complex");
  add_common(coh, coh_o);
  std::string complex_name = "syn";
  coh->add_option("--complex", complex_name,
                  "syn, kum_pd, kum_u, kum_uv, kum_psi_u, kum_psi_uv, cycl_uv, hk, dr, herr");
  CLI::App* herr = app.add_subcommand("herr", "Herr complex tables with band-doubling stability");
  add_common(herr, herr_o);
  CLI::App* cmp = app.add_subcommand("compare",
                                     "Kummer vs cyclotomic annulus cohomology tables");
  add_common(cmp, cmp_o);

  CLI::App* solve = app.add_subcommand("solve-implicit", "solve x^2 = rhs over Z_p");
  long long sp = 7, rhs = 8;
  int digits = 4;
  std::string solve_out, solve_format = "json";
  solve->add_option("--p", sp, "odd prime");
  solve->add_option("--rhs", rhs, "right-hand side");
  solve->add_option("--digits", digits, "p-adic digits to solve for");
  solve->add_option("--out", solve_out, "report output path (default: stdout)");
  solve->add_option("--format", solve_format, "report format: json or table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      syntomo::RunConfig rc = make_config(run_o);
      log_info("running suite '" + rc.suite + "'");
      return emit(syntomo::run_suite(rc), rc);
    }
    if (coh->parsed()) {
      syntomo::RunConfig rc = make_config(coh_o);
      return emit(syntomo::cohomology_report(rc, complex_name), rc);
    }
    if (herr->parsed()) {
      syntomo::RunConfig rc = make_config(herr_o);
      return emit(syntomo::herr_report(rc), rc);
    }
    if (cmp->parsed()) {
      syntomo::RunConfig rc = make_config(cmp_o);
      return emit(syntomo::compare_report(rc), rc);
    }
    if (solve->parsed()) {
      syntomo::SuiteReport rep = syntomo::solve_implicit_report((uint32_t)sp, rhs, digits);
      syntomo::RunConfig rc;
      rc.out = solve_out;
      rc.format = solve_format;
      return emit(rep, rc);
    }
  } catch (const syntomo::config_error& e) {
    std::fprintf(stderr, "syntomo: configuration error: %s\n", e.what());
    return 2;
  } catch (const syntomo::error& e) {
    std::fprintf(stderr, "syntomo: %s\n", e.what());
    return 1;
  }
  return 2;
}
