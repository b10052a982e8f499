// Command-line driver: flag parsing and dispatch only; the subcommand
// behavior lives in rotns/cli.hpp so it is exercisable from tests.
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rotns/cli.hpp"
#include "rotns/parallel.hpp"

namespace {

// shared options for the config-driven commands (simulate, uniqueness, sweep)
struct RunArgs {
  std::string config;
  std::vector<std::string> overrides;
  std::string output;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_run_options(CLI::App* cmd, RunArgs& a) {
  cmd->add_option("-c,--config", a.config, "key=value configuration file")
      ->check(CLI::ExistingFile);
  cmd->add_option("overrides", a.overrides,
                  "key=value assignments overriding the config file");
  cmd->add_option("-o,--output", a.output,
                  "report path (default: config 'output' key, else $ROTNS_OUTPUT_DIR)");
  auto* s = cmd->add_option("--seed", a.seed, "initial-state seed (overrides config)");
  cmd->parse_complete_callback([&a, s] { a.seed_set = s->count() > 0; });
}

rotns::RunConfig assemble(const RunArgs& a) {
  std::vector<std::string> overrides = a.overrides;
  if (a.seed_set) overrides.push_back("seed=" + std::to_string(a.seed));
  return a.config.empty() ? rotns::parse_config(overrides)
                          : rotns::parse_config_file(a.config, overrides);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "rotns: spectral solver and estimate verifier for the resonant limit dynamics\n"
      "of rotating incompressible flow on the periodic box, in the helical basis"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads,
                 "worker threads for the operator kernels (default 1; any count "
                 "gives bit-identical results)")
      ->check(CLI::PositiveNumber)
      ->each([](const std::string& v) {
        rotns::parallel::set_threads(std::stoul(v));
      });

  // basis check
  auto* basis = app.add_subcommand("basis", "helical frame diagnostics");
  basis->require_subcommand(1);
  auto* bcheck = basis->add_subcommand(
      "check", "verify curl eigenrelation, unit norm, incompressibility, pairing");
  int bc_radius = 16;
  double bc_tol = 1e-12;
  std::string bc_out;
  bcheck->add_option("--radius", bc_radius, "truncation radius")->check(CLI::PositiveNumber);
  bcheck->add_option("--tol", bc_tol, "acceptance tolerance")->check(CLI::PositiveNumber);
  bcheck->add_option("-o,--output", bc_out, "report path");

  // resonance enumerate / counting
  auto* reson = app.add_subcommand("resonance", "triad interaction tables and counts");
  reson->require_subcommand(1);
  auto* renum = reson->add_subcommand("enumerate", "emit the triad coefficient table");
  int re_radius = 4;
  bool re_full = false;
  std::string re_out;
  renum->add_option("--radius", re_radius, "truncation radius")->check(CLI::PositiveNumber);
  renum->add_flag("--full", re_full, "include non-resonant (oscillatory) triads");
  renum->add_option("-o,--output", re_out, "report path");
  auto* rcount = reson->add_subcommand(
      "counting", "per-n resonant partial sums over one dyadic shell and their sup");
  int rc_shell = 0, rc_search = 16;
  std::int64_t rc_top = 0;
  std::string rc_out;
  rcount->add_option("--shell", rc_shell, "dyadic shell index i (2^i <= |k| < 2^(i+1))")
      ->check(CLI::NonNegativeNumber);
  rcount->add_option("--search", rc_search, "search |n| <= R componentwise box radius")
      ->check(CLI::PositiveNumber);
  rcount->add_option("--top", rc_top, "emit only the largest T buckets (0 = all nonzero)")
      ->check(CLI::NonNegativeNumber);
  rcount->add_option("-o,--output", rc_out, "report path");

  // simulate
  auto* sim = app.add_subcommand("simulate", "integrate the dynamics, emit t,l2,h1,residual");
  RunArgs sim_args;
  add_run_options(sim, sim_args);
  std::string sim_state_in, sim_state_out;
  sim->add_option("--state-in", sim_state_in, "initial state snapshot (default: seeded draw)")
      ->check(CLI::ExistingFile);
  sim->add_option("--state-out", sim_state_out, "write the final state snapshot here");

  // uniqueness
  auto* uniq = app.add_subcommand(
      "uniqueness", "twin runs dt vs dt/refine: separation, identity, Gronwall certificate");
  RunArgs uniq_args;
  add_run_options(uniq, uniq_args);
  int uq_refine = 2;
  double uq_constant = 1.0, uq_identity_tol = 1e-9;
  uniq->add_option("--refine", uq_refine, "step refinement factor for the twin run")
      ->check(CLI::Range(2, 1 << 20));
  uniq->add_option("--constant", uq_constant,
                   "trilinear constant for the Gronwall certificate")
      ->check(CLI::PositiveNumber);
  uniq->add_option("--identity-tol", uq_identity_tol,
                   "pass threshold for the bilinear difference identity residual")
      ->check(CLI::PositiveNumber);

  // omega-sweep
  auto* sweep = app.add_subcommand(
      "omega-sweep", "final-state gap between rotating runs and the limit dynamics");
  RunArgs sweep_args;
  add_run_options(sweep, sweep_args);
  std::vector<double> sweep_omegas = {1.0, 10.0, 100.0, 1000.0};
  sweep->add_option("--omegas", sweep_omegas, "rotation rates, strictly increasing")
      ->delimiter(',')
      ->capture_default_str();

  // verify <estimate>
  auto* verify = app.add_subcommand("verify", "sample-based estimate verification");
  verify->require_subcommand(1);
  std::uint64_t v_seed = 1;
  verify->add_option("--seed", v_seed, "sampling seed");

  auto* vtri = verify->add_subcommand(
      "trilinear", "boundedness of |<B(u,v),u>| / (|u| |u|_1 |v|_1) across radii");
  std::vector<int> vt_radii = {4, 8, 16};
  int vt_samples = 1000;
  bool vt_full = false;
  std::string vt_out;
  vtri->add_option("--radius", vt_radii, "radii to compare")
      ->delimiter(',')
      ->capture_default_str();
  vtri->add_option("--samples", vt_samples, "samples per radius")->check(CLI::PositiveNumber);
  vtri->add_flag("--full", vt_full, "also sample the unrestricted operator (trend report)");
  vtri->add_option("-o,--output", vt_out, "report path");

  auto* vavg = verify->add_subcommand(
      "averaging", "time-averaged oscillatory pairing vanishes as the rate grows");
  int va_radius = 6, va_triples = 10;
  std::vector<double> va_omegas = {1.0, 10.0, 100.0, 1000.0};
  std::string va_out;
  vavg->add_option("--radius", va_radius, "truncation radius")->check(CLI::PositiveNumber);
  vavg->add_option("--triples", va_triples, "random field triples")
      ->check(CLI::PositiveNumber);
  vavg->add_option("--omegas", va_omegas, "rotation rates, increasing")
      ->delimiter(',')
      ->capture_default_str();
  vavg->add_option("-o,--output", va_out, "report path");

  auto* vconv = verify->add_subcommand(
      "convolution", "size-ordered split of the restricted convolution sum");
  int vc_radius = 8, vc_pairs = 100;
  bool vc_unrestricted = false;
  std::string vc_out;
  vconv->add_option("--radius", vc_radius, "truncation radius")->check(CLI::PositiveNumber);
  vconv->add_option("--pairs", vc_pairs, "random sequence pairs")->check(CLI::PositiveNumber);
  vconv->add_flag("--unrestricted", vc_unrestricted,
                  "drop the resonant-set indicator (all triples)");
  vconv->add_option("-o,--output", vc_out, "report path");

  auto* vcount = verify->add_subcommand(
      "counting", "dyadic-shell sup bound with the one-zero exact certificate");
  int vn_max_shell = 5, vn_search = 64;
  std::string vn_out;
  vcount->add_option("--max-shell", vn_max_shell, "verify shells 0..S")
      ->check(CLI::NonNegativeNumber);
  vcount->add_option("--search", vn_search, "componentwise box radius for n")
      ->check(CLI::PositiveNumber);
  vcount->add_option("-o,--output", vn_out, "report path");

  auto* vhm = verify->add_subcommand(
      "hminus1", "H^-1 boundedness of the quadratic term across radii");
  std::vector<int> vh_radii = {4, 8, 16};
  int vh_samples = 1000;
  std::string vh_out;
  vhm->add_option("--radius", vh_radii, "radii to compare")
      ->delimiter(',')
      ->capture_default_str();
  vhm->add_option("--samples", vh_samples, "samples per radius")->check(CLI::PositiveNumber);
  vhm->add_option("-o,--output", vh_out, "report path");

  CLI11_PARSE(app, argc, argv);

  using namespace rotns;
  try {
    if (bcheck->parsed())
      return cli::basis_check(bc_radius, bc_tol,
                              cli::resolve_output(bc_out, "", "basis-check.csv"), std::cout);
    if (renum->parsed())
      return cli::resonance_enumerate(re_radius, re_full,
                                      cli::resolve_output(re_out, "", "triads.csv"),
                                      std::cout);
    if (rcount->parsed())
      return cli::resonance_counting(rc_shell, rc_search, rc_top,
                                     cli::resolve_output(rc_out, "", "counting.csv"),
                                     std::cout);
    if (sim->parsed()) {
      RunConfig rc = assemble(sim_args);
      return cli::simulate_cmd(rc, sim_state_in, sim_state_out,
                               cli::resolve_output(sim_args.output, rc.output,
                                                   "trajectory.csv"),
                               std::cout);
    }
    if (uniq->parsed()) {
      RunConfig rc = assemble(uniq_args);
      return cli::uniqueness_cmd(rc, uq_refine, uq_constant, uq_identity_tol,
                                 cli::resolve_output(uniq_args.output, rc.output,
                                                     "uniqueness.csv"),
                                 std::cout);
    }
    if (sweep->parsed()) {
      RunConfig rc = assemble(sweep_args);
      return cli::omega_sweep_cmd(rc, sweep_omegas,
                                  cli::resolve_output(sweep_args.output, rc.output,
                                                      "omega-sweep.csv"),
                                  std::cout);
    }
    if (vtri->parsed())
      return cli::verify_trilinear(vt_radii, vt_samples, vt_full, v_seed,
                                   cli::resolve_output(vt_out, "", "verify-trilinear.csv"),
                                   std::cout);
    if (vavg->parsed())
      return cli::verify_averaging(va_radius, va_triples, va_omegas, v_seed,
                                   cli::resolve_output(va_out, "", "verify-averaging.csv"),
                                   std::cout);
    if (vconv->parsed())
      return cli::verify_convolution(vc_radius, vc_pairs, !vc_unrestricted, v_seed,
                                     cli::resolve_output(vc_out, "",
                                                         "verify-convolution.csv"),
                                     std::cout);
    if (vcount->parsed())
      return cli::verify_counting(vn_max_shell, vn_search,
                                  cli::resolve_output(vn_out, "", "verify-counting.csv"),
                                  std::cout);
    if (vhm->parsed())
      return cli::verify_hminus1(vh_radii, vh_samples, v_seed,
                                 cli::resolve_output(vh_out, "", "verify-hminus1.csv"),
                                 std::cout);
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "error: no subcommand selected\n";
  return 2;
}
