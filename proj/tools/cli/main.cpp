#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace fracinv::cli;

int main(int argc, char** argv) {
  CLI::App app{"fracinv: inverse source problems for fractional diffusion equations"};
  app.require_subcommand(1);

  SolveOptions solve;
  auto* s = app.add_subcommand("solve", "Solve a problem file and write U.csv, h.csv, meta.json");
  s->add_option("input", solve.input, "Problem file (JSON)")->required();
  s->add_option("output_dir", solve.output_dir, "Output directory")->required();
  s->add_flag("--verify", solve.verify, "Also write residual.json (L1-scheme PDE residual)");
  s->add_option("--dt", solve.dt, "Time step of the residual oracle")->capture_default_str();
  s->add_option("--threads", solve.threads, "Worker threads, 0 for all cores")
      ->capture_default_str();

  PlotOptions plot;
  auto* p = app.add_subcommand("plot", "Render U.svg, h.svg (and sweep.svg) from solve output");
  p->add_option("output_dir", plot.output_dir, "Directory written by solve")->required();
  p->add_option("--times", plot.times,
                "Times of the U curves (default: plot_times of the problem, else 0.1, 0.25, 0.5, 0.75, 1 times T)");

  VerifyOptions verify;
  std::uint64_t seed = 0;
  auto* v = app.add_subcommand("verify", "Run verification checks; exit 3 if any fails");
  v->add_option("suite", verify.suite, "specfun, legendre, fracops, problem1, problem2 or all")
      ->capture_default_str();
  v->add_option("--report", verify.report_path, "Write the JSON report here");
  auto* seed_opt = v->add_option("--seed", seed, "RNG seed (default FRACINV_SEED, then 42)");

  auto* sf = app.add_subcommand("specfun", "Special-function debugging");
  sf->require_subcommand(1);
  SpecfunOptions sfo;
  auto* sfe = sf->add_subcommand("eval", "Evaluate ml (E_{a,b}), gml (E_{a,m,n}) or gamma at z");
  sfe->add_option("--function", sfo.function, "ml, gml or gamma")->capture_default_str();
  sfe->add_option("--alpha", sfo.alpha)->capture_default_str();
  sfe->add_option("--beta", sfo.beta)->capture_default_str();
  sfe->add_option("--m", sfo.m)->capture_default_str();
  sfe->add_option("--n", sfo.n)->capture_default_str();
  sfe->add_option("--deriv", sfo.deriv, "Derivative order for ml, 0..4")->capture_default_str();
  sfe->add_option("--z", sfo.z, "Argument")->required();

  auto* fo = app.add_subcommand("fracops", "Fractional-operator debugging");
  fo->require_subcommand(1);
  FracopsOptions foo;
  auto* foe = fo->add_subcommand("eval", "Apply integral, caputo or rl of order alpha to f(t)");
  foe->add_option("--op", foo.op, "integral, caputo or rl")->capture_default_str();
  foe->add_option("--alpha", foo.alpha)->capture_default_str();
  foe->add_option("--f", foo.f, "Expression in t")->capture_default_str();
  foe->add_option("--t", foo.t, "Evaluation time")->capture_default_str();
  foe->add_option("--steps", foo.steps, "Grid steps on [0, t]")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*seed_opt) verify.seed = seed;
  if (s->parsed()) return cmd_solve(solve, std::cout, std::cerr);
  if (p->parsed()) return cmd_plot(plot, std::cout, std::cerr);
  if (v->parsed()) return cmd_verify(verify, std::cout, std::cerr);
  if (sfe->parsed()) return cmd_specfun_eval(sfo, std::cout, std::cerr);
  if (foe->parsed()) return cmd_fracops_eval(foo, std::cout, std::cerr);
  return kExitUsage;
}
