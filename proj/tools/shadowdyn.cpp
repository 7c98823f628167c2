#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace shadowdyn::cli;

int main(int argc, char** argv) {
  CLI::App app{"Shadowing, Cantor constructions, chain recurrence and expansivity probes on model systems"};
  app.set_config("--config", "", "Flat key=value file; flags override its values");
  app.require_subcommand(1, 1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--system", cfg.system, "cat, shift, cube, ns, rotation or product (cat x ns)")->capture_default_str();
  app.add_option("--eps", cfg.eps, "Shadowing / sensitivity scale");
  app.add_option("--delta", cfg.delta, "Pseudo-orbit jump, graph inflation or ball radius");
  app.add_option("--kmax", cfg.kmax, "Cantor refinement levels")->capture_default_str();
  app.add_option("--horizon", cfg.horizon, "Iteration horizon")->capture_default_str();
  app.add_option("--resolution", cfg.resolution, "Boxes per axis, e.g. 512 or 64x64");
  app.add_option("--samples", cfg.samples, "Sample points (per box for chainrec)");
  app.add_option("--seed", cfg.seed, "Seed for every randomized step");
  app.add_option("--out", cfg.out, "Output directory")->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads, 0 = hardware count")->capture_default_str();
  app.add_option("--input", cfg.input, "Pseudo-orbit CSV (index,<coords>)");
  app.add_option("--point", cfg.point, "Base point as comma-separated CSV fields");
  app.add_option("--points", cfg.points, "Points for basin assignment, separated by ';'");
  app.add_option("--radii", cfg.radii, "Comma-separated ball radii for sensitivity")->delimiter(',');
  app.add_option("--direction", cfg.direction, "unstable or stable")->capture_default_str();
  app.add_option("--length", cfg.length, "Generated pseudo-orbit length")->capture_default_str();
  app.add_option("--arc-center", cfg.arc_center, "Arc midpoint for circle witnesses")->capture_default_str();
  app.add_option("--arc-length", cfg.arc_length, "Arc or segment length for witnesses")->capture_default_str();
  app.add_option("--span", cfg.span, "Moved coordinates |i| <= span in the cube witness")->capture_default_str();
  app.add_option("--step", cfg.step, "Witness parameter resolution")->capture_default_str();
  app.add_option("--alphabet", cfg.alphabet, "Full-shift alphabet size")->capture_default_str();
  app.add_option("--angle", cfg.angle, "Rotation angle")->capture_default_str();
  app.add_option("--edge-budget", cfg.edge_budget, "Maximum transition-graph edges")->capture_default_str();

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const RunConfig&);
  };
  const Command commands[] = {
      {"shadow", "Shadow a pseudo-orbit read from --input or generated from --seed", cmd_shadow},
      {"cantor", "Build and verify a Cantor set in a local unstable (or stable) set", cmd_cantor},
      {"chainrec", "Box transition graph, chain-recurrence classes and basin assignment", cmd_chainrec},
      {"sensitivity", "Sensitivity lower bound, plus an equicontinuity probe when --eps is set", cmd_sensitivity},
      {"cwx", "Check a continuum witness whose orbit stays eps-small", cmd_cwx},
      {"refute", "Cantor set inside a local stable set when the inverse is sensitive", cmd_refute},
  };
  for (const auto& c : commands) app.add_subcommand(c.name, c.help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  for (const auto& c : commands) {
    if (!app.got_subcommand(c.name)) continue;
    cfg.command = c.name;
    try {
      return c.run(cfg);
    } catch (const std::exception& e) {
      std::cerr << "shadowdyn " << c.name << ": " << e.what() << "\n";
      return 1;
    }
  }
  return 1;
}
