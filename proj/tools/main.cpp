// CLI front end: subcommand and flag parsing only; the pipeline lives in
// the library's run_* functions.

#include <string>

#include "CLI11.hpp"
#include "syz/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"SYZ mirror pipeline for conic fibrations over algebraic tori"};
  app.require_subcommand(1);

  syz::JobConfig cfg;

  auto add_common = [&cfg](CLI::App* cmd) {
    cmd->add_option("--tol", cfg.tol, "amoeba membership tolerance")->capture_default_str();
    cmd->add_option("--gap", cfg.gap, "relative wall distinctness gap")->capture_default_str();
    cmd->add_option("--step", cfg.fd_step, "finite-difference step")->capture_default_str();
    cmd->add_option("--resolution", cfg.resolution, "raster nodes per axis (>= 16)")
        ->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "RNG seed, recorded in reports")->capture_default_str();
    cmd->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--format", cfg.format, "json | svg | both")->capture_default_str();
  };

  auto* mirror = app.add_subcommand("mirror", "Newton polytope, subdivision, toric CY fan");
  mirror->add_option("--f", cfg.f_path, "Laurent polynomial file (expression or JSON)")
      ->required();
  mirror->add_option("--lifting", cfg.lifting_path, "lifting heights JSON");
  add_common(mirror);

  auto* base = app.add_subcommand("base", "SYZ base: walls and chambers (2d) or amoeba (3d)");
  base->add_option("--f", cfg.f_path, "Laurent polynomial file")->required();
  base->add_option("--mode", cfg.mode, "2d | 3d")->capture_default_str();
  base->add_option("--lifting", cfg.lifting_path, "lifting heights JSON (3d)");
  base->add_option("--box", cfg.box, "raster box x0 y0 x1 y1 (3d)")->expected(4);
  base->add_option("--margin", cfg.margin, "box padding around the dual curve (3d)")
      ->capture_default_str();
  add_common(base);

  auto* amoeba = app.add_subcommand("amoeba", "amoeba raster and chamber labeling");
  amoeba->add_option("--f", cfg.f_path, "Laurent polynomial file")->required();
  amoeba->add_option("--box", cfg.box, "raster box x0 y0 x1 y1")->expected(4);
  amoeba->add_option("--margin", cfg.margin, "box padding around the dual curve")
      ->capture_default_str();
  add_common(amoeba);

  auto* t2 = app.add_subcommand("transform2d", "mirror bundle of a 2d section");
  t2->add_option("--section", cfg.section_path, "section JSON: path or wall_values")->required();
  t2->add_option("--base", cfg.base_path, "2d base report JSON")->required();
  add_common(t2);

  auto* t3 = app.add_subcommand("transform3d", "mirror bundle of a tropical section");
  t3->add_option("--section", cfg.section_path, "section JSON: legs or gradient")->required();
  t3->add_option("--base", cfg.base_path, "3d base report JSON")->required();
  add_common(t3);

  auto* check = app.add_subcommand("check", "run the invariant suite");
  add_common(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // normalize CLI11's exit codes into the 0/1/2 contract: help prints and
    // succeeds, every argument error is an input error
    return app.exit(e) == 0 ? 0 : 1;
  }

  for (auto* cmd : {mirror, base, amoeba, t2, t3, check})
    if (cmd->parsed()) cfg.command = cmd->get_name();
  return syz::run_job(cfg);
}
