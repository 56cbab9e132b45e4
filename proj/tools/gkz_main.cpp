#include <iostream>

#include <CLI11.hpp>

#include "gkz/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Secondary fans, Mori fans and toric degenerations of lattice polytopes"};
  gkz::JobSpec job;
  std::size_t samples = 0;
  app.add_option("command", job.command, "points | triangulations | fan | chamber | wall | mori-check | family | cocycle-check")
      ->required()
      ->check(CLI::IsMember(gkz::cli_commands()));
  app.add_option("--input", job.input, "polytope JSON file")->required();
  app.add_option("--truncation", job.truncation, "degree bound for the family command");
  auto* s = app.add_option("--samples", samples, "sample count");
  app.add_option("--seed", job.seed, "seed for all sampling");
  app.add_flag("--oracle", job.oracle, "use brute-force enumeration");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : gkz::ExitSchema;
  }
  if (s->count() > 0) job.samples = samples;

  auto r = gkz::run_job(job);
  if (r.exit_code != gkz::ExitOk) {
    std::cerr << "gkz: " << r.error << "\n";
    return r.exit_code;
  }
  std::cout << r.report.dump(2) << "\n";
  return 0;
}
