#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "pgl/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"pgl: staged presentations of Abelian p-groups"};
  pgl::RunConfig config;
  app.add_option("command", config.command, "build | transform | invariants | classify | iso | scott-verify | decompose")
      ->required()
      ->check(CLI::IsMember({"build", "transform", "invariants", "classify", "iso", "scott-verify", "decompose"}));
  app.add_option("--spec", config.spec_path, "spec file")->required();
  app.add_option("--spec2", config.spec2_path, "second spec file (iso)");
  app.add_option("--stages", config.stages, "stages to materialize (build, transform, decompose)")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget", config.budget, "stage budget for limit procedures")->check(CLI::PositiveNumber);
  app.add_option("--bound", config.bound, "largest truncation order for scott-verify")->check(CLI::PositiveNumber);
  app.add_option("--seed", config.seed, "schedule seed; 0 is plain round robin");
  app.add_option("--length", config.length, "tuple length for scott-verify");
  app.add_option("--out", config.out_path, "write the report here instead of stdout");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : pgl::kExitSpecError;
  }

  const auto result = pgl::run(config);
  if (config.out_path.empty()) {
    std::cout << result.report;
  } else {
    std::ofstream out(config.out_path);
    out << result.report;
    if (result.exit_code != pgl::kExitOk) std::cerr << result.report.substr(0, result.report.find('\n') + 1);
  }
  return result.exit_code;
}
