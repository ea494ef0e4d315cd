#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "ftstab/app.hpp"

int main(int argc, char** argv) {
  CLI::App app{"finite-time stabilization pipeline for the nonlocal transport equation"};
  app.require_subcommand(1);

  std::string config_path;
  const char* names[] = {"simulate",  "spectrum",    "fattorini",
                         "synthesize", "closed-loop", "convergence"};
  const char* descs[] = {
      "open-loop Dirichlet/periodic run, trajectory CSV",
      "eigenpairs of the periodic adjoint, CSV",
      "spectral controllability verdict, CSV",
      "backstepping kernel, control and diagnostics CSVs",
      "full pipeline: verdict, kernel, feedback, closed loop, metric report",
      "sweep over doublings of n and N, metric report table"};
  for (int i = 0; i < 6; ++i) {
    auto* sub = app.add_subcommand(names[i], descs[i]);
    sub->add_option("config", config_path, "path to key=value config file")->required();
  }

  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  std::string log;
  const int code = ftstab::app::run(command, config_path, log);
  if (!log.empty()) std::cerr << log;
  return code;
}
