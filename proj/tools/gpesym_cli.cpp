#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <thread>

#include "gpesym/csv.hpp"
#include "gpesym/errors.hpp"
#include "gpesym/workflows.hpp"

using namespace gpesym;

namespace {

struct Options {
  std::string config;
  std::string out;
  int workers = 0;
};

RunConfig resolve(const Options& opt, const std::string& workflow) {
  RunConfig cfg = opt.config.empty() ? RunConfig{} : load_config(opt.config);
  apply_env_overrides(cfg);
  cfg.workflow = workflow;
  validate(cfg);
  // Regime errors surface here, before any grid or file is touched.
  (void)cfg.effective();
  return cfg;
}

int dispatch(const Options& opt, const std::string& workflow) {
  const RunConfig cfg = resolve(opt, workflow);
  const std::string out = opt.out.empty() ? cfg.output_dir : opt.out;
  if (workflow == "exact") {
    const auto files = run_exact(cfg, out);
    std::cout << "wrote " << files.size() << " wavefunction files and manifest.txt to " << out << '\n';
    return kExitOk;
  }
  if (workflow == "evolve") {
    for (const auto& [k, v] : run_evolve(cfg, out)) std::cout << k << '=' << v << '\n';
    return kExitOk;
  }
  if (workflow == "verify") return run_verify(cfg, out, std::cout);
  const int workers = opt.workers > 0 ? opt.workers : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const auto rows = run_sweep(cfg, out, workers);
  int failed = 0;
  for (const auto& r : rows) {
    if (r.status != "ok") {
      ++failed;
      std::cerr << cfg.sweep_param << '=' << fmt17(r.value) << ": " << r.message << '\n';
    }
  }
  std::cout << "wrote " << rows.size() << " rows (" << failed << " flagged) to " << out << "/sweep.csv\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solution families and split-step verification for the reduced nonlocal GPE"};
  app.require_subcommand(1);
  Options opt;
  std::string chosen;
  for (const char* name : {"exact", "evolve", "verify", "sweep"}) {
    CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " workflow");
    sub->add_option("--config", opt.config, "dotted key=value config file");
    sub->add_option("--out", opt.out, "output directory (overrides task.output_dir)");
    sub->add_option("--workers", opt.workers, "sweep worker threads")->check(CLI::PositiveNumber);
    sub->callback([&chosen, name] { chosen = name; });
  }
  CLI11_PARSE(app, argc, argv);
  try {
    return dispatch(opt, chosen);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
