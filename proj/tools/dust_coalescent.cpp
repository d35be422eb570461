#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "dust/error.hpp"
#include "dust/experiment.hpp"

namespace {

const std::map<std::string, std::string> kDescriptions = {
    {"rates", "print lambda_{m,k}, phi_{m,k} and Phi(m) for one row m"},
    {"simulate", "simulate the n-coalescent and write per-run statistics"},
    {"dust", "simulate the primary-count chain alone"},
    {"passage", "first passage times of the subordinator over log n"},
    {"occupancy", "occupancy counts of the stick-breaking boxes"},
    {"expfunc", "sample the exponential functional of the subordinator"},
    {"vchain", "simulate the secondary-cluster chain and its occupation measure"},
    {"verify-tau", "check the limit law of the absorption time"},
    {"verify-collisions", "check the limit law of the number of collisions"},
    {"verify-stationary", "check the stationary law of the secondary-cluster chain"}};

int default_jobs() {
  if (const char* env = std::getenv("DUST_COALESCENT_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and verification of coalescents with dust"};
  app.set_config("--config", "", "TOML file with option values, one [subcommand] table per command");
  app.require_subcommand(1);

  dust::ExperimentConfig cfg;
  cfg.jobs = default_jobs();
  std::string n_list = "100";
  std::vector<std::string> tolerance_args;

  for (const auto& kind : dust::kExperimentKinds) {
    CLI::App* sub = app.add_subcommand(kind, kDescriptions.at(kind));
    sub->add_option("--measure", cfg.measure, "measure spec, e.g. beta:a=1.5,b=1,c=auto")
        ->capture_default_str();
    sub->add_option("--n", n_list, "comma-separated list of sample sizes")->capture_default_str();
    sub->add_option("--replicates", cfg.replicates)->capture_default_str();
    sub->add_option("--seed", cfg.seed)->capture_default_str();
    sub->add_option("--jobs", cfg.jobs, "worker threads (default $DUST_COALESCENT_THREADS or 1)")
        ->capture_default_str();
    sub->add_option("--out", cfg.out, "CSV output path; the JSON summary is written beside it");
    sub->add_option("--regime", cfg.regime, "override the classified limit regime");
    sub->add_option("--tolerance", tolerance_args, "key=value threshold override");
    sub->add_option("--m", cfg.m, "row index for `rates`")->capture_default_str();
    sub->add_option("--horizon", cfg.horizon, "time horizon (V chain, exponential functional)");
    sub->add_option("--burn-in", cfg.burn_in, "burn-in time for the V chain");
    sub->add_option("--gamma", cfg.gamma, "exponent of the exponential functional")
        ->capture_default_str();
    sub->add_option("--epsilon", cfg.epsilon, "truncation bias of the exponential functional")
        ->capture_default_str();
    sub->add_option("--truncation", cfg.truncation, "state truncation M for the balance equations")
        ->capture_default_str();
  }

  CLI11_PARSE(app, argc, argv);
  cfg.kind = app.get_subcommands().front()->get_name();

  try {
    cfg.n.clear();
    std::stringstream ss(n_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) cfg.n.push_back(std::stoll(item));
    }
    for (const auto& t : tolerance_args) {
      const auto eq = t.find('=');
      if (eq == std::string::npos) throw dust::Error("--tolerance expects key=value, got '" + t + "'");
      cfg.tolerances[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
    }
    return dust::run(cfg, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
