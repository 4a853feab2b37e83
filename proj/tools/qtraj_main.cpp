// qtraj: quantum-jump vs. telegraph emission experiments.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qtraj/config.hpp"
#include "qtraj/errors.hpp"
#include "qtraj/experiment.hpp"

namespace {

using nlohmann::json;

// Flag values are only forwarded when given, so a --config file keeps its
// own values for everything not on the command line.
struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> model, emission_convention, mi_mode, occupancy_mode, out;
  std::optional<double> omega, gamma, coupling, beta, dt, transient;
  std::optional<std::int64_t> steps, n_traj, sample_stride, max_lag;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads, blocks;
  std::vector<double> couplings, ratios;

  json overrides() const {
    json j = json::object();
    auto put = [&](const char* key, const auto& v) {
      if (v) j[key] = *v;
    };
    put("model", model);
    put("emission_convention", emission_convention);
    put("mi_mode", mi_mode);
    put("occupancy_mode", occupancy_mode);
    put("out", out);
    put("omega", omega);
    put("gamma", gamma);
    put("coupling", coupling);
    put("beta", beta);
    put("dt", dt);
    put("transient", transient);
    put("steps", steps);
    put("n_traj", n_traj);
    put("sample_stride", sample_stride);
    put("max_lag", max_lag);
    put("seed", seed);
    put("threads", threads);
    put("blocks", blocks);
    if (!couplings.empty()) j["couplings"] = couplings;
    if (!ratios.empty()) j["ratios"] = ratios;
    return j;
  }

  qtraj::ExperimentConfig resolve() const {
    std::optional<std::filesystem::path> file;
    if (config) file = *config;
    return qtraj::parse_config(file, overrides());
  }
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "JSON config file, or any qtraj output file (its '# config:' header is used)");
  app->add_option("--model", f.model, "quantum | classical | both  [both]");
  app->add_option("--omega", f.omega, "Rabi drive Omega  [1]");
  app->add_option("--gamma", f.gamma, "decay rate gamma  [1]");
  app->add_option("--coupling", f.coupling, "Ising coupling J  [0]");
  app->add_option("--beta", f.beta, "classical bias scale beta  [1]");
  app->add_option("--dt", f.dt, "time step; gamma*dt must not exceed 0.05  [0.01]");
  app->add_option("--steps", f.steps, "steps per trajectory  [100000]");
  app->add_option("--n-traj", f.n_traj, "trajectories per ensemble  [200]");
  app->add_option("--seed", f.seed, "master seed  [1]");
  app->add_option("--sample-stride", f.sample_stride, "steps between state samples  [10]");
  app->add_option("--max-lag", f.max_lag, "largest correlation lag in steps  [200]");
  app->add_option("--transient", f.transient, "discarded warm-up fraction of each trajectory  [0.2]");
  app->add_option("--emission-convention", f.emission_convention, "classical emissions: any-flip | down-flip  [any-flip]");
  app->add_option("--mi-mode", f.mi_mode, "instantaneous | ensemble | per-trajectory  [instantaneous]");
  app->add_option("--occupancy-mode", f.occupancy_mode, "quantum joint-state table: parity | density  [parity]");
  app->add_option("--blocks", f.blocks, "trajectory blocks for pooled error bars  [20]");
  app->add_option("--threads", f.threads, "worker threads, 0 = all cores  [0]");
  app->add_option("--couplings", f.couplings, "J grid (overrides the pipeline default)")->delimiter(',');
  app->add_option("--ratios", f.ratios, "Omega/gamma list for fig4  [0.25,1,2,6]")->delimiter(',');
  app->add_option("--out", f.out, "output directory  [qtraj_out]");
}

int run(int argc, char** argv) {
  CLI::App app{"qtraj: emission records of two driven, coupled two-level emitters (quantum jumps vs. telegraph model)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qtraj::version()));

  Flags f;
  auto* simulate = app.add_subcommand("simulate", "write per-trajectory emission and state CSVs");
  auto* fig1 = app.add_subcommand("fig1", "trajectories, cumulative counts and correlation changes vs J");
  auto* fig2 = app.add_subcommand("fig2", "joint-state occupancy tables vs J");
  auto* fig3 = app.add_subcommand("fig3", "LZ complexity vs Omega, gamma and Omega/gamma at J = 0");
  auto* fig4 = app.add_subcommand("fig4", "LZ and mutual information vs J; LZ-MI rank correlation");
  auto* metrics = app.add_subcommand("metrics", "recompute record metrics from an emissions CSV (JSON to stdout)");
  for (auto* sub : {simulate, fig1, fig2, fig3, fig4}) add_common(sub, f);

  std::string panels = "abc";
  fig3->add_option("--panels", panels, "panels to run: any of a (Omega), b (gamma), c (Omega/gamma)  [abc]");

  std::string emissions_path;
  metrics->add_option("emissions", emissions_path, "emissions CSV (step,t,r1,r2)")->required();
  metrics->add_option("--transient", f.transient, "discarded warm-up fraction  [0.2]");
  metrics->add_option("--max-lag", f.max_lag, "largest correlation lag in steps  [200]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qtraj::kExitConfigError;
  }

  std::ostream* log = &std::cerr;
  if (*metrics) {
    qtraj::AnalysisOptions opt;
    if (f.transient) opt.transient_fraction = *f.transient;
    if (f.max_lag) opt.max_lag = *f.max_lag;
    const auto file = qtraj::read_emissions_csv(emissions_path);
    std::cout << qtraj::emission_metrics(file, opt).dump(2) << '\n';
    return 0;
  }

  const qtraj::ExperimentConfig cfg = f.resolve();
  if (*simulate) {
    for (const auto& p : qtraj::run_single(cfg)) std::cerr << "wrote " << p.string() << '\n';
  } else if (*fig1) {
    qtraj::run_fig1(cfg, log);
  } else if (*fig2) {
    qtraj::run_fig2(cfg, log);
  } else if (*fig3) {
    qtraj::run_fig3(cfg, qtraj::Fig3Panels::parse(panels), log);
  } else if (*fig4) {
    qtraj::run_fig4(cfg, log);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const qtraj::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return qtraj::kExitConfigError;
  } catch (const qtraj::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return qtraj::kExitIoError;
  } catch (const qtraj::NumericalGuardError& e) {
    std::cerr << "numerical guard: " << e.what() << '\n';
    return qtraj::kExitNumericalGuard;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return qtraj::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
