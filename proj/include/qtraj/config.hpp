#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qtraj/ensemble.hpp"
#include "qtraj/params.hpp"

namespace qtraj {

enum class ModelSelection { kQuantum, kClassical, kBoth };

std::string_view to_string(ModelSelection m);
ModelSelection model_selection_from_string(std::string_view s);
std::vector<Model> models_of(ModelSelection m);

// Parameter grids for the figure pipelines. An empty `couplings` list means
// "use the pipeline's own default".
struct SweepGrids {
  std::vector<double> couplings;
  std::vector<double> ratios = {0.25, 1.0, 2.0, 6.0};  // fig4 drive-to-decay ratios
  double ratio_min = 0.1;                              // fig3 log grid over omega/gamma
  double ratio_max = 20.0;
  int ratio_points = 25;
  std::vector<double> fig3_gammas = {0.5, 1.0, 2.0};  // fixed gamma curves, omega swept
  std::vector<double> fig3_omegas = {0.5, 1.0, 2.0};  // fixed omega curves, gamma swept
  int panel_points = 12;
};

struct ExperimentConfig {
  SimParams params;
  ModelSelection model = ModelSelection::kBoth;
  SweepGrids sweep;
  AnalysisOptions analysis;
  std::filesystem::path output_dir = "qtraj_out";

  // Throws ConfigError / NumericalGuardError naming the field.
  void validate() const;

  // Everything that determines the numerical output. Thread count and output
  // directory are deliberately absent so that headers match across runs that
  // differ only in those.
  nlohmann::ordered_json to_json() const;
};

// Keys accepted in config files and as flag overrides (flag --n-traj maps to n_traj).
const std::vector<std::string>& config_keys();

// Defaults <- file <- overrides. `file` may be a JSON document or any qtraj
// output file, whose "# config:" header line is used. Unknown keys raise
// ConfigError naming the key.
ExperimentConfig parse_config(const std::optional<std::filesystem::path>& file,
                              const nlohmann::json& overrides = nlohmann::json::object());

ExperimentConfig config_from_json(const nlohmann::json& doc);

}  // namespace qtraj
