#include "qtraj/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qtraj/errors.hpp"

namespace qtraj {

using nlohmann::json;

std::string_view to_string(ModelSelection m) {
  switch (m) {
    case ModelSelection::kQuantum: return "quantum";
    case ModelSelection::kClassical: return "classical";
    case ModelSelection::kBoth: return "both";
  }
  return "?";
}

ModelSelection model_selection_from_string(std::string_view s) {
  if (s == "quantum") return ModelSelection::kQuantum;
  if (s == "classical") return ModelSelection::kClassical;
  if (s == "both") return ModelSelection::kBoth;
  throw ConfigError("unknown model '" + std::string(s) + "' (expected quantum, classical or both)");
}

std::vector<Model> models_of(ModelSelection m) {
  // Classical first: output rows are sorted by model name.
  switch (m) {
    case ModelSelection::kQuantum: return {Model::kQuantum};
    case ModelSelection::kClassical: return {Model::kClassical};
    case ModelSelection::kBoth: return {Model::kClassical, Model::kQuantum};
  }
  return {};
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "omega",        "gamma",         "coupling",     "beta",      "dt",          "steps",
      "n_traj",       "seed",          "sample_stride", "model",    "transient",   "max_lag",
      "emission_convention", "mi_mode", "occupancy_mode", "blocks", "threads",     "out",
      "couplings",    "ratios",        "ratio_min",    "ratio_max", "ratio_points", "fig3_gammas",
      "fig3_omegas",  "panel_points"};
  return keys;
}

namespace {

template <typename T>
T get_as(const json& doc, const std::string& key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config key '" + key + "' has the wrong type: " + e.what());
  }
}

void require_grid(const std::vector<double>& grid, const char* name, bool positive) {
  for (double v : grid) {
    if (!std::isfinite(v) || (positive && v <= 0.0)) {
      throw ConfigError(std::string("invalid ") + name + " entry " + std::to_string(v) +
                        (positive ? ": must be > 0" : ": must be finite"));
    }
  }
}

json read_config_document(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  // A qtraj output file carries its resolved config on a "# config: " line.
  const std::string marker = "# config: ";
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind(marker, 0) == 0) {
      try {
        return json::parse(line.substr(marker.size()));
      } catch (const json::parse_error& e) {
        throw ConfigError("malformed config header in " + file.string() + ": " + e.what());
      }
    }
    if (line.empty() || line[0] != '#') break;
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + file.string() + " is not valid JSON: " + e.what());
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  params.validate();
  analysis.validate();
  require_grid(sweep.couplings, "couplings", false);
  require_grid(sweep.ratios, "ratios", true);
  require_grid(sweep.fig3_gammas, "fig3_gammas", true);
  require_grid(sweep.fig3_omegas, "fig3_omegas", true);
  if (sweep.ratios.empty()) throw ConfigError("invalid ratios: grid must be non-empty");
  if (sweep.fig3_gammas.empty() || sweep.fig3_omegas.empty()) {
    throw ConfigError("invalid fig3_gammas/fig3_omegas: grids must be non-empty");
  }
  if (!(sweep.ratio_min > 0.0 && sweep.ratio_max > sweep.ratio_min)) {
    throw ConfigError("invalid ratio_min/ratio_max: must satisfy 0 < ratio_min < ratio_max");
  }
  if (sweep.ratio_points < 2) throw ConfigError("invalid ratio_points: must satisfy ratio_points >= 2");
  if (sweep.panel_points < 2) throw ConfigError("invalid panel_points: must satisfy panel_points >= 2");
}

nlohmann::ordered_json ExperimentConfig::to_json() const {
  nlohmann::ordered_json j;
  j["omega"] = params.omega;
  j["gamma"] = params.gamma;
  j["coupling"] = params.coupling;
  j["beta"] = params.beta;
  j["dt"] = params.dt;
  j["steps"] = params.steps;
  j["n_traj"] = params.n_traj;
  j["seed"] = params.seed;
  j["sample_stride"] = params.sample_stride;
  j["model"] = to_string(model);
  j["transient"] = analysis.transient_fraction;
  j["max_lag"] = analysis.max_lag;
  j["emission_convention"] = to_string(analysis.convention);
  j["mi_mode"] = to_string(analysis.mi_mode);
  j["occupancy_mode"] = to_string(analysis.occupancy_mode);
  j["blocks"] = analysis.blocks;
  j["couplings"] = sweep.couplings;
  j["ratios"] = sweep.ratios;
  j["ratio_min"] = sweep.ratio_min;
  j["ratio_max"] = sweep.ratio_max;
  j["ratio_points"] = sweep.ratio_points;
  j["fig3_gammas"] = sweep.fig3_gammas;
  j["fig3_omegas"] = sweep.fig3_omegas;
  j["panel_points"] = sweep.panel_points;
  return j;
}

ExperimentConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  const auto& keys = config_keys();
  for (const auto& [key, value] : doc.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw ConfigError("unknown config key '" + key + "'");
  }

  ExperimentConfig cfg;
  auto has = [&](const char* k) { return doc.contains(k); };
  if (has("omega")) cfg.params.omega = get_as<double>(doc, "omega");
  if (has("gamma")) cfg.params.gamma = get_as<double>(doc, "gamma");
  if (has("coupling")) cfg.params.coupling = get_as<double>(doc, "coupling");
  if (has("beta")) cfg.params.beta = get_as<double>(doc, "beta");
  if (has("dt")) cfg.params.dt = get_as<double>(doc, "dt");
  if (has("steps")) cfg.params.steps = get_as<std::int64_t>(doc, "steps");
  if (has("n_traj")) cfg.params.n_traj = get_as<std::int64_t>(doc, "n_traj");
  if (has("seed")) cfg.params.seed = get_as<std::uint64_t>(doc, "seed");
  if (has("sample_stride")) cfg.params.sample_stride = get_as<std::int64_t>(doc, "sample_stride");
  if (has("model")) cfg.model = model_selection_from_string(get_as<std::string>(doc, "model"));
  if (has("transient")) cfg.analysis.transient_fraction = get_as<double>(doc, "transient");
  if (has("max_lag")) cfg.analysis.max_lag = get_as<std::int64_t>(doc, "max_lag");
  if (has("emission_convention")) {
    cfg.analysis.convention = emission_convention_from_string(get_as<std::string>(doc, "emission_convention"));
  }
  if (has("mi_mode")) cfg.analysis.mi_mode = mi_mode_from_string(get_as<std::string>(doc, "mi_mode"));
  if (has("occupancy_mode")) {
    cfg.analysis.occupancy_mode = occupancy_mode_from_string(get_as<std::string>(doc, "occupancy_mode"));
  }
  if (has("blocks")) cfg.analysis.blocks = get_as<int>(doc, "blocks");
  if (has("threads")) cfg.analysis.threads = get_as<int>(doc, "threads");
  if (has("out")) cfg.output_dir = get_as<std::string>(doc, "out");
  if (has("couplings")) cfg.sweep.couplings = get_as<std::vector<double>>(doc, "couplings");
  if (has("ratios")) cfg.sweep.ratios = get_as<std::vector<double>>(doc, "ratios");
  if (has("ratio_min")) cfg.sweep.ratio_min = get_as<double>(doc, "ratio_min");
  if (has("ratio_max")) cfg.sweep.ratio_max = get_as<double>(doc, "ratio_max");
  if (has("ratio_points")) cfg.sweep.ratio_points = get_as<int>(doc, "ratio_points");
  if (has("fig3_gammas")) cfg.sweep.fig3_gammas = get_as<std::vector<double>>(doc, "fig3_gammas");
  if (has("fig3_omegas")) cfg.sweep.fig3_omegas = get_as<std::vector<double>>(doc, "fig3_omegas");
  if (has("panel_points")) cfg.sweep.panel_points = get_as<int>(doc, "panel_points");
  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config(const std::optional<std::filesystem::path>& file, const json& overrides) {
  json doc = file ? read_config_document(*file) : json::object();
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  if (!overrides.is_object()) throw ConfigError("config overrides must be a JSON object");
  for (const auto& [key, value] : overrides.items()) doc[key] = value;
  return config_from_json(doc);
}

}  // namespace qtraj
