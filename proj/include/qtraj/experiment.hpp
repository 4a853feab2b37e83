#pragma once

// Figure pipelines and the CSV/JSON writers behind the qtraj CLI.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qtraj/config.hpp"
#include "qtraj/ensemble.hpp"
#include "qtraj/metrics.hpp"

namespace qtraj {

std::string_view version();

// "%.12g": enough digits to round-trip the statistics we print, and stable
// across platforms for a fixed binary value.
std::string format_number(double v);

// Header lines shared by every output file:
//   # qtraj <version>
//   # command: <subcommand>
//   # config: <resolved config as one-line JSON>
//   # seed: <master seed>
std::string header_block(const ExperimentConfig& cfg, std::string_view command);

// Single-writer CSV file. Each row is flushed as soon as it is written so an
// interrupted sweep leaves only complete rows behind.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& header, const std::vector<std::string>& columns);

  void row(const std::vector<std::string>& fields);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& doc);

// One point of a parameter sweep.
struct SweepPoint {
  Model model = Model::kQuantum;
  double omega = 1.0;
  double gamma = 1.0;
  double coupling = 0.0;

  double ratio() const { return omega / gamma; }
};

// Sort key for sweep rows: model name, then omega/gamma, then J, then gamma.
bool sweep_order(const SweepPoint& a, const SweepPoint& b);

struct SweepRow {
  SweepPoint point;
  EnsembleSummary summary;
};

// Runs every point (in sweep order) and appends one row per point to `csv`
// using the sweep schema.
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, std::vector<SweepPoint> points,
                                const std::filesystem::path& csv, std::string_view command,
                                std::ostream* log = nullptr);

std::vector<double> log_grid(double lo, double hi, int points);

// Couplings used by a pipeline: the configured list, or `fallback` when empty.
std::vector<double> coupling_grid(const ExperimentConfig& cfg, const std::vector<double>& fallback);

// --- simulate --------------------------------------------------------------

// Writes emissions_<model>_traj<i>.csv (step,t,r1,r2) and
// states_<model>_traj<i>.csv for every trajectory of every selected model.
std::vector<std::filesystem::path> run_single(const ExperimentConfig& cfg);

// --- fig1 -------------------------------------------------------------------

struct Fig1Entry {
  Model model = Model::kQuantum;
  double coupling = 0.0;
  EnsembleSummary summary;
  std::int64_t total_emissions = 0;  // both channels, analysis window, whole ensemble
};

struct Fig1Result {
  std::vector<Fig1Entry> entries;
};

Fig1Result run_fig1(const ExperimentConfig& cfg, std::ostream* log = nullptr);

// --- fig2 -------------------------------------------------------------------

struct Fig2Entry {
  Model model = Model::kQuantum;
  double coupling = 0.0;
  OccupancyTable table;
  std::array<std::array<double, 2>, 2> sem{};

  // max over cells of |P - 1/4|, and the same measured in units of that cell's SEM
  double max_deviation() const;
  double max_deviation_in_sem() const;
};

struct Fig2Result {
  std::vector<Fig2Entry> entries;
};

Fig2Result run_fig2(const ExperimentConfig& cfg, std::ostream* log = nullptr);

// --- fig3 -------------------------------------------------------------------

struct Fig3Panels {
  bool omega = true;  // (a) LZ vs omega at fixed gamma values
  bool gamma = true;  // (b) LZ vs gamma at fixed omega values
  bool ratio = true;  // (c) LZ vs omega/gamma at gamma = cfg.gamma

  static Fig3Panels parse(std::string_view letters);  // subset of "abc"
};

struct PeakInfo {
  Model model = Model::kQuantum;
  double ratio = 0.0;
  double lz = 0.0;
  double lz_err = 0.0;
  std::int64_t n_traj = 0;
};

struct Fig3Result {
  std::vector<SweepRow> omega_rows, gamma_rows, ratio_rows;
  std::vector<PeakInfo> peaks;         // panel (c), one per model
  std::optional<WelchResult> welch;    // quantum vs classical peak heights
};

Fig3Result run_fig3(const ExperimentConfig& cfg, Fig3Panels panels = {}, std::ostream* log = nullptr);

// --- fig4 -------------------------------------------------------------------

struct Fig4Trend {
  Model model = Model::kQuantum;
  double ratio = 0.0;
  std::optional<SpearmanResult> lz_vs_j;
};

struct Fig4Result {
  std::vector<SweepRow> rows;
  std::vector<Fig4Trend> trends;
  std::vector<std::pair<Model, std::optional<SpearmanResult>>> pooled;  // Spearman(LZ, MI)
};

Fig4Result run_fig4(const ExperimentConfig& cfg, std::ostream* log = nullptr);

// --- metrics ----------------------------------------------------------------

struct EmissionsFile {
  std::vector<std::int64_t> steps;
  std::vector<double> t;
  std::vector<std::uint8_t> r1, r2;
  std::optional<nlohmann::json> config;  // parsed "# config:" header, if present
};

// Throws IoError if the file cannot be read, ConfigError if it is malformed.
EmissionsFile read_emissions_csv(const std::filesystem::path& path);

// Recomputes record-level metrics (counts, rates, joint LZ, correlations)
// over the analysis window.
nlohmann::ordered_json emission_metrics(const EmissionsFile& file, const AnalysisOptions& opt);

}  // namespace qtraj
