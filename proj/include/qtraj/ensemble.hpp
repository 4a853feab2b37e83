#pragma once

// Parallel ensemble execution with a deterministic, index-ordered reduction.

#include <array>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "qtraj/metrics.hpp"
#include "qtraj/params.hpp"
#include "qtraj/qjump.hpp"

namespace qtraj {

// Mutual-information estimator.
//   kInstantaneous: quantum MI of each trajectory's pure state, 2 S(rho_A),
//                   averaged over the window and the ensemble; classical MI of
//                   the pooled joint-spin distribution P(s1, s2).
//   kEnsemble:      both models from pooled objects (ensemble density matrix,
//                   pooled spin table).
//   kPerTrajectory: both models per trajectory (pure-state MI; MI of each
//                   trajectory's time-averaged spin table), then averaged.
enum class MiMode { kInstantaneous, kEnsemble, kPerTrajectory };

// True when `model` is evaluated per trajectory under `mode`.
bool mi_per_trajectory(MiMode mode, Model model);

std::string_view to_string(MiMode m);
MiMode mi_mode_from_string(std::string_view s);

// How the quantum model's joint state table P(s1, s2) is formed.
//   kParity:  s_i(t) = (number of channel-i emissions before t) mod 2, the same
//             record-derived bit the classical model flips on every emission.
//   kDensity: computational-basis diagonal of the ensemble density matrix.
enum class OccupancyMode { kParity, kDensity };

std::string_view to_string(OccupancyMode m);
OccupancyMode occupancy_mode_from_string(std::string_view s);

struct AnalysisOptions {
  double transient_fraction = 0.2;
  std::int64_t max_lag = 200;
  EmissionConvention convention = EmissionConvention::kAnyFlip;
  MiMode mi_mode = MiMode::kInstantaneous;
  OccupancyMode occupancy_mode = OccupancyMode::kParity;
  int threads = 0;  // 0: std::thread::hardware_concurrency()
  int blocks = 20;  // trajectory blocks for pooled MI / occupancy error bars

  void validate() const;
};

// First analysed step: floor(transient_fraction * steps).
std::int64_t window_start(const SimParams& p, const AnalysisOptions& opt);

// Everything the ensemble statistics need from one trajectory.
struct TrajectorySummary {
  std::int64_t traj_index = 0;
  std::int64_t window_steps = 0;
  std::int64_t count1 = 0;
  std::int64_t count2 = 0;
  double lz = 0.0;  // normalized joint LZ over the window
  double count_slope = 0.0;  // OLS slope of N2(t) on N1(t) over the window; NaN if N1 is flat
  std::vector<std::int64_t> c11;  // lagged coincidence counts, tau = 0..max_lag
  std::vector<std::int64_t> c22;
  std::vector<std::int64_t> c12;
  DensityAccumulator density;  // quantum samples in the window
  std::array<std::array<std::int64_t, 2>, 2> state_counts{};   // sampled (s1, s2): spins or parities
  double mi_per_trajectory = 0.0;
};

TrajectorySummary summarize_trajectory(const EmissionRecord& rec, const AnalysisOptions& opt);

struct EnsembleSummary {
  Model model = Model::kQuantum;
  SimParams params;
  AnalysisOptions options;
  std::int64_t window_start = 0;
  std::int64_t window_steps = 0;

  MeanSem lz;
  MeanSem rate1;  // emissions per unit time
  MeanSem rate2;
  MeanSem emissions_per_step1;
  MeanSem emissions_per_step2;
  MeanSem count_slope;  // over trajectories with a defined slope

  CorrelationSeries c11, c22, c12;
  std::vector<double> c11_sem, c22_sem, c12_sem;

  CMatrix density{4};  // quantum only
  OccupancyTable occupancy;
  std::array<std::array<double, 2>, 2> occupancy_sem{};

  double mi = 0.0;
  double mi_err = 0.0;

  std::vector<double> trajectory_lz;
  std::vector<std::int64_t> trajectory_counts1;
  std::vector<std::int64_t> trajectory_counts2;
};

// Runs p.n_traj trajectories of the given model across a worker pool and
// reduces in trajectory-index order, so the result is bit-identical for any
// thread count.
EnsembleSummary run_ensemble(const SimParams& p, Model model, const AnalysisOptions& opt);

// Executes job(i) for i in [0, n) on `threads` workers (0 = hardware).
// Exceptions from jobs are rethrown on the calling thread.
void parallel_for(std::int64_t n, int threads, const std::function<void(std::int64_t)>& job);

// Single-trajectory dispatch on model.
EmissionRecord simulate_trajectory(const SimParams& p, Model model, std::int64_t traj_index,
                                   EmissionConvention convention = EmissionConvention::kAnyFlip);

}  // namespace qtraj
