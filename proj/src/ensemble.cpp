#include "qtraj/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "qtraj/errors.hpp"
#include "qtraj/telegraph.hpp"

namespace qtraj {

std::string_view to_string(MiMode m) {
  switch (m) {
    case MiMode::kInstantaneous: return "instantaneous";
    case MiMode::kEnsemble: return "ensemble";
    case MiMode::kPerTrajectory: return "per-trajectory";
  }
  return "?";
}

MiMode mi_mode_from_string(std::string_view s) {
  if (s == "instantaneous") return MiMode::kInstantaneous;
  if (s == "ensemble") return MiMode::kEnsemble;
  if (s == "per-trajectory") return MiMode::kPerTrajectory;
  throw ConfigError("unknown mi mode '" + std::string(s) + "' (expected instantaneous, ensemble or per-trajectory)");
}

bool mi_per_trajectory(MiMode mode, Model model) {
  if (mode == MiMode::kPerTrajectory) return true;
  return mode == MiMode::kInstantaneous && model == Model::kQuantum;
}

std::string_view to_string(OccupancyMode m) { return m == OccupancyMode::kParity ? "parity" : "density"; }

OccupancyMode occupancy_mode_from_string(std::string_view s) {
  if (s == "parity") return OccupancyMode::kParity;
  if (s == "density") return OccupancyMode::kDensity;
  throw ConfigError("unknown occupancy mode '" + std::string(s) + "' (expected parity or density)");
}

void AnalysisOptions::validate() const {
  if (!(transient_fraction >= 0.0 && transient_fraction < 1.0)) {
    throw ConfigError("invalid transient = " + std::to_string(transient_fraction) + ": must satisfy 0 <= transient < 1");
  }
  if (max_lag < 0) throw ConfigError("invalid max_lag = " + std::to_string(max_lag) + ": must satisfy max_lag >= 0");
  if (threads < 0) throw ConfigError("invalid threads = " + std::to_string(threads) + ": must satisfy threads >= 0");
  if (blocks < 2) throw ConfigError("invalid blocks = " + std::to_string(blocks) + ": must satisfy blocks >= 2");
}

std::int64_t window_start(const SimParams& p, const AnalysisOptions& opt) {
  return static_cast<std::int64_t>(std::floor(opt.transient_fraction * static_cast<double>(p.steps)));
}

void parallel_for(std::int64_t n, int threads, const std::function<void(std::int64_t)>& job) {
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = static_cast<int>(std::min<std::int64_t>(threads, std::max<std::int64_t>(n, 1)));
  if (threads == 1) {
    for (std::int64_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        job(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

EmissionRecord simulate_trajectory(const SimParams& p, Model model, std::int64_t traj_index,
                                   EmissionConvention convention) {
  return model == Model::kQuantum ? run_trajectory(p, traj_index)
                                  : run_trajectory_classical(p, traj_index, convention);
}

namespace {

std::vector<std::int64_t> event_positions(const std::vector<std::uint8_t>& r, std::int64_t from) {
  std::vector<std::int64_t> ev;
  for (std::int64_t t = from; t < static_cast<std::int64_t>(r.size()); ++t)
    if (r[static_cast<std::size_t>(t)]) ev.push_back(t - from);
  return ev;
}

double cumulative_slope(std::span<const std::uint8_t> r1, std::span<const std::uint8_t> r2) {
  double n1 = 0.0, n2 = 0.0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t t = 0; t < r1.size(); ++t) {
    n1 += r1[t];
    n2 += r2[t];
    sx += n1;
    sy += n2;
    sxx += n1 * n1;
    sxy += n1 * n2;
  }
  const double n = static_cast<double>(r1.size());
  const double vx = sxx - sx * sx / n;
  if (!(vx > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return (sxy - sx * sy / n) / vx;
}

double occupancy_mi(const std::array<std::array<std::int64_t, 2>, 2>& counts) {
  return classical_mutual_information(OccupancyTable::from_counts(counts));
}

// Trajectories [b*n/B, (b+1)*n/B) form block b.
std::vector<std::pair<std::size_t, std::size_t>> block_ranges(std::size_t n, int blocks) {
  const std::size_t b = std::min<std::size_t>(static_cast<std::size_t>(blocks), n);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t k = 0; k < b; ++k) out.emplace_back(k * n / b, (k + 1) * n / b);
  return out;
}

}  // namespace

TrajectorySummary summarize_trajectory(const EmissionRecord& rec, const AnalysisOptions& opt) {
  const SimParams& p = rec.params;
  const std::int64_t w0 = window_start(p, opt);
  const std::int64_t n = rec.size() - w0;
  if (n < 2) throw ConfigError("analysis window has fewer than 2 steps; lower transient or raise steps");
  const std::int64_t max_lag = std::min(opt.max_lag, n - 1);

  TrajectorySummary s;
  s.traj_index = rec.traj_index;
  s.window_steps = n;

  const auto ev1 = event_positions(rec.r1, w0);
  const auto ev2 = event_positions(rec.r2, w0);
  s.count1 = static_cast<std::int64_t>(ev1.size());
  s.count2 = static_cast<std::int64_t>(ev2.size());
  s.c11 = lagged_coincidences(ev1, ev1, max_lag);
  s.c22 = lagged_coincidences(ev2, ev2, max_lag);
  s.c12 = lagged_coincidences(ev1, ev2, max_lag);

  const std::span<const std::uint8_t> r1(rec.r1.data() + w0, static_cast<std::size_t>(n));
  const std::span<const std::uint8_t> r2(rec.r2.data() + w0, static_cast<std::size_t>(n));
  s.lz = normalized_lz(joint_encode(r1, r2), 4);
  s.count_slope = cumulative_slope(r1, r2);

  const bool per_traj_mi = mi_per_trajectory(opt.mi_mode, rec.model);
  if (rec.model == Model::kQuantum) {
    // Parity of the emission counts up to (not including) each sampled step.
    int par1 = 0, par2 = 0;
    std::int64_t t = 0;
    double mi_sum = 0.0;
    std::int64_t mi_count = 0;
    for (const auto& smp : rec.quantum_samples) {
      for (; t < smp.step; ++t) {
        par1 ^= rec.r1[static_cast<std::size_t>(t)];
        par2 ^= rec.r2[static_cast<std::size_t>(t)];
      }
      if (smp.step < w0) continue;
      s.density.add(smp.psi);
      ++s.state_counts[par1][par2];
      if (per_traj_mi) {
        mi_sum += pure_state_mutual_information(smp.psi);
        ++mi_count;
      }
    }
    if (per_traj_mi && mi_count > 0) s.mi_per_trajectory = mi_sum / static_cast<double>(mi_count);
  } else {
    for (const auto& smp : rec.classical_samples) {
      if (smp.step < w0) continue;
      ++s.state_counts[smp.s1][smp.s2];
    }
    if (per_traj_mi) s.mi_per_trajectory = occupancy_mi(s.state_counts);
  }
  return s;
}

EnsembleSummary run_ensemble(const SimParams& p, Model model, const AnalysisOptions& opt) {
  p.validate();
  opt.validate();

  std::vector<TrajectorySummary> per(static_cast<std::size_t>(p.n_traj));
  parallel_for(p.n_traj, opt.threads, [&](std::int64_t i) {
    const EmissionRecord rec = simulate_trajectory(p, model, i, opt.convention);
    per[static_cast<std::size_t>(i)] = summarize_trajectory(rec, opt);
  });

  EnsembleSummary out;
  out.model = model;
  out.params = p;
  out.options = opt;
  out.window_start = window_start(p, opt);
  out.window_steps = per.front().window_steps;
  const double window_time = static_cast<double>(out.window_steps) * p.dt;

  std::vector<double> lz, r1, r2, e1, e2, mi_traj, slopes;
  for (const auto& s : per) {
    lz.push_back(s.lz);
    e1.push_back(static_cast<double>(s.count1) / static_cast<double>(s.window_steps));
    e2.push_back(static_cast<double>(s.count2) / static_cast<double>(s.window_steps));
    r1.push_back(static_cast<double>(s.count1) / window_time);
    r2.push_back(static_cast<double>(s.count2) / window_time);
    mi_traj.push_back(s.mi_per_trajectory);
    if (std::isfinite(s.count_slope)) slopes.push_back(s.count_slope);
    out.trajectory_lz.push_back(s.lz);
    out.trajectory_counts1.push_back(s.count1);
    out.trajectory_counts2.push_back(s.count2);
  }
  out.lz = mean_sem(lz);
  out.rate1 = mean_sem(r1);
  out.rate2 = mean_sem(r2);
  out.emissions_per_step1 = mean_sem(e1);
  out.emissions_per_step2 = mean_sem(e2);
  out.count_slope = mean_sem(slopes);

  // Correlations: mean over trajectories of count / (n - tau).
  const std::size_t lags = per.front().c11.size();
  auto reduce_corr = [&](auto member, CorrelationSeries& series, std::vector<double>& sem) {
    series.lags.resize(lags);
    series.values.resize(lags);
    sem.resize(lags);
    std::vector<double> col(per.size());
    for (std::size_t tau = 0; tau < lags; ++tau) {
      for (std::size_t i = 0; i < per.size(); ++i) {
        col[i] = static_cast<double>((per[i].*member)[tau]) /
                 static_cast<double>(per[i].window_steps - static_cast<std::int64_t>(tau));
      }
      const MeanSem ms = mean_sem(col);
      series.lags[tau] = static_cast<std::int64_t>(tau);
      series.values[tau] = ms.mean;
      sem[tau] = ms.sem;
    }
  };
  reduce_corr(&TrajectorySummary::c11, out.c11, out.c11_sem);
  reduce_corr(&TrajectorySummary::c22, out.c22, out.c22_sem);
  reduce_corr(&TrajectorySummary::c12, out.c12, out.c12_sem);

  // Pooled and per-block state tables / density matrices.
  const auto ranges = block_ranges(per.size(), opt.blocks);
  DensityAccumulator pooled_density;
  std::array<std::array<std::int64_t, 2>, 2> pooled_counts{};
  std::vector<DensityAccumulator> block_density(ranges.size());
  std::vector<std::array<std::array<std::int64_t, 2>, 2>> block_counts(ranges.size());
  for (std::size_t b = 0; b < ranges.size(); ++b) {
    for (std::size_t i = ranges[b].first; i < ranges[b].second; ++i) {
      block_density[b].merge(per[i].density);
      for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c) block_counts[b][a][c] += per[i].state_counts[a][c];
    }
    pooled_density.merge(block_density[b]);
    for (int a = 0; a < 2; ++a)
      for (int c = 0; c < 2; ++c) pooled_counts[a][c] += block_counts[b][a][c];
  }

  const bool quantum = model == Model::kQuantum;
  if (quantum) out.density = pooled_density.mean();
  const bool use_density_table = quantum && opt.occupancy_mode == OccupancyMode::kDensity;
  out.occupancy = use_density_table ? occupancy_table(out.density) : OccupancyTable::from_counts(pooled_counts);
  {
    std::array<std::array<std::vector<double>, 2>, 2> cells;
    for (std::size_t b = 0; b < ranges.size(); ++b) {
      const OccupancyTable t = use_density_table ? occupancy_table(block_density[b].mean())
                                                 : OccupancyTable::from_counts(block_counts[b]);
      for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c) cells[a][c].push_back(t.p[a][c]);
    }
    for (int a = 0; a < 2; ++a)
      for (int c = 0; c < 2; ++c) out.occupancy_sem[a][c] = mean_sem(cells[a][c]).sem;
  }

  if (mi_per_trajectory(opt.mi_mode, model)) {
    const MeanSem ms = mean_sem(mi_traj);
    out.mi = ms.mean;
    out.mi_err = ms.sem;
  } else {
    out.mi = quantum ? quantum_mutual_information(out.density) : occupancy_mi(pooled_counts);
    std::vector<double> block_mi;
    for (std::size_t b = 0; b < ranges.size(); ++b) {
      block_mi.push_back(quantum ? quantum_mutual_information(block_density[b].mean()) : occupancy_mi(block_counts[b]));
    }
    out.mi_err = mean_sem(block_mi).sem;
  }
  return out;
}

}  // namespace qtraj
