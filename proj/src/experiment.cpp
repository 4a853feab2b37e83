#include "qtraj/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "qtraj/errors.hpp"

namespace qtraj {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::string_view version() { return QTRAJ_VERSION; }

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string header_block(const ExperimentConfig& cfg, std::string_view command) {
  std::string out;
  out += "# qtraj " + std::string(version()) + "\n";
  out += "# command: " + std::string(command) + "\n";
  out += "# config: " + cfg.to_json().dump() + "\n";
  out += "# seed: " + std::to_string(cfg.params.seed) + "\n";
  return out;
}

namespace {

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
}

std::string join(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += fields[i];
  }
  return line;
}

std::string num(double v) { return format_number(v); }
std::string num(std::int64_t v) { return std::to_string(v); }

std::string tag(Model m, double coupling) {
  return std::string(to_string(m)) + "_J" + format_number(coupling);
}

void log_line(std::ostream* log, const std::string& line) {
  if (log) *log << line << std::endl;
}

ordered_json mean_sem_json(const MeanSem& m) {
  ordered_json j;
  j["mean"] = m.mean;
  j["sem"] = m.sem;
  j["n"] = m.n;
  return j;
}

ordered_json table_json(const std::array<std::array<double, 2>, 2>& t) {
  return ordered_json{{"p00", t[0][0]}, {"p01", t[0][1]}, {"p10", t[1][0]}, {"p11", t[1][1]}};
}

SimParams point_params(const ExperimentConfig& cfg, double omega, double gamma, double coupling) {
  SimParams p = cfg.params;
  p.omega = omega;
  p.gamma = gamma;
  p.coupling = coupling;
  return p;
}

}  // namespace

CsvWriter::CsvWriter(const fs::path& path, const std::string& header, const std::vector<std::string>& columns)
    : path_(path) {
  if (path.has_parent_path()) ensure_directory(path.parent_path());
  out_.open(path, std::ios::out | std::ios::trunc);
  if (!out_) throw IoError("cannot open " + path.string() + " for writing");
  out_ << header << join(columns) << '\n';
  out_.flush();
  if (!out_) throw IoError("write failed on " + path.string());
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  out_ << join(fields) << '\n';
  out_.flush();
  if (!out_) throw IoError("write failed on " + path_.string());
}

void write_json(const fs::path& path, const ordered_json& doc) {
  if (path.has_parent_path()) ensure_directory(path.parent_path());
  std::ofstream out(path, std::ios::out | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("write failed on " + path.string());
}

bool sweep_order(const SweepPoint& a, const SweepPoint& b) {
  const std::string_view ma = to_string(a.model), mb = to_string(b.model);
  if (ma != mb) return ma < mb;
  if (a.ratio() != b.ratio()) return a.ratio() < b.ratio();
  if (a.coupling != b.coupling) return a.coupling < b.coupling;
  return a.gamma < b.gamma;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0 && hi > lo) || points < 2) throw ConfigError("log_grid: need 0 < lo < hi and at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(points));
  const double step = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> coupling_grid(const ExperimentConfig& cfg, const std::vector<double>& fallback) {
  return cfg.sweep.couplings.empty() ? fallback : cfg.sweep.couplings;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, std::vector<SweepPoint> points, const fs::path& csv,
                                std::string_view command, std::ostream* log) {
  std::stable_sort(points.begin(), points.end(), sweep_order);
  CsvWriter out(csv, header_block(cfg, command),
                {"model", "omega", "gamma", "coupling", "omega_over_gamma", "lz", "lz_err", "mi", "mi_err", "n_traj",
                 "steps", "seed"});
  std::vector<SweepRow> rows;
  rows.reserve(points.size());
  for (const auto& pt : points) {
    const SimParams p = point_params(cfg, pt.omega, pt.gamma, pt.coupling);
    EnsembleSummary s = run_ensemble(p, pt.model, cfg.analysis);
    out.row({std::string(to_string(pt.model)), num(pt.omega), num(pt.gamma), num(pt.coupling), num(pt.ratio()),
             num(s.lz.mean), num(s.lz.sem), num(s.mi), num(s.mi_err), num(p.n_traj), num(p.steps),
             std::to_string(p.seed)});
    log_line(log, "[" + std::string(command) + "] " + std::string(to_string(pt.model)) + " omega=" + num(pt.omega) +
                      " gamma=" + num(pt.gamma) + " J=" + num(pt.coupling) + " lz=" + num(s.lz.mean) +
                      " mi=" + num(s.mi));
    rows.push_back({pt, std::move(s)});
  }
  return rows;
}

// --- simulate --------------------------------------------------------------

std::vector<fs::path> run_single(const ExperimentConfig& cfg) {
  cfg.validate();
  ensure_directory(cfg.output_dir);
  const auto models = models_of(cfg.model);
  const std::string header = header_block(cfg, "simulate");
  const SimParams& p = cfg.params;
  const std::int64_t jobs = static_cast<std::int64_t>(models.size()) * p.n_traj;

  std::vector<fs::path> files(static_cast<std::size_t>(2 * jobs));
  parallel_for(jobs, cfg.analysis.threads, [&](std::int64_t job) {
    const Model model = models[static_cast<std::size_t>(job / p.n_traj)];
    const std::int64_t i = job % p.n_traj;
    const EmissionRecord rec = simulate_trajectory(p, model, i, cfg.analysis.convention);
    const std::string stem = std::string(to_string(model)) + "_traj" + std::to_string(i) + ".csv";

    CsvWriter em(cfg.output_dir / ("emissions_" + stem), header, {"step", "t", "r1", "r2"});
    for (std::int64_t t = 0; t < rec.size(); ++t) {
      em.row({num(t), num(static_cast<double>(t) * p.dt), std::to_string(rec.r1[static_cast<std::size_t>(t)]),
              std::to_string(rec.r2[static_cast<std::size_t>(t)])});
    }

    const fs::path states_path = cfg.output_dir / ("states_" + stem);
    if (model == Model::kQuantum) {
      CsvWriter st(states_path, header,
                   {"step", "t", "re_ee", "im_ee", "re_eg", "im_eg", "re_ge", "im_ge", "re_gg", "im_gg"});
      for (const auto& smp : rec.quantum_samples) {
        std::vector<std::string> f{num(smp.step), num(static_cast<double>(smp.step) * p.dt)};
        for (int k = 0; k < 4; ++k) {
          f.push_back(num(smp.psi[k].real()));
          f.push_back(num(smp.psi[k].imag()));
        }
        st.row(f);
      }
    } else {
      CsvWriter st(states_path, header, {"step", "t", "s1", "s2"});
      for (const auto& smp : rec.classical_samples) {
        st.row({num(smp.step), num(static_cast<double>(smp.step) * p.dt), std::to_string(smp.s1),
                std::to_string(smp.s2)});
      }
    }
    files[static_cast<std::size_t>(2 * job)] = em.path();
    files[static_cast<std::size_t>(2 * job + 1)] = states_path;
  });
  return files;
}

// --- fig1 -------------------------------------------------------------------

Fig1Result run_fig1(const ExperimentConfig& cfg, std::ostream* log) {
  cfg.validate();
  ensure_directory(cfg.output_dir);
  const std::string header = header_block(cfg, "fig1");
  std::vector<double> couplings = coupling_grid(cfg, {0.0, 0.5, 3.0});
  std::sort(couplings.begin(), couplings.end());

  Fig1Result result;
  ordered_json summary;
  summary["entries"] = ordered_json::array();
  for (Model model : models_of(cfg.model)) {
    // Seed-paired J = 0 reference for the correlation differences.
    const SimParams base_p = point_params(cfg, cfg.params.omega, cfg.params.gamma, 0.0);
    const EnsembleSummary baseline = run_ensemble(base_p, model, cfg.analysis);

    for (double j : couplings) {
      const SimParams p = point_params(cfg, cfg.params.omega, cfg.params.gamma, j);
      EnsembleSummary s = j == 0.0 ? baseline : run_ensemble(p, model, cfg.analysis);
      const std::string name = tag(model, j);

      const EmissionRecord rec = simulate_trajectory(p, model, 0, cfg.analysis.convention);
      {
        CsvWriter em(cfg.output_dir / ("fig1_emissions_" + name + ".csv"), header, {"step", "t", "r1", "r2"});
        for (std::int64_t t = 0; t < rec.size(); ++t) {
          em.row({num(t), num(static_cast<double>(t) * p.dt), std::to_string(rec.r1[static_cast<std::size_t>(t)]),
                  std::to_string(rec.r2[static_cast<std::size_t>(t)])});
        }
      }
      {
        const CumulativeCounts cc = cumulative_counts(rec);
        CsvWriter out(cfg.output_dir / ("fig1_counts_" + name + ".csv"), header, {"step", "t", "n1", "n2"});
        for (std::int64_t t = 0; t < rec.size(); t += p.sample_stride) {
          const auto k = static_cast<std::size_t>(t);
          out.row({num(t), num(static_cast<double>(t + 1) * p.dt), num(cc.n1[k]), num(cc.n2[k])});
        }
      }
      {
        const CorrelationSeries d11 = delta_correlation(s.c11, baseline.c11);
        const CorrelationSeries d22 = delta_correlation(s.c22, baseline.c22);
        const CorrelationSeries d12 = delta_correlation(s.c12, baseline.c12);
        CsvWriter out(cfg.output_dir / ("fig1_correlation_" + name + ".csv"), header,
                      {"tau", "lag_steps", "c11", "c22", "c12", "dc11", "dc22", "dc12"});
        for (std::size_t k = 0; k < s.c11.lags.size(); ++k) {
          const std::int64_t lag = s.c11.lags[k];
          out.row({num(static_cast<double>(lag) * p.dt), num(lag), num(s.c11.values[k]), num(s.c22.values[k]),
                   num(s.c12.values[k]), num(d11.values[k]), num(d22.values[k]), num(d12.values[k])});
        }
      }

      std::int64_t total = 0;
      for (std::size_t i = 0; i < s.trajectory_counts1.size(); ++i) {
        total += s.trajectory_counts1[i] + s.trajectory_counts2[i];
      }
      ordered_json e;
      e["model"] = to_string(model);
      e["coupling"] = j;
      e["count_slope"] = mean_sem_json(s.count_slope);
      e["total_emissions"] = total;
      e["rate1"] = mean_sem_json(s.rate1);
      e["rate2"] = mean_sem_json(s.rate2);
      e["lz"] = mean_sem_json(s.lz);
      summary["entries"].push_back(e);
      log_line(log, "[fig1] " + name + " slope=" + num(s.count_slope.mean) + " total=" + num(total));
      result.entries.push_back({model, j, std::move(s), total});
    }
  }
  write_json(cfg.output_dir / "fig1_summary.json", summary);
  return result;
}

// --- fig2 -------------------------------------------------------------------

double Fig2Entry::max_deviation() const {
  double m = 0.0;
  for (const auto& row : table.p)
    for (double v : row) m = std::max(m, std::abs(v - 0.25));
  return m;
}

double Fig2Entry::max_deviation_in_sem() const {
  double m = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double d = std::abs(table.p[a][b] - 0.25);
      m = std::max(m, sem[a][b] > 0.0 ? d / sem[a][b] : (d > 0.0 ? std::numeric_limits<double>::infinity() : 0.0));
    }
  }
  return m;
}

Fig2Result run_fig2(const ExperimentConfig& cfg, std::ostream* log) {
  cfg.validate();
  ensure_directory(cfg.output_dir);
  std::vector<double> couplings = coupling_grid(cfg, {0.0, 0.1, 1.0, 3.0});
  std::sort(couplings.begin(), couplings.end());

  CsvWriter out(cfg.output_dir / "fig2_occupancy.csv", header_block(cfg, "fig2"),
                {"model", "coupling", "p00", "p01", "p10", "p11"});
  Fig2Result result;
  ordered_json summary;
  summary["occupancy_mode"] = to_string(cfg.analysis.occupancy_mode);
  summary["entries"] = ordered_json::array();
  for (Model model : models_of(cfg.model)) {
    for (double j : couplings) {
      const SimParams p = point_params(cfg, cfg.params.omega, cfg.params.gamma, j);
      const EnsembleSummary s = run_ensemble(p, model, cfg.analysis);
      Fig2Entry e{model, j, s.occupancy, s.occupancy_sem};
      out.row({std::string(to_string(model)), num(j), num(e.table.p[0][0]), num(e.table.p[0][1]),
               num(e.table.p[1][0]), num(e.table.p[1][1])});
      ordered_json je;
      je["model"] = to_string(model);
      je["coupling"] = j;
      je["p"] = table_json(e.table.p);
      je["sem"] = table_json(e.sem);
      je["max_deviation_from_uniform"] = e.max_deviation();
      je["max_deviation_in_sem"] = e.max_deviation_in_sem();
      summary["entries"].push_back(je);
      log_line(log, "[fig2] " + tag(model, j) + " p00=" + num(e.table.p[0][0]) + " p11=" + num(e.table.p[1][1]));
      result.entries.push_back(e);
    }
  }
  write_json(cfg.output_dir / "fig2_summary.json", summary);
  return result;
}

// --- fig3 -------------------------------------------------------------------

Fig3Panels Fig3Panels::parse(std::string_view letters) {
  Fig3Panels p{false, false, false};
  if (letters.empty()) throw ConfigError("invalid panels = '': choose any of a, b, c");
  for (char c : letters) {
    if (c == 'a') p.omega = true;
    else if (c == 'b') p.gamma = true;
    else if (c == 'c') p.ratio = true;
    else throw ConfigError("invalid panels = '" + std::string(letters) + "': choose any of a, b, c");
  }
  return p;
}

namespace {

// Argmax of mean LZ among rows for which `select` holds.
template <typename Select>
std::optional<std::size_t> peak_index(const std::vector<SweepRow>& rows, Select select) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!select(rows[i])) continue;
    if (!best || rows[i].summary.lz.mean > rows[*best].summary.lz.mean) best = i;
  }
  return best;
}

ordered_json peak_json(const SweepRow& r) {
  ordered_json j;
  j["model"] = to_string(r.point.model);
  j["omega"] = r.point.omega;
  j["gamma"] = r.point.gamma;
  j["omega_over_gamma"] = r.point.ratio();
  j["lz"] = r.summary.lz.mean;
  j["lz_err"] = r.summary.lz.sem;
  return j;
}

}  // namespace

Fig3Result run_fig3(const ExperimentConfig& cfg_in, Fig3Panels panels, std::ostream* log) {
  ExperimentConfig cfg = cfg_in;
  cfg.params.coupling = 0.0;
  cfg.sweep.couplings = {0.0};
  cfg.validate();
  ensure_directory(cfg.output_dir);
  const auto models = models_of(cfg.model);

  Fig3Result result;
  ordered_json summary;

  if (panels.omega) {
    std::vector<SweepPoint> pts;
    for (Model m : models)
      for (double g : cfg.sweep.fig3_gammas)
        for (double w : log_grid(0.1, 10.0, cfg.sweep.panel_points)) pts.push_back({m, w, g, 0.0});
    result.omega_rows = run_sweep(cfg, pts, cfg.output_dir / "fig3_omega.csv", "fig3", log);
    ordered_json peaks = ordered_json::array();
    for (Model m : models)
      for (double g : cfg.sweep.fig3_gammas)
        if (auto i = peak_index(result.omega_rows,
                                [&](const SweepRow& r) { return r.point.model == m && r.point.gamma == g; }))
          peaks.push_back(peak_json(result.omega_rows[*i]));
    summary["omega_panel_peaks"] = peaks;
  }

  if (panels.gamma) {
    double hi = std::min(5.0, SimParams::kMaxGammaDt / cfg.params.dt);
    while (hi * cfg.params.dt > SimParams::kMaxGammaDt) hi = std::nextafter(hi, 0.0);
    std::vector<SweepPoint> pts;
    for (Model m : models)
      for (double w : cfg.sweep.fig3_omegas)
        for (double g : log_grid(0.1, hi, cfg.sweep.panel_points)) pts.push_back({m, w, g, 0.0});
    result.gamma_rows = run_sweep(cfg, pts, cfg.output_dir / "fig3_gamma.csv", "fig3", log);
    ordered_json peaks = ordered_json::array();
    for (Model m : models)
      for (double w : cfg.sweep.fig3_omegas)
        if (auto i = peak_index(result.gamma_rows,
                                [&](const SweepRow& r) { return r.point.model == m && r.point.omega == w; }))
          peaks.push_back(peak_json(result.gamma_rows[*i]));
    summary["gamma_panel_peaks"] = peaks;
  }

  if (panels.ratio) {
    const double g = cfg.params.gamma;
    std::vector<SweepPoint> pts;
    for (Model m : models)
      for (double x : log_grid(cfg.sweep.ratio_min, cfg.sweep.ratio_max, cfg.sweep.ratio_points))
        pts.push_back({m, x * g, g, 0.0});
    result.ratio_rows = run_sweep(cfg, pts, cfg.output_dir / "fig3_ratio.csv", "fig3", log);
    ordered_json peaks = ordered_json::array();
    for (Model m : models) {
      if (auto i = peak_index(result.ratio_rows, [&](const SweepRow& r) { return r.point.model == m; })) {
        const SweepRow& r = result.ratio_rows[*i];
        result.peaks.push_back({m, r.point.ratio(), r.summary.lz.mean, r.summary.lz.sem, r.summary.lz.n});
        peaks.push_back(peak_json(r));
      }
    }
    summary["ratio_panel_peaks"] = peaks;

    const PeakInfo* q = nullptr;
    const PeakInfo* c = nullptr;
    for (const auto& pk : result.peaks) (pk.model == Model::kQuantum ? q : c) = &pk;
    if (q && c) {
      try {
        result.welch = welch_t_test(q->lz, q->lz_err, q->n_traj, c->lz, c->lz_err, c->n_traj);
        summary["peak_welch"] = {{"t", result.welch->t}, {"p_value", result.welch->p_value}, {"dof", result.welch->dof}};
      } catch (const std::invalid_argument&) {
        summary["peak_welch"] = nullptr;
      }
    }
  }
  write_json(cfg.output_dir / "fig3_summary.json", summary);
  return result;
}

// --- fig4 -------------------------------------------------------------------

Fig4Result run_fig4(const ExperimentConfig& cfg, std::ostream* log) {
  cfg.validate();
  ensure_directory(cfg.output_dir);
  const auto models = models_of(cfg.model);
  const std::vector<double> couplings = coupling_grid(cfg, {0.0, 0.1, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0});
  const double g = cfg.params.gamma;

  std::vector<SweepPoint> pts;
  for (Model m : models)
    for (double x : cfg.sweep.ratios)
      for (double j : couplings) pts.push_back({m, x * g, g, j});

  Fig4Result result;
  result.rows = run_sweep(cfg, pts, cfg.output_dir / "fig4_sweep.csv", "fig4", log);

  auto spearman_or_null = [](const std::vector<double>& x, const std::vector<double>& y) -> std::optional<SpearmanResult> {
    try {
      return spearman(x, y);
    } catch (const UndefinedStatisticError&) {
      return std::nullopt;
    }
  };
  auto result_json = [](const std::optional<SpearmanResult>& r) -> ordered_json {
    if (!r) return nullptr;
    return ordered_json{{"rho", r->rho}, {"p_value", r->p_value}};
  };

  ordered_json summary;
  summary["mi_mode"] = to_string(cfg.analysis.mi_mode);
  summary["lz_vs_coupling"] = ordered_json::array();
  summary["lz_vs_mi"] = ordered_json::array();
  for (Model m : models) {
    std::vector<double> all_lz, all_mi;
    for (double x : cfg.sweep.ratios) {
      std::vector<double> js, lz;
      for (const auto& r : result.rows) {
        if (r.point.model != m || r.point.omega != x * g) continue;
        js.push_back(r.point.coupling);
        lz.push_back(r.summary.lz.mean);
      }
      Fig4Trend tr{m, x, spearman_or_null(js, lz)};
      ordered_json jt;
      jt["model"] = to_string(m);
      jt["omega_over_gamma"] = x;
      jt["spearman"] = result_json(tr.lz_vs_j);
      summary["lz_vs_coupling"].push_back(jt);
      result.trends.push_back(tr);
    }
    for (const auto& r : result.rows) {
      if (r.point.model != m) continue;
      all_lz.push_back(r.summary.lz.mean);
      all_mi.push_back(r.summary.mi);
    }
    const auto pooled = spearman_or_null(all_lz, all_mi);
    ordered_json jp;
    jp["model"] = to_string(m);
    jp["points"] = all_lz.size();
    jp["spearman"] = result_json(pooled);
    summary["lz_vs_mi"].push_back(jp);
    result.pooled.emplace_back(m, pooled);
  }
  write_json(cfg.output_dir / "fig4_summary.json", summary);
  return result;
}

// --- metrics ----------------------------------------------------------------

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

template <typename T>
T parse_field(std::string_view s, const fs::path& path, std::int64_t line_no) {
  T v{};
  if constexpr (std::is_floating_point_v<T>) {
    const std::string tmp(s);
    char* end = nullptr;
    v = std::strtod(tmp.c_str(), &end);
    if (tmp.empty() || end != tmp.c_str() + tmp.size()) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": bad number '" + tmp + "'");
    }
  } else {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": bad integer '" + std::string(s) + "'");
    }
  }
  return v;
}

}  // namespace

EmissionsFile read_emissions_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  EmissionsFile f;
  std::string line;
  std::int64_t line_no = 0;
  bool have_columns = false;
  const std::string marker = "# config: ";
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind(marker, 0) == 0) {
        try {
          f.config = json::parse(line.substr(marker.size()));
        } catch (const json::parse_error& e) {
          throw ConfigError(path.string() + ": malformed config header: " + e.what());
        }
      }
      continue;
    }
    if (!have_columns) {
      if (line != "step,t,r1,r2") {
        throw ConfigError(path.string() + ": expected columns 'step,t,r1,r2', found '" + line + "'");
      }
      have_columns = true;
      continue;
    }
    const auto fields = split_commas(line);
    if (fields.size() != 4) throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected 4 fields");
    f.steps.push_back(parse_field<std::int64_t>(fields[0], path, line_no));
    f.t.push_back(parse_field<double>(fields[1], path, line_no));
    const int a = parse_field<int>(fields[2], path, line_no);
    const int b = parse_field<int>(fields[3], path, line_no);
    if ((a | b) & ~1) throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": r1, r2 must be 0 or 1");
    f.r1.push_back(static_cast<std::uint8_t>(a));
    f.r2.push_back(static_cast<std::uint8_t>(b));
  }
  if (in.bad()) throw IoError("read failed on " + path.string());
  if (!have_columns) throw ConfigError(path.string() + ": no column header found");
  return f;
}

ordered_json emission_metrics(const EmissionsFile& file, const AnalysisOptions& opt) {
  opt.validate();
  const auto n_total = static_cast<std::int64_t>(file.r1.size());
  double dt = std::numeric_limits<double>::quiet_NaN();
  if (file.config && file.config->contains("dt")) {
    dt = file.config->at("dt").get<double>();
  } else if (n_total >= 2) {
    dt = file.t[1] - file.t[0];
  }
  if (!(dt > 0.0)) throw ConfigError("cannot determine dt: need a config header or at least two rows");

  const auto w0 = static_cast<std::int64_t>(std::floor(opt.transient_fraction * static_cast<double>(n_total)));
  const std::int64_t n = n_total - w0;
  if (n < 2) throw ConfigError("analysis window has fewer than 2 steps");
  const std::span<const std::uint8_t> r1(file.r1.data() + w0, static_cast<std::size_t>(n));
  const std::span<const std::uint8_t> r2(file.r2.data() + w0, static_cast<std::size_t>(n));

  std::vector<std::int64_t> ev1, ev2;
  for (std::int64_t t = 0; t < n; ++t) {
    if (r1[static_cast<std::size_t>(t)]) ev1.push_back(t);
    if (r2[static_cast<std::size_t>(t)]) ev2.push_back(t);
  }
  const std::vector<std::uint8_t> joint = joint_encode(r1, r2);
  const std::int64_t max_lag = std::min(opt.max_lag, n - 1);
  auto series = [&](const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    const auto counts = lagged_coincidences(a, b, max_lag);
    std::vector<double> v(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) {
      v[k] = static_cast<double>(counts[k]) / static_cast<double>(n - static_cast<std::int64_t>(k));
    }
    return v;
  };

  ordered_json j;
  j["steps"] = n_total;
  j["dt"] = dt;
  j["window_start"] = w0;
  j["window_steps"] = n;
  j["count1"] = ev1.size();
  j["count2"] = ev2.size();
  j["rate1"] = static_cast<double>(ev1.size()) / (static_cast<double>(n) * dt);
  j["rate2"] = static_cast<double>(ev2.size()) / (static_cast<double>(n) * dt);
  j["lz_phrases"] = lz_complexity(joint, 4);
  j["lz"] = normalized_lz(joint, 4);
  j["max_lag"] = max_lag;
  j["c11"] = series(ev1, ev1);
  j["c22"] = series(ev2, ev2);
  j["c12"] = series(ev1, ev2);
  return j;
}

}  // namespace qtraj
