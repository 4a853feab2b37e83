#include "qtraj/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/math/distributions/students_t.hpp>

#include "qtraj/errors.hpp"

namespace qtraj {

namespace {

double two_sided_t_p_value(double t, double dof) {
  if (!std::isfinite(t)) return 0.0;
  const boost::math::students_t dist(dof);
  return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
}

void check_binary(const SymbolSequence& r, const char* who) {
  if (r.alphabet_size() != 2) throw std::invalid_argument(std::string(who) + ": expected a binary sequence");
}

}  // namespace

SymbolSequence::SymbolSequence(std::vector<std::uint8_t> symbols, int alphabet_size)
    : symbols_(std::move(symbols)), alphabet_size_(alphabet_size) {
  if (alphabet_size < 2 || alphabet_size > 256) {
    throw std::invalid_argument("SymbolSequence: alphabet size must be in [2, 256]");
  }
  for (std::uint8_t s : symbols_) {
    if (s >= alphabet_size) {
      throw std::invalid_argument("SymbolSequence: symbol " + std::to_string(s) + " outside alphabet of size " +
                                  std::to_string(alphabet_size));
    }
  }
}

void OccupancyTable::validate() const {
  double sum = 0.0;
  for (const auto& row : p) {
    for (double v : row) {
      if (!(v >= 0.0)) throw std::invalid_argument("OccupancyTable: negative or NaN entry");
      sum += v;
    }
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("OccupancyTable: entries sum to " + std::to_string(sum));
}

OccupancyTable OccupancyTable::from_counts(const std::array<std::array<std::int64_t, 2>, 2>& counts) {
  const double total = static_cast<double>(counts[0][0] + counts[0][1] + counts[1][0] + counts[1][1]);
  if (total <= 0.0) throw std::invalid_argument("OccupancyTable::from_counts: no samples");
  OccupancyTable t;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) t.p[a][b] = static_cast<double>(counts[a][b]) / total;
  return t;
}

std::vector<std::uint8_t> joint_encode(std::span<const std::uint8_t> r1, std::span<const std::uint8_t> r2) {
  if (r1.size() != r2.size()) throw std::invalid_argument("joint_encode: length mismatch");
  std::vector<std::uint8_t> out(r1.size());
  for (std::size_t t = 0; t < r1.size(); ++t) out[t] = static_cast<std::uint8_t>(2 * r1[t] + r2[t]);
  return out;
}

SymbolSequence joint_encode(const SymbolSequence& r1, const SymbolSequence& r2) {
  check_binary(r1, "joint_encode");
  check_binary(r2, "joint_encode");
  return SymbolSequence(joint_encode(r1.symbols(), r2.symbols()), 4);
}

CorrelationSeries cross_correlation(const SymbolSequence& r1, const SymbolSequence& r2, std::int64_t max_lag) {
  if (r1.size() != r2.size()) throw std::invalid_argument("cross_correlation: length mismatch");
  const std::int64_t n = r1.size();
  if (max_lag < 0 || max_lag >= n) {
    throw std::invalid_argument("correlation: max_lag " + std::to_string(max_lag) + " must be in [0, n) with n = " +
                                std::to_string(n));
  }
  const auto& a = r1.symbols();
  const auto& b = r2.symbols();
  CorrelationSeries out;
  for (std::int64_t tau = 0; tau <= max_lag; ++tau) {
    std::int64_t sum = 0;
    for (std::int64_t t = 0; t + tau < n; ++t) sum += a[t] * b[t + tau];
    out.lags.push_back(tau);
    out.values.push_back(static_cast<double>(sum) / static_cast<double>(n - tau));
  }
  return out;
}

CorrelationSeries autocorrelation(const SymbolSequence& r, std::int64_t max_lag) {
  check_binary(r, "autocorrelation");
  return cross_correlation(r, r, max_lag);
}

std::vector<std::int64_t> lagged_coincidences(std::span<const std::int64_t> events_a,
                                              std::span<const std::int64_t> events_b, std::int64_t max_lag) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(max_lag + 1), 0);
  std::size_t lo = 0;
  for (std::int64_t ta : events_a) {
    while (lo < events_b.size() && events_b[lo] < ta) ++lo;
    for (std::size_t j = lo; j < events_b.size() && events_b[j] - ta <= max_lag; ++j) {
      ++counts[static_cast<std::size_t>(events_b[j] - ta)];
    }
  }
  return counts;
}

CorrelationSeries delta_correlation(const CorrelationSeries& c_j, const CorrelationSeries& c_0) {
  if (c_j.lags != c_0.lags || c_j.values.size() != c_0.values.size()) {
    throw std::invalid_argument("delta_correlation: lag grids differ");
  }
  CorrelationSeries out{c_j.lags, c_j.values};
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= c_0.values[i];
  return out;
}

OccupancyTable occupancy_table(std::span<const ClassicalSample> samples) {
  if (samples.empty()) throw std::invalid_argument("occupancy_table: no samples");
  std::array<std::array<std::int64_t, 2>, 2> counts{};
  for (const auto& s : samples) {
    if ((s.s1 | s.s2) & ~1) throw std::invalid_argument("occupancy_table: spin value outside {0, 1}");
    ++counts[s.s1][s.s2];
  }
  return OccupancyTable::from_counts(counts);
}

OccupancyTable occupancy_table(const CMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("occupancy_table: rho must be 4x4");
  OccupancyTable t;
  double total = 0.0;
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) {
      t.p[s1][s2] = std::max(0.0, rho(basis_index(s1, s2), basis_index(s1, s2)).real());
      total += t.p[s1][s2];
    }
  }
  if (!(total > 0.0)) throw std::invalid_argument("occupancy_table: rho has zero trace");
  for (auto& row : t.p)
    for (double& v : row) v /= total;
  return t;
}

std::vector<double> average_ranks(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

SpearmanResult spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
  const std::size_t n = x.size();
  if (n < 3) throw UndefinedStatisticError("spearman: need at least 3 points");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw std::invalid_argument("spearman: non-finite value");
  }
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  const double mean = 0.5 * static_cast<double>(n + 1);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedStatisticError("spearman: zero rank variance");
  const double rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double dof = static_cast<double>(n) - 2.0;
  if (1.0 - rho * rho <= 0.0) return {rho, 0.0};
  const double t = rho * std::sqrt(dof / (1.0 - rho * rho));
  return {rho, two_sided_t_p_value(t, dof)};
}

WelchResult welch_t_test(double mean_a, double sem_a, std::int64_t n_a, double mean_b, double sem_b,
                         std::int64_t n_b) {
  if (!(sem_a > 0.0) || !(sem_b > 0.0)) throw std::invalid_argument("welch_t_test: standard errors must be positive");
  if (n_a < 2 || n_b < 2) throw std::invalid_argument("welch_t_test: need at least 2 observations per group");
  const double va = sem_a * sem_a;
  const double vb = sem_b * sem_b;
  const double t = (mean_a - mean_b) / std::sqrt(va + vb);
  const double dof = (va + vb) * (va + vb) /
                     (va * va / static_cast<double>(n_a - 1) + vb * vb / static_cast<double>(n_b - 1));
  return {t, two_sided_t_p_value(t, dof), dof};
}

CumulativeCounts cumulative_counts(const EmissionRecord& rec) {
  CumulativeCounts out;
  out.n1.resize(rec.r1.size());
  out.n2.resize(rec.r2.size());
  std::int64_t a = 0, b = 0;
  for (std::size_t t = 0; t < rec.r1.size(); ++t) {
    a += rec.r1[t];
    b += rec.r2[t];
    out.n1[t] = a;
    out.n2[t] = b;
  }
  return out;
}

double shannon_entropy(std::span<const double> dist) {
  if (dist.empty()) throw std::invalid_argument("shannon_entropy: empty distribution");
  double sum = 0.0;
  for (double p : dist) {
    if (!(p >= 0.0)) throw std::invalid_argument("shannon_entropy: negative or NaN probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("shannon_entropy: probabilities sum to " + std::to_string(sum));
  double h = 0.0;
  for (double p : dist) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

MeanSem mean_sem(std::span<const double> values) {
  MeanSem out;
  out.n = static_cast<std::int64_t>(values.size());
  if (values.empty()) return out;
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  if (values.size() < 2) return out;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.sem = std::sqrt(ss / static_cast<double>(values.size() - 1) / static_cast<double>(values.size()));
  return out;
}

}  // namespace qtraj
