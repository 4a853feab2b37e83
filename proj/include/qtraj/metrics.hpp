#pragma once

// Sequence and summary statistics for emission records.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qtraj/matkit.hpp"
#include "qtraj/params.hpp"

namespace qtraj {

// Symbols in [0, alphabet_size). Validated on construction.
class SymbolSequence {
 public:
  SymbolSequence(std::vector<std::uint8_t> symbols, int alphabet_size);
  SymbolSequence(std::span<const std::uint8_t> symbols, int alphabet_size)
      : SymbolSequence(std::vector<std::uint8_t>(symbols.begin(), symbols.end()), alphabet_size) {}

  const std::vector<std::uint8_t>& symbols() const { return symbols_; }
  int alphabet_size() const { return alphabet_size_; }
  std::int64_t size() const { return static_cast<std::int64_t>(symbols_.size()); }

 private:
  std::vector<std::uint8_t> symbols_;
  int alphabet_size_;
};

struct CorrelationSeries {
  std::vector<std::int64_t> lags;  // in steps, 0, 1, ..., max_lag
  std::vector<double> values;
};

// P(s1, s2) indexed p[s1][s2].
struct OccupancyTable {
  std::array<std::array<double, 2>, 2> p{};

  // Throws std::invalid_argument unless entries are >= 0 and sum to 1 within 1e-9.
  void validate() const;
  static OccupancyTable from_counts(const std::array<std::array<std::int64_t, 2>, 2>& counts);
};

// LZ76 production count (Kaspar-Schuster convention: the copy source may
// overlap the phrase being built; an unfinished last phrase counts).
// Linear time via an online suffix automaton.
std::int64_t lz_complexity(const SymbolSequence& seq);
std::int64_t lz_complexity(std::span<const std::uint8_t> symbols, int alphabet_size);

// c(n) * log_k(n) / n; tends to 1 for i.i.d. uniform symbols.
double normalized_lz(const SymbolSequence& seq);
double normalized_lz(std::span<const std::uint8_t> symbols, int alphabet_size);

// symbol[t] = 2 r1[t] + r2[t], alphabet 4.
SymbolSequence joint_encode(const SymbolSequence& r1, const SymbolSequence& r2);
std::vector<std::uint8_t> joint_encode(std::span<const std::uint8_t> r1, std::span<const std::uint8_t> r2);

// C(tau) = 1/(n - tau) sum_t r[t] r[t + tau], tau = 0..max_lag.
CorrelationSeries autocorrelation(const SymbolSequence& r, std::int64_t max_lag);

// C12(tau) = 1/(n - tau) sum_t r1[t] r2[t + tau]: r2 is advanced by tau, so
// cross_correlation(r2, r1) gives the negative-lag half of cross_correlation(r1, r2).
CorrelationSeries cross_correlation(const SymbolSequence& r1, const SymbolSequence& r2, std::int64_t max_lag);

// Pair counts #{t : a[t] = b[t + tau] = 1} for tau = 0..max_lag from sorted
// event positions. Same numerators as cross_correlation in O(events * rate * max_lag).
std::vector<std::int64_t> lagged_coincidences(std::span<const std::int64_t> events_a,
                                              std::span<const std::int64_t> events_b, std::int64_t max_lag);

// c_j - c_0 on identical lag grids.
CorrelationSeries delta_correlation(const CorrelationSeries& c_j, const CorrelationSeries& c_0);

OccupancyTable occupancy_table(std::span<const ClassicalSample> samples);
// Computational-basis diagonal of a two-qubit density matrix.
OccupancyTable occupancy_table(const CMatrix& rho);

struct SpearmanResult {
  double rho;
  double p_value;
};

// Average ranks for ties; two-sided p from t = rho sqrt((n-2)/(1-rho^2)), n-2 dof.
SpearmanResult spearman(std::span<const double> x, std::span<const double> y);

// Ranks starting at 1, ties share their mean rank.
std::vector<double> average_ranks(std::span<const double> x);

struct WelchResult {
  double t;
  double p_value;
  double dof;
};

WelchResult welch_t_test(double mean_a, double sem_a, std::int64_t n_a, double mean_b, double sem_b,
                         std::int64_t n_b);

struct CumulativeCounts {
  std::vector<std::int64_t> n1;
  std::vector<std::int64_t> n2;
};

CumulativeCounts cumulative_counts(const EmissionRecord& rec);

// -sum p ln p with 0 ln 0 = 0.
double shannon_entropy(std::span<const double> dist);

struct MeanSem {
  double mean = 0.0;
  double sem = 0.0;
  std::int64_t n = 0;
};

// Sample mean and standard error (n - 1 denominator; sem = 0 for n = 1).
MeanSem mean_sem(std::span<const double> values);

}  // namespace qtraj
