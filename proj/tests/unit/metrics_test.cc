#include "qtraj/metrics.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qtraj/errors.hpp"

namespace qtraj {
namespace {

std::vector<std::uint8_t> bits(const std::string& s) {
  std::vector<std::uint8_t> v;
  for (char c : s) v.push_back(static_cast<std::uint8_t>(c - '0'));
  return v;
}

TEST(LzTest, Examples) {
  EXPECT_EQ(lz_complexity(SymbolSequence(bits("0000000000"), 2)), 2);
  EXPECT_EQ(lz_complexity(SymbolSequence(bits("0"), 2)), 1);
  EXPECT_EQ(oracle::lz76(oracle::from_string("0001101001000101")), 6);
  EXPECT_EQ(lz_complexity(SymbolSequence(bits("0001101001000101"), 2)), 6);
  EXPECT_THROW(lz_complexity(SymbolSequence(std::vector<std::uint8_t>{}, 2)), std::invalid_argument);
}

TEST(LzTest, ExhaustiveBinaryAgainstBruteForce) {
  for (int n = 1; n <= 14; ++n) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<std::uint8_t> s(n);
      std::vector<int> o(n);
      for (int i = 0; i < n; ++i) o[i] = s[i] = (mask >> i) & 1u;
      ASSERT_EQ(lz_complexity(s, 2), oracle::lz76(o)) << "n=" << n << " mask=" << mask;
    }
  }
}

TEST(LzTest, RandomQuaternaryAgainstBruteForce) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> len(1, 200);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = len(rng);
    // Mix of uniform and skewed alphabets so long repeats occur too.
    const int k = 1 + trial % 4;
    std::uniform_int_distribution<int> sym(0, k - 1);
    std::vector<std::uint8_t> s(n);
    std::vector<int> o(n);
    for (int i = 0; i < n; ++i) o[i] = s[i] = static_cast<std::uint8_t>(sym(rng));
    ASSERT_EQ(lz_complexity(s, 4), oracle::lz76(o)) << "trial " << trial;
  }
}

TEST(NormalizedLzTest, ConstantSequence) {
  const std::vector<std::uint8_t> zeros(10000, 0);
  EXPECT_NEAR(normalized_lz(zeros, 2), 2 * std::log2(10000.0) / 10000, 1e-15);
  EXPECT_THROW(normalized_lz(std::vector<std::uint8_t>{1}, 2), std::invalid_argument);
}

TEST(NormalizedLzTest, IidUniformNearOne) {
  std::mt19937_64 rng(37);
  for (int k : {2, 4}) {
    std::uniform_int_distribution<int> sym(0, k - 1);
    double sum = 0.0;
    const int seeds = 20;
    for (int rep = 0; rep < seeds; ++rep) {
      std::vector<std::uint8_t> s(100000);
      for (auto& v : s) v = static_cast<std::uint8_t>(sym(rng));
      sum += normalized_lz(s, k);
    }
    const double mean = sum / seeds;
    EXPECT_GE(mean, 0.9) << "k=" << k;
    EXPECT_LE(mean, 1.1) << "k=" << k;
  }
}

TEST(NormalizedLzTest, SparseBernoulliIsSmall) {
  std::mt19937_64 rng(41);
  std::bernoulli_distribution b(0.003);
  std::vector<std::uint8_t> s(100000);
  for (auto& v : s) v = b(rng);
  EXPECT_LT(normalized_lz(s, 2), 0.1);
}

TEST(JointEncodeTest, Examples) {
  const SymbolSequence z(bits("0000"), 2);
  EXPECT_EQ(joint_encode(z, z).symbols(), bits("0000"));
  const SymbolSequence j = joint_encode(SymbolSequence(bits("1010"), 2), SymbolSequence(bits("0110"), 2));
  EXPECT_EQ(j.alphabet_size(), 4);
  EXPECT_EQ(j.symbols(), (std::vector<std::uint8_t>{2, 1, 3, 0}));
  for (std::size_t t = 0; t < 4; ++t) {
    EXPECT_EQ(j.symbols()[t] >> 1, bits("1010")[t]);
    EXPECT_EQ(j.symbols()[t] & 1, bits("0110")[t]);
  }
  EXPECT_THROW(joint_encode(SymbolSequence(bits("10"), 2), SymbolSequence(bits("1"), 2)), std::invalid_argument);
}

TEST(SymbolSequenceTest, RejectsOutOfAlphabet) {
  EXPECT_THROW(SymbolSequence(bits("012"), 2), std::invalid_argument);
  EXPECT_THROW(SymbolSequence(bits("0"), 1), std::invalid_argument);
}

TEST(CorrelationTest, AutocorrelationExamples) {
  const auto ones = autocorrelation(SymbolSequence(std::vector<std::uint8_t>(50, 1), 2), 10);
  for (double v : ones.values) EXPECT_EQ(v, 1.0);
  const auto zeros = autocorrelation(SymbolSequence(std::vector<std::uint8_t>(50, 0), 2), 10);
  for (double v : zeros.values) EXPECT_EQ(v, 0.0);

  std::vector<std::uint8_t> alt(100);
  for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = (i % 2 == 0);
  const auto c = autocorrelation(SymbolSequence(alt, 2), 4);
  EXPECT_DOUBLE_EQ(c.values[0], 0.5);
  EXPECT_DOUBLE_EQ(c.values[1], 0.0);
  EXPECT_DOUBLE_EQ(c.values[2], 0.5);
  EXPECT_EQ(c.lags, (std::vector<std::int64_t>{0, 1, 2, 3, 4}));
  EXPECT_THROW(autocorrelation(SymbolSequence(alt, 2), 100), std::invalid_argument);
}

TEST(CorrelationTest, ZeroLagIsMean) {
  std::mt19937_64 rng(43);
  std::bernoulli_distribution b(0.3);
  std::vector<std::uint8_t> r(1000);
  for (auto& v : r) v = b(rng);
  double mean = 0;
  for (auto v : r) mean += v;
  mean /= r.size();
  EXPECT_DOUBLE_EQ(autocorrelation(SymbolSequence(r, 2), 5).values[0], mean);
}

TEST(CorrelationTest, CrossCorrelationDirection) {
  std::vector<std::uint8_t> a(20, 0), b(20, 0);
  a[0] = 1;
  b[1] = 1;
  const auto c = cross_correlation(SymbolSequence(a, 2), SymbolSequence(b, 2), 5);
  for (std::size_t k = 0; k < c.values.size(); ++k) EXPECT_EQ(c.values[k], k == 1 ? 1.0 / 19.0 : 0.0);
  // Swapping the records moves the event to negative lag, outside the grid.
  const auto swapped = cross_correlation(SymbolSequence(b, 2), SymbolSequence(a, 2), 5);
  for (double v : swapped.values) EXPECT_EQ(v, 0.0);

  const auto self = cross_correlation(SymbolSequence(a, 2), SymbolSequence(a, 2), 5);
  EXPECT_EQ(self.values, autocorrelation(SymbolSequence(a, 2), 5).values);
  const auto none = cross_correlation(SymbolSequence(a, 2), SymbolSequence(std::vector<std::uint8_t>(20, 0), 2), 5);
  for (double v : none.values) EXPECT_EQ(v, 0.0);
}

TEST(CorrelationTest, SparseCoincidencesMatchDense) {
  std::mt19937_64 rng(47);
  std::bernoulli_distribution b(0.05);
  const std::int64_t n = 5000, max_lag = 60;
  std::vector<std::uint8_t> r1(n), r2(n);
  std::vector<std::int64_t> e1, e2;
  for (std::int64_t t = 0; t < n; ++t) {
    r1[t] = b(rng);
    r2[t] = b(rng);
    if (r1[t]) e1.push_back(t);
    if (r2[t]) e2.push_back(t);
  }
  const auto dense = cross_correlation(SymbolSequence(r1, 2), SymbolSequence(r2, 2), max_lag);
  const auto counts = lagged_coincidences(e1, e2, max_lag);
  for (std::int64_t k = 0; k <= max_lag; ++k) {
    EXPECT_DOUBLE_EQ(dense.values[k], static_cast<double>(counts[k]) / static_cast<double>(n - k));
  }
}

TEST(DeltaCorrelationTest, Examples) {
  const CorrelationSeries a{{0, 1, 2}, {0.3, 0.1, 0.2}};
  const CorrelationSeries b{{0, 1, 2}, {0.1, 0.1, 0.5}};
  const CorrelationSeries zero{{0, 1, 2}, {0, 0, 0}};
  for (double v : delta_correlation(a, a).values) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(delta_correlation(a, zero).values, a.values);
  const auto ab = delta_correlation(a, b), ba = delta_correlation(b, a);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(ab.values[k], -ba.values[k]);
  EXPECT_THROW(delta_correlation(a, CorrelationSeries{{0, 1}, {0, 0}}), std::invalid_argument);
}

TEST(OccupancyTest, Examples) {
  std::vector<ClassicalSample> all00(10, ClassicalSample{0, 0, 0});
  const auto t = occupancy_table(all00);
  EXPECT_EQ(t.p[0][0], 1.0);
  EXPECT_EQ(t.p[1][1], 0.0);

  std::vector<ClassicalSample> even;
  for (int i = 0; i < 40; ++i) even.push_back({i, (i >> 1) & 1, i & 1});
  const auto u = occupancy_table(even);
  for (const auto& row : u.p)
    for (double v : row) EXPECT_EQ(v, 0.25);
  EXPECT_THROW(occupancy_table(std::vector<ClassicalSample>{}), std::invalid_argument);

  const auto d = occupancy_table(CMatrix::diagonal({0.1, 0.2, 0.3, 0.4}));
  EXPECT_NEAR(d.p[1][1], 0.1, 1e-15);
  EXPECT_NEAR(d.p[1][0], 0.2, 1e-15);
  EXPECT_NEAR(d.p[0][1], 0.3, 1e-15);
  EXPECT_NEAR(d.p[0][0], 0.4, 1e-15);
}

TEST(SpearmanTest, Examples) {
  const std::vector<double> x{1, 2, 3};
  EXPECT_DOUBLE_EQ(spearman(x, std::vector<double>{10, 20, 30}).rho, 1.0);
  EXPECT_DOUBLE_EQ(spearman(x, std::vector<double>{3, 2, 1}).rho, -1.0);
  EXPECT_THROW(spearman(std::vector<double>{1, 2}, std::vector<double>{1, 2}), UndefinedStatisticError);
  EXPECT_THROW(spearman(x, std::vector<double>{5, 5, 5}), UndefinedStatisticError);
}

TEST(SpearmanTest, TwentyPointsWithTies) {
  const std::vector<double> x{1, 2, 2, 3, 4, 4, 4, 5, 6, 7, 7, 8, 9, 10, 10, 11, 12, 13, 13, 14};
  const std::vector<double> y{2.5, 1, 3, 3, 5, 4, 6, 6, 7, 9, 8, 8, 10, 12, 11, 11, 15, 13, 14, 14};
  const auto r = spearman(x, y);
  EXPECT_NEAR(r.rho, oracle::spearman_rho(x, y), 1e-12);
  // Reference values from an external statistics package.
  EXPECT_NEAR(r.rho, 0.9769556708961399, 1e-12);
  EXPECT_NEAR(r.p_value / 1.6010988374481504e-13, 1.0, 1e-6);

  const std::vector<double> x2{0.3, -1.2, 0.7, 0.7, 2.1, -0.4, 1.5, 0.0, -2.2, 0.9,
                               0.9, 0.9, 1.1, -0.6, 0.4, 2.8, -1.0, 0.2, 0.6, 1.9};
  const std::vector<double> y2{1, 0, 2, 1, 3, 0, 2, 1, 0, 2, 2, 1, 3, 0, 1, 3, 0, 1, 2, 2};
  const auto r2 = spearman(x2, y2);
  EXPECT_NEAR(r2.rho, oracle::spearman_rho(x2, y2), 1e-12);
  EXPECT_NEAR(r2.rho, 0.9095693257291508, 1e-12);
  EXPECT_NEAR(r2.p_value / 2.755933404703194e-08, 1.0, 1e-6);
}

TEST(SpearmanTest, InvariantUnderMonotoneTransforms) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(30), y(30), fx(30), fy(30);
    for (int i = 0; i < 30; ++i) {
      x[i] = u(rng);
      y[i] = x[i] + u(rng);
      fx[i] = std::exp(x[i]);
      fy[i] = y[i] * y[i] * y[i];
    }
    EXPECT_NEAR(spearman(x, y).rho, spearman(fx, fy).rho, 1e-12);
  }
}

TEST(WelchTest, Identities) {
  const auto same = welch_t_test(0.5, 0.1, 10, 0.5, 0.2, 12);
  EXPECT_EQ(same.t, 0.0);
  EXPECT_NEAR(same.p_value, 1.0, 1e-12);

  const auto a = welch_t_test(0.0257, 0.0018, 50, 0.0248, 0.0016, 50);
  const auto b = welch_t_test(0.0257, 0.0036, 50, 0.0248, 0.0032, 50);
  EXPECT_NEAR(b.t, a.t / 2, 1e-15);
  EXPECT_NEAR(a.t, 0.0009 / std::sqrt(0.0018 * 0.0018 + 0.0016 * 0.0016), 1e-12);
  EXPECT_NEAR(a.t, 0.374, 5e-4);

  EXPECT_THROW(welch_t_test(0, 0, 10, 0, 1, 10), std::invalid_argument);
  EXPECT_THROW(welch_t_test(0, 1, 1, 0, 1, 10), std::invalid_argument);
}

TEST(WelchTest, MatchesReferenceDistribution) {
  // Reference from an external package with n = 200 per group.
  const auto r = welch_t_test(0.0257, 0.0018, 200, 0.0248, 0.0016, 200);
  EXPECT_NEAR(r.t, 0.3737046593418304, 1e-12);
  EXPECT_NEAR(r.p_value, 0.7088257775414505, 1e-9);
}

TEST(CumulativeCountsTest, Examples) {
  EmissionRecord rec;
  rec.r1 = bits("111000");
  rec.r2 = bits("000000");
  const auto c = cumulative_counts(rec);
  EXPECT_EQ(c.n1, (std::vector<std::int64_t>{1, 2, 3, 3, 3, 3}));
  EXPECT_EQ(c.n2, (std::vector<std::int64_t>(6, 0)));
  for (std::size_t t = 1; t < c.n1.size(); ++t) EXPECT_EQ(c.n1[t] - c.n1[t - 1], rec.r1[t]);
}

TEST(ShannonTest, Examples) {
  EXPECT_EQ(shannon_entropy(std::vector<double>{1, 0}), 0.0);
  EXPECT_NEAR(shannon_entropy(std::vector<double>{0.5, 0.5}), std::log(2.0), 1e-15);
  EXPECT_NEAR(shannon_entropy(std::vector<double>{0.25, 0.25, 0.25, 0.25}), std::log(4.0), 1e-15);
  EXPECT_THROW(shannon_entropy(std::vector<double>{0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(shannon_entropy(std::vector<double>{1.5, -0.5}), std::invalid_argument);
}

TEST(MeanSemTest, Basic) {
  const auto m = mean_sem(std::vector<double>{1, 2, 3, 4});
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  EXPECT_NEAR(m.sem, std::sqrt(5.0 / 3.0 / 4.0), 1e-15);
  EXPECT_EQ(m.n, 4);
}

}  // namespace
}  // namespace qtraj
