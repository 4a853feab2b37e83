#include "qtraj/matkit.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qtraj/qjump.hpp"

namespace qtraj {
namespace {

oracle::Dense to_dense(const CMatrix& m) {
  oracle::Dense d = oracle::zeros(m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) d[i][j] = m(i, j);
  return d;
}

double max_diff(const CMatrix& a, const CMatrix& b) {
  CMatrix d = a;
  d -= b;
  return d.max_abs();
}

CMatrix random_hermitian(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g;
  CMatrix m(dim);
  for (int i = 0; i < dim; ++i) {
    m(i, i) = g(rng);
    for (int j = i + 1; j < dim; ++j) {
      m(i, j) = cplx(g(rng), g(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

CVector random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(cplx(g(rng), g(rng)), cplx(g(rng), g(rng)), cplx(g(rng), g(rng)), cplx(g(rng), g(rng)));
  return v.normalized();
}

TEST(BasisTest, IndexOrdering) {
  EXPECT_EQ(basis_index(1, 1), 0);
  EXPECT_EQ(basis_index(1, 0), 1);
  EXPECT_EQ(basis_index(0, 1), 2);
  EXPECT_EQ(basis_index(0, 0), 3);
}

TEST(KronTest, IdentityAndZz) {
  EXPECT_EQ(max_diff(kron(pauli::identity(), pauli::identity()), CMatrix::identity(4)), 0.0);
  EXPECT_EQ(max_diff(kron(pauli::z(), pauli::z()), CMatrix::diagonal({1, -1, -1, 1})), 0.0);
}

TEST(KronTest, MatchesIndexFormula) {
  const CMatrix ops[] = {pauli::identity(), pauli::x(), pauli::y(), pauli::z(), pauli::lower(), pauli::raise()};
  for (const auto& a : ops) {
    for (const auto& b : ops) {
      const auto want = oracle::kron(to_dense(a), to_dense(b));
      const CMatrix got = kron(a, b);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_EQ(got(i, j), want[i][j]);
    }
  }
}

TEST(KronTest, XzBlocks) {
  const CMatrix m = kron(pauli::x(), pauli::z());
  const CMatrix z = pauli::z();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      EXPECT_EQ(m(i, j), 0.0);
      EXPECT_EQ(m(i + 2, j + 2), 0.0);
      EXPECT_EQ(m(i, j + 2), z(i, j));
      EXPECT_EQ(m(i + 2, j), z(i, j));
    }
  }
}

TEST(KronTest, RejectsWrongDimension) {
  EXPECT_THROW(kron(CMatrix::identity(4), pauli::x()), std::invalid_argument);
}

TEST(MatExpTest, ZeroGivesIdentity) {
  EXPECT_LE(max_diff(mat_exp(CMatrix(4), cplx(3.0, -2.0)), CMatrix::identity(4)), 1e-15);
}

TEST(MatExpTest, Diagonal) {
  const cplx d[] = {0.3, cplx(-1.0, 0.5), 2.0, cplx(0.0, -0.7)};
  const cplx s(0.2, -0.4);
  const CMatrix e = mat_exp(CMatrix::diagonal({d[0], d[1], d[2], d[3]}), s);
  for (int i = 0; i < 4; ++i) EXPECT_LE(std::abs(e(i, i) - std::exp(s * d[i])), 1e-14 * std::abs(std::exp(s * d[i])));
}

TEST(MatExpTest, MatchesTaylorOracleOnEffectiveHamiltonian) {
  SimParams p;
  p.omega = 1.0;
  p.gamma = 1.0;
  p.coupling = 1.0;
  const CMatrix h = build_effective_hamiltonian(p);
  const cplx s(0.0, -0.01);
  const auto want = oracle::taylor_exp(to_dense(h), s);
  const CMatrix got = mat_exp(h, s);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_LE(std::abs(got(i, j) - want[i][j]), 1e-12) << i << "," << j;
}

TEST(MatExpTest, MatchesTaylorOracleOnRandomInputs) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    CMatrix m(4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = cplx(g(rng), g(rng));
    const cplx s(0.0, -0.25 / m.norm1());  // |s| * ||m|| <= 1
    const auto want = oracle::taylor_exp(to_dense(m), s);
    const CMatrix got = mat_exp(m, s);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) EXPECT_LE(std::abs(got(i, j) - want[i][j]), 1e-12);
  }
}

TEST(MatExpTest, RejectsNonFinite) {
  CMatrix m = CMatrix::identity(4);
  m(1, 2) = std::nan("");
  EXPECT_THROW(mat_exp(m, 1.0), std::invalid_argument);
}

TEST(MatExpTest, HermitianGeneratorIsUnitary) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const CMatrix h = random_hermitian(rng, 4);
    const CMatrix u = mat_exp(h, cplx(0.0, -0.3));
    EXPECT_LE(max_diff(u.adjoint() * u, CMatrix::identity(4)), 1e-10);
  }
}

TEST(MatExpTest, GroupProperty) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const CMatrix h = random_hermitian(rng, 4);
    const cplx s(0.1, -0.2), t(-0.05, 0.3);
    EXPECT_LE(max_diff(mat_exp(h, s) * mat_exp(h, t), mat_exp(h, s + t)), 1e-10);
  }
}

TEST(EigvalsTest, Examples) {
  const auto id = herm_eigvals(CMatrix::identity(4));
  for (double v : id) EXPECT_NEAR(v, 1.0, 1e-14);
  const auto zz = herm_eigvals(CMatrix::diagonal({1, -1, -1, 1}));
  ASSERT_EQ(zz.size(), 4u);
  EXPECT_NEAR(zz[0], -1.0, 1e-14);
  EXPECT_NEAR(zz[1], -1.0, 1e-14);
  EXPECT_NEAR(zz[2], 1.0, 1e-14);
  EXPECT_NEAR(zz[3], 1.0, 1e-14);
}

TEST(EigvalsTest, RejectsNonHermitian) {
  CMatrix m = CMatrix::identity(4);
  m(0, 1) = 1e-6;
  EXPECT_THROW(herm_eigvals(m), std::invalid_argument);
}

TEST(EigvalsTest, TraceAndUnitaryInvariance) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const CMatrix h = random_hermitian(rng, 4);
    const auto ev = herm_eigvals(h);
    double sum = 0.0;
    for (double v : ev) sum += v;
    EXPECT_NEAR(sum, h.trace().real(), 1e-10);
    EXPECT_TRUE(std::is_sorted(ev.begin(), ev.end()));

    const CMatrix u = mat_exp(random_hermitian(rng, 4), cplx(0.0, -1.0));
    const auto ev2 = herm_eigvals(u * h * u.adjoint());
    for (std::size_t i = 0; i < ev.size(); ++i) EXPECT_NEAR(ev[i], ev2[i], 1e-8);
  }
}

CVector bell() {
  const double r = 1.0 / std::sqrt(2.0);
  return CVector(r, 0, 0, r);
}

TEST(PartialTraceTest, ProductAndBell) {
  const CMatrix ee = CVector::basis_state(1, 1).projector();
  const CMatrix e = CMatrix::diagonal({1, 0});
  EXPECT_EQ(max_diff(partial_trace(ee, Subsystem::A), e), 0.0);

  const CMatrix half = CMatrix::diagonal({0.5, 0.5});
  EXPECT_LE(max_diff(partial_trace(bell().projector(), Subsystem::A), half), 1e-15);
  EXPECT_LE(max_diff(partial_trace(bell().projector(), Subsystem::B), half), 1e-15);
  const auto ev = herm_eigvals(partial_trace(bell().projector(), Subsystem::A));
  EXPECT_NEAR(ev[0], 0.5, 1e-14);
  EXPECT_NEAR(ev[1], 0.5, 1e-14);
}

TEST(PartialTraceTest, GenericProductRecoversFactors) {
  CMatrix r1(2, {0.7, cplx(0.1, 0.2), cplx(0.1, -0.2), 0.3});
  CMatrix r2(2, {0.25, cplx(-0.3, 0.05), cplx(-0.3, -0.05), 0.75});
  const CMatrix rho = kron(r1, r2);
  // Explicit index sums.
  const auto d = to_dense(rho);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const cplx keep_a = d[2 * i][2 * j] + d[2 * i + 1][2 * j + 1];
      const cplx keep_b = d[i][j] + d[2 + i][2 + j];
      EXPECT_LE(std::abs(partial_trace(rho, Subsystem::A)(i, j) - keep_a), 1e-15);
      EXPECT_LE(std::abs(partial_trace(rho, Subsystem::B)(i, j) - keep_b), 1e-15);
    }
  }
  EXPECT_LE(max_diff(partial_trace(rho, Subsystem::A), r1), 1e-15);
  EXPECT_LE(max_diff(partial_trace(rho, Subsystem::B), r2), 1e-15);
}

TEST(PartialTraceTest, InvalidSubsystem) {
  EXPECT_THROW(partial_trace(CMatrix::identity(4), static_cast<Subsystem>(7)), std::invalid_argument);
}

TEST(EntropyTest, Examples) {
  EXPECT_NEAR(von_neumann_entropy(CVector::basis_state(0, 1).projector()), 0.0, 1e-10);
  CMatrix mixed4 = CMatrix::identity(4);
  mixed4 *= 0.25;
  EXPECT_NEAR(von_neumann_entropy(mixed4), std::log(4.0), 1e-10);
  EXPECT_NEAR(von_neumann_entropy(CMatrix::diagonal({0.5, 0.5})), std::log(2.0), 1e-10);
  EXPECT_NEAR(von_neumann_entropy(partial_trace(bell().projector(), Subsystem::A)), std::log(2.0), 1e-10);
  EXPECT_NEAR(von_neumann_entropy(partial_trace(CVector::basis_state(1, 0).projector(), Subsystem::B)), 0.0, 1e-10);
}

TEST(EntropyTest, RejectsNonDensityMatrix) {
  EXPECT_THROW(von_neumann_entropy(CMatrix::diagonal({1.5, -0.5})), std::invalid_argument);
  EXPECT_THROW(von_neumann_entropy(CMatrix::diagonal({0.5, 0.6})), std::invalid_argument);
}

TEST(EntropyTest, SchmidtSymmetry) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 1000; ++trial) {
    const CMatrix rho = random_state(rng).projector();
    const double sa = von_neumann_entropy(partial_trace(rho, Subsystem::A));
    const double sb = von_neumann_entropy(partial_trace(rho, Subsystem::B));
    EXPECT_NEAR(sa, sb, 1e-8);
    EXPECT_GE(sa, 0.0);
    EXPECT_LE(sa, std::log(2.0) + 1e-12);
  }
}

}  // namespace
}  // namespace qtraj
