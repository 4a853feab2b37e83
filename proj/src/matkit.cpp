#include "qtraj/matkit.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qtraj {

namespace {

void check_dim(int dim) {
  if (dim != 2 && dim != 4) {
    throw std::invalid_argument("CMatrix dimension must be 2 or 4, got " + std::to_string(dim));
  }
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-8;
constexpr double kNegativeEigenvalueTol = 1e-6;
constexpr double kEigenvalueClip = 1e-12;

template <int N>
std::vector<double> eigvals_fixed(const CMatrix& m) {
  Eigen::Matrix<cplx, N, N> e;
  for (int r = 0; r < N; ++r) {
    for (int c = 0; c < N; ++c) {
      // Symmetrize so that round-off in the input cannot leak into the solver.
      e(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<cplx, N, N>> solver(e, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("herm_eigvals: eigenvalue iteration did not converge");
  }
  std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + N);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CMatrix::CMatrix(int dim) : dim_(dim) { check_dim(dim); }

CMatrix::CMatrix(int dim, std::initializer_list<cplx> entries) : dim_(dim) {
  check_dim(dim);
  if (static_cast<int>(entries.size()) != dim * dim) {
    throw std::invalid_argument("CMatrix: expected " + std::to_string(dim * dim) + " entries, got " +
                                std::to_string(entries.size()));
  }
  int k = 0;
  for (const cplx& z : entries) {
    (*this)(k / dim, k % dim) = z;
    ++k;
  }
}

CMatrix CMatrix::identity(int dim) {
  CMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::initializer_list<cplx> diag) {
  CMatrix m(static_cast<int>(diag.size()));
  int i = 0;
  for (const cplx& z : diag) {
    m(i, i) = z;
    ++i;
  }
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) out(r, c) = std::conj((*this)(c, r));
  return out;
}

cplx CMatrix::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) m = std::max(m, std::abs((*this)(r, c)));
  return m;
}

double CMatrix::norm1() const {
  double best = 0.0;
  for (int c = 0; c < dim_; ++c) {
    double col = 0.0;
    for (int r = 0; r < dim_; ++r) col += std::abs((*this)(r, c));
    best = std::max(best, col);
  }
  return best;
}

bool CMatrix::all_finite() const {
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c)
      if (!finite((*this)(r, c))) return false;
  return true;
}

double CMatrix::hermiticity_error() const {
  double err = 0.0;
  for (int r = 0; r < dim_; ++r)
    for (int c = r; c < dim_; ++c) err = std::max(err, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return err;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("CMatrix +: dimension mismatch");
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) (*this)(r, c) += o(r, c);
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("CMatrix -: dimension mismatch");
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) (*this)(r, c) -= o(r, c);
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) (*this)(r, c) *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("CMatrix *: dimension mismatch");
  const int n = a.dim();
  CMatrix out(n);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) {
      const cplx ark = a(r, k);
      for (int c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

CVector CVector::basis(int index) {
  if (index < 0 || index > 3) throw std::invalid_argument("CVector::basis: index out of range");
  CVector v;
  v[index] = 1.0;
  return v;
}

double CVector::norm_squared() const {
  double s = 0.0;
  for (const cplx& z : v_) s += std::norm(z);
  return s;
}

double CVector::norm() const { return std::sqrt(norm_squared()); }

CVector CVector::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw std::invalid_argument("CVector::normalized: zero-norm vector");
  CVector out = *this;
  for (auto& z : out.v_) z /= n;
  return out;
}

CMatrix CVector::projector() const {
  CMatrix m(4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = v_[r] * std::conj(v_[c]);
  return m;
}

CVector operator*(const CMatrix& m, const CVector& v) {
  if (m.dim() != 4) throw std::invalid_argument("CMatrix * CVector: matrix must be 4x4");
  CVector out;
  for (int r = 0; r < 4; ++r) {
    cplx acc = 0.0;
    for (int c = 0; c < 4; ++c) acc += m(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

namespace pauli {
CMatrix identity() { return CMatrix::identity(2); }
CMatrix x() { return CMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
CMatrix y() { return CMatrix(2, {0.0, cplx(0, -1), cplx(0, 1), 0.0}); }
CMatrix z() { return CMatrix(2, {1.0, 0.0, 0.0, -1.0}); }
CMatrix lower() { return CMatrix(2, {0.0, 0.0, 1.0, 0.0}); }
CMatrix raise() { return CMatrix(2, {0.0, 1.0, 0.0, 0.0}); }
}  // namespace pauli

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != 2 || b.dim() != 2) {
    throw std::invalid_argument("kron: both factors must be 2x2 (got " + std::to_string(a.dim()) + " and " +
                                std::to_string(b.dim()) + ")");
  }
  CMatrix out(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

CMatrix mat_exp(const CMatrix& m, cplx scale) {
  if (!m.all_finite() || !finite(scale)) throw std::invalid_argument("mat_exp: non-finite input");
  const int n = m.dim();
  CMatrix a = m * scale;

  // Scale so that ||a||_1 <= 1/4; 20 Taylor terms then leave a truncation
  // error far below double rounding.
  const double norm = a.norm1();
  int squarings = 0;
  if (norm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
  a *= std::ldexp(1.0, -squarings);

  CMatrix result = CMatrix::identity(n);
  CMatrix term = CMatrix::identity(n);
  for (int k = 1; k <= 20; ++k) {
    term = term * a;
    term *= 1.0 / k;
    result += term;
    if (term.max_abs() < 1e-18 * result.max_abs()) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

std::vector<double> herm_eigvals(const CMatrix& m) {
  if (!m.all_finite()) throw std::invalid_argument("herm_eigvals: non-finite input");
  const double herr = m.hermiticity_error();
  if (herr > kHermitianTol) {
    throw std::invalid_argument("herm_eigvals: matrix is not Hermitian (|m - m^dagger|_max = " +
                                std::to_string(herr) + ")");
  }
  return m.dim() == 2 ? eigvals_fixed<2>(m) : eigvals_fixed<4>(m);
}

CMatrix partial_trace(const CMatrix& rho, Subsystem keep) {
  if (rho.dim() != 4) throw std::invalid_argument("partial_trace: rho must be 4x4");
  if (keep != Subsystem::A && keep != Subsystem::B) throw std::invalid_argument("partial_trace: invalid subsystem id");
  CMatrix out(2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < 2; ++k) {
        acc += keep == Subsystem::A ? rho(2 * i + k, 2 * j + k) : rho(2 * k + i, 2 * k + j);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

double von_neumann_entropy(const CMatrix& rho) {
  const cplx tr = rho.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw std::invalid_argument("von_neumann_entropy: trace " + std::to_string(tr.real()) + " is not 1");
  }
  double s = 0.0;
  for (double lambda : herm_eigvals(rho)) {
    if (lambda < -kNegativeEigenvalueTol) {
      throw std::invalid_argument("von_neumann_entropy: eigenvalue " + std::to_string(lambda) +
                                  " < 0, not a density matrix");
    }
    lambda = std::clamp(lambda, 0.0, 1.0);
    if (lambda <= kEigenvalueClip) continue;
    s -= lambda * std::log(lambda);
  }
  return std::max(s, 0.0);
}

}  // namespace qtraj
