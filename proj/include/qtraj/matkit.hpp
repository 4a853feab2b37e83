#pragma once

// Dense complex kernels for the 2x2 / 4x4 matrices of the two-qubit model.
//
// Basis convention (used everywhere in qtraj): |q1 q2> with q1 the slow index,
// ordered (ee, eg, ge, gg). A qubit with s = 1 is excited, so the basis index
// of (s1, s2) is 2*(1 - s1) + (1 - s2).

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace qtraj {

using cplx = std::complex<double>;

inline constexpr int basis_index(int s1, int s2) {
  return 2 * (1 - s1) + (1 - s2);
}

enum class Subsystem { A, B };

class CMatrix {
 public:
  static constexpr int kMaxDim = 4;

  // Zero matrix of the given dimension (2 or 4).
  explicit CMatrix(int dim = 4);
  // Row-major entries; size must be dim*dim.
  CMatrix(int dim, std::initializer_list<cplx> entries);

  static CMatrix identity(int dim);
  static CMatrix diagonal(std::initializer_list<cplx> diag);

  int dim() const { return dim_; }
  cplx& operator()(int r, int c) { return a_[r * kMaxDim + c]; }
  const cplx& operator()(int r, int c) const { return a_[r * kMaxDim + c]; }

  CMatrix adjoint() const;
  cplx trace() const;
  // Largest absolute entry.
  double max_abs() const;
  // Induced 1-norm (max column sum).
  double norm1() const;
  bool all_finite() const;
  // max |m - m^dagger| over entries.
  double hermiticity_error() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

 private:
  int dim_;
  std::array<cplx, kMaxDim * kMaxDim> a_{};
};

// Four-component state vector on the two-qubit basis.
class CVector {
 public:
  CVector() = default;
  CVector(cplx ee, cplx eg, cplx ge, cplx gg) : v_{ee, eg, ge, gg} {}

  static CVector basis(int index);
  static CVector basis_state(int s1, int s2) { return basis(basis_index(s1, s2)); }

  cplx& operator[](int i) { return v_[i]; }
  const cplx& operator[](int i) const { return v_[i]; }

  double norm_squared() const;
  double norm() const;
  CVector normalized() const;
  // |psi><psi|
  CMatrix projector() const;

  const std::array<cplx, 4>& data() const { return v_; }

 private:
  std::array<cplx, 4> v_{};
};

CVector operator*(const CMatrix& m, const CVector& v);

// Standard Pauli and ladder matrices in the (e, g) ordering.
namespace pauli {
CMatrix identity();
CMatrix x();
CMatrix y();
CMatrix z();
CMatrix lower();  // sigma_minus = |g><e|
CMatrix raise();  // sigma_plus  = |e><g|
}  // namespace pauli

// a (x) b for two 2x2 matrices.
CMatrix kron(const CMatrix& a, const CMatrix& b);

// exp(scale * m) by scaling and squaring with a truncated Taylor series.
CMatrix mat_exp(const CMatrix& m, cplx scale);

// Eigenvalues of a Hermitian matrix, ascending.
std::vector<double> herm_eigvals(const CMatrix& m);

// Reduced density matrix of the kept qubit of a 4x4 density matrix.
CMatrix partial_trace(const CMatrix& rho, Subsystem keep);

// S = -Tr[rho ln rho] in nats.
double von_neumann_entropy(const CMatrix& rho);

}  // namespace qtraj
