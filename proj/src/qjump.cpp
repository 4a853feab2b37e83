#include "qtraj/qjump.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qtraj {

namespace {

constexpr double kNormTol = 1e-8;

// Populations of the excited level of each qubit in the (ee, eg, ge, gg) basis.
double excited_population_1(const CVector& psi) { return std::norm(psi[0]) + std::norm(psi[1]); }
double excited_population_2(const CVector& psi) { return std::norm(psi[0]) + std::norm(psi[2]); }

// s-^(1): ee -> ge, eg -> gg
CVector lower_qubit_1(const CVector& psi) { return {0.0, 0.0, psi[0], psi[1]}; }
// s-^(2): ee -> eg, ge -> gg
CVector lower_qubit_2(const CVector& psi) { return {0.0, psi[0], 0.0, psi[2]}; }

CVector renormalize(const CVector& v) {
  const double n = v.norm();
  if (!(n > 0.0)) throw std::logic_error("qj_step: branch with zero norm selected");
  CVector out = v;
  for (int i = 0; i < 4; ++i) out[i] /= n;
  return out;
}

// Shared by qj_step and run_trajectory; no argument checks.
QuantumStepResult step_kernel(const CVector& psi, const CMatrix& u_eff, double gamma_dt, double u) {
  const double p1 = gamma_dt * excited_population_1(psi);
  const double p2 = gamma_dt * excited_population_2(psi);
  if (u < p1) return {renormalize(lower_qubit_1(psi)), 1, 0};
  if (u < p1 + p2) return {renormalize(lower_qubit_2(psi)), 0, 1};
  return {renormalize(u_eff * psi), 0, 0};
}

}  // namespace

CMatrix build_hamiltonian(const SimParams& p) {
  p.validate();
  const CMatrix id = pauli::identity();
  CMatrix h = (kron(pauli::x(), id) + kron(id, pauli::x())) * (p.omega / 2.0);
  h += kron(pauli::z(), pauli::z()) * p.coupling;
  return h;
}

CMatrix build_effective_hamiltonian(const SimParams& p) {
  CMatrix h = build_hamiltonian(p);
  const CMatrix id = pauli::identity();
  const CMatrix n = pauli::raise() * pauli::lower();
  // sum_i L_i^dagger L_i = gamma (n_1 + n_2)
  const CMatrix decay = (kron(n, id) + kron(id, n)) * p.gamma;
  h -= decay * cplx(0.0, 0.5);
  return h;
}

CMatrix build_propagator(const SimParams& p) {
  return mat_exp(build_effective_hamiltonian(p), cplx(0.0, -p.dt));
}

JumpProbabilities jump_probabilities(const CVector& psi, const SimParams& p) {
  const double n2 = psi.norm_squared();
  if (std::abs(n2 - 1.0) > kNormTol) {
    throw std::invalid_argument("jump_probabilities: state is not normalized (|psi|^2 = " + std::to_string(n2) + ")");
  }
  const double gdt = p.gamma * p.dt;
  return {gdt * excited_population_1(psi), gdt * excited_population_2(psi)};
}

QuantumStepResult qj_step(const CVector& psi, const CMatrix& u_eff, const SimParams& p, double u) {
  const double n2 = psi.norm_squared();
  if (std::abs(n2 - 1.0) > kNormTol) {
    throw std::invalid_argument("qj_step: state is not normalized (|psi|^2 = " + std::to_string(n2) + ")");
  }
  if (u_eff.dim() != 4) throw std::invalid_argument("qj_step: propagator must be 4x4");
  return step_kernel(psi, u_eff, p.gamma * p.dt, u);
}

EmissionRecord run_trajectory(const SimParams& p, std::int64_t traj_index) {
  p.validate();
  const CMatrix u_eff = build_propagator(p);
  const double gamma_dt = p.gamma * p.dt;
  TrajectoryRng rng(p.seed, static_cast<std::uint64_t>(traj_index));

  EmissionRecord rec;
  rec.model = Model::kQuantum;
  rec.params = p;
  rec.traj_index = traj_index;
  rec.r1.resize(static_cast<std::size_t>(p.steps));
  rec.r2.resize(static_cast<std::size_t>(p.steps));
  rec.quantum_samples.reserve(static_cast<std::size_t>(p.steps / p.sample_stride + 1));

  CVector psi = CVector::basis_state(0, 0);
  for (std::int64_t t = 0; t < p.steps; ++t) {
    if (t % p.sample_stride == 0) rec.quantum_samples.push_back({t, psi});
    const QuantumStepResult r = step_kernel(psi, u_eff, gamma_dt, rng.uniform());
    psi = r.psi;
    rec.r1[static_cast<std::size_t>(t)] = static_cast<std::uint8_t>(r.emit1);
    rec.r2[static_cast<std::size_t>(t)] = static_cast<std::uint8_t>(r.emit2);
  }
  return rec;
}

void DensityAccumulator::add(const CVector& psi) {
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const cplx z = psi[r] * std::conj(psi[c]);
      re_[r * 4 + c] += z.real();
      im_[r * 4 + c] += z.imag();
    }
  }
  ++count_;
}

void DensityAccumulator::merge(const DensityAccumulator& other) {
  for (int k = 0; k < 16; ++k) {
    re_[k] += other.re_[k];
    im_[k] += other.im_[k];
  }
  count_ += other.count_;
}

CMatrix DensityAccumulator::mean() const {
  if (count_ == 0) throw std::invalid_argument("ensemble density matrix: no sampled states in window");
  CMatrix m(4);
  const double inv = 1.0 / static_cast<double>(count_);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = cplx(re_[r * 4 + c] * inv, im_[r * 4 + c] * inv);
  // Exact Hermiticity; the sums are Hermitian up to rounding.
  for (int r = 0; r < 4; ++r) {
    m(r, r) = m(r, r).real();
    for (int c = r + 1; c < 4; ++c) m(c, r) = std::conj(m(r, c));
  }
  return m;
}

CMatrix ensemble_density_matrix(const std::vector<EmissionRecord>& records, StepWindow window) {
  if (window.end <= window.start) throw std::invalid_argument("ensemble_density_matrix: empty window");
  DensityAccumulator acc;
  for (const auto& rec : records) {
    for (const auto& s : rec.quantum_samples) {
      if (s.step >= window.start && s.step < window.end) acc.add(s.psi);
    }
  }
  return acc.mean();
}

CMatrix ensemble_density_matrix(const SimParams& p, StepWindow window) {
  p.validate();
  if (window.end <= window.start || window.start < 0 || window.end > p.steps) {
    throw std::invalid_argument("ensemble_density_matrix: window must be a non-empty range within [0, steps]");
  }
  DensityAccumulator acc;
  for (std::int64_t i = 0; i < p.n_traj; ++i) {
    const EmissionRecord rec = run_trajectory(p, i);
    for (const auto& s : rec.quantum_samples) {
      if (s.step >= window.start && s.step < window.end) acc.add(s.psi);
    }
  }
  return acc.mean();
}

double quantum_mutual_information(const CMatrix& rho_ab) {
  if (rho_ab.dim() != 4) throw std::invalid_argument("quantum_mutual_information: rho must be 4x4");
  const double s_a = von_neumann_entropy(partial_trace(rho_ab, Subsystem::A));
  const double s_b = von_neumann_entropy(partial_trace(rho_ab, Subsystem::B));
  const double s_ab = von_neumann_entropy(rho_ab);
  return std::max(0.0, s_a + s_b - s_ab);
}

double pure_state_mutual_information(const CVector& psi) {
  const double n2 = psi.norm_squared();
  if (std::abs(n2 - 1.0) > kNormTol) throw std::invalid_argument("pure_state_mutual_information: state not normalized");
  return 2.0 * von_neumann_entropy(partial_trace(psi.projector(), Subsystem::A));
}

}  // namespace qtraj
