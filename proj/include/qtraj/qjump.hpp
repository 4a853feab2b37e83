#pragma once

// Quantum-jump Monte Carlo for two driven qubits with local spontaneous decay:
//
//   H     = (omega/2)(sx (x) 1 + 1 (x) sx) + J sz (x) sz
//   L_i   = sqrt(gamma) s-^(i)
//   H_eff = H - (i gamma / 2)(n_1 + n_2)
//
// Each step either applies one jump (probability gamma*dt*<n_i>) or the
// no-jump propagator exp(-i H_eff dt), followed by renormalization.

#include <cstdint>
#include <utility>

#include "qtraj/matkit.hpp"
#include "qtraj/params.hpp"
#include "qtraj/rng.hpp"

namespace qtraj {

CMatrix build_hamiltonian(const SimParams& p);
CMatrix build_effective_hamiltonian(const SimParams& p);
CMatrix build_propagator(const SimParams& p);

struct JumpProbabilities {
  double p1;
  double p2;
};

JumpProbabilities jump_probabilities(const CVector& psi, const SimParams& p);

struct QuantumStepResult {
  CVector psi;
  int emit1;
  int emit2;
};

// One step driven by a caller-supplied uniform u in [0, 1): [0, p1) selects
// jump 1, [p1, p1 + p2) jump 2, anything else the no-jump branch.
QuantumStepResult qj_step(const CVector& psi, const CMatrix& u_eff, const SimParams& p, double u);

inline QuantumStepResult qj_step(const CVector& psi, const CMatrix& u_eff, const SimParams& p, TrajectoryRng& rng) {
  return qj_step(psi, u_eff, p, rng.uniform());
}

// Starts in |gg>. Deterministic per (p.seed, traj_index).
EmissionRecord run_trajectory(const SimParams& p, std::int64_t traj_index);

// Window over step indices, half-open [start, end).
struct StepWindow {
  std::int64_t start;
  std::int64_t end;
};

// Average of |psi><psi| over the sampled states of the given records whose
// step lies in the window.
CMatrix ensemble_density_matrix(const std::vector<EmissionRecord>& records, StepWindow window);

// Runs p.n_traj trajectories and averages their sampled projectors over the window.
CMatrix ensemble_density_matrix(const SimParams& p, StepWindow window);

// Accumulator for sum |psi><psi| that can be merged in trajectory order.
class DensityAccumulator {
 public:
  void add(const CVector& psi);
  void merge(const DensityAccumulator& other);
  std::int64_t count() const { return count_; }
  // Throws std::invalid_argument when nothing was accumulated.
  CMatrix mean() const;

 private:
  std::array<double, 16> re_{};
  std::array<double, 16> im_{};
  std::int64_t count_ = 0;
};

// S(rho_A) + S(rho_B) - S(rho_AB), nats.
double quantum_mutual_information(const CMatrix& rho_ab);

// For a pure two-qubit state: 2 S(rho_A).
double pure_state_mutual_information(const CVector& psi);

}  // namespace qtraj
