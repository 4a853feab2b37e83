#pragma once

// Interacting telegraph-spin model: two classical bits that flip once per
// step with probability
//
//   dt * gamma * omega_eff * exp(-beta J (2 s_i - 1)(2 s_j - 1)),
//
// where omega_eff = gamma omega^2 / (gamma^2 + 2 (omega^2 + J^2)) matches the
// steady-state emission rate of the quantum model at J = 0.

#include <cstdint>

#include "qtraj/metrics.hpp"
#include "qtraj/params.hpp"
#include "qtraj/rng.hpp"

namespace qtraj {

struct ClassicalState {
  int s1 = 0;
  int s2 = 0;

  friend bool operator==(const ClassicalState&, const ClassicalState&) = default;
};

// Returns 0 when gamma = omega = J = 0.
double effective_drive(const SimParams& p);

// Throws NumericalGuardError when the probability exceeds 0.5.
double flip_probability(int s_i, int s_j, const SimParams& p);

struct ClassicalStepResult {
  ClassicalState state;
  int emit1;
  int emit2;
};

// Simultaneous update: both flip probabilities come from the pre-step
// configuration; spin i flips iff u_i < p_i.
ClassicalStepResult tg_step(const ClassicalState& state, const SimParams& p, double u1, double u2,
                            EmissionConvention convention = EmissionConvention::kAnyFlip);

inline ClassicalStepResult tg_step(const ClassicalState& state, const SimParams& p, TrajectoryRng& rng,
                                   EmissionConvention convention = EmissionConvention::kAnyFlip) {
  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  return tg_step(state, p, u1, u2, convention);
}

// Starts in (0, 0). Deterministic per (p.seed, traj_index).
EmissionRecord run_trajectory_classical(const SimParams& p, std::int64_t traj_index,
                                        EmissionConvention convention = EmissionConvention::kAnyFlip);

// H(s1) + H(s2) - H(s1, s2), nats.
double classical_mutual_information(const OccupancyTable& occ);

}  // namespace qtraj
