#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qtraj/matkit.hpp"

namespace qtraj {

enum class Model { kQuantum, kClassical };

std::string_view to_string(Model m);
Model model_from_string(std::string_view s);

// Which classical flips count as emission events.
enum class EmissionConvention { kAnyFlip, kDownFlip };

std::string_view to_string(EmissionConvention c);
EmissionConvention emission_convention_from_string(std::string_view s);

// Physical and numerical parameters shared by both simulators. Rates are in
// the same (arbitrary) unit; dt is an absolute time step in the inverse unit.
struct SimParams {
  double omega = 1.0;     // Rabi drive
  double gamma = 1.0;     // decay rate
  double coupling = 0.0;  // Ising J
  double beta = 1.0;      // bias scale of the classical model
  double dt = 0.01;
  std::int64_t steps = 100000;
  std::int64_t n_traj = 200;
  std::uint64_t seed = 1;
  std::int64_t sample_stride = 10;

  // Throws ConfigError naming the offending field, or NumericalGuardError
  // when gamma*dt exceeds kMaxGammaDt.
  void validate() const;

  static constexpr double kMaxGammaDt = 0.05;
};

struct QuantumSample {
  std::int64_t step;
  CVector psi;
};

struct ClassicalSample {
  std::int64_t step;
  int s1;
  int s2;
};

// Per-step emission bits of one trajectory plus periodic state samples.
// r1[t], r2[t] are the events in (t*dt, (t+1)*dt]; a sample at step t is the
// state at time t*dt, taken for every t divisible by sample_stride.
struct EmissionRecord {
  Model model = Model::kQuantum;
  SimParams params;
  std::int64_t traj_index = 0;
  std::vector<std::uint8_t> r1;
  std::vector<std::uint8_t> r2;
  std::vector<QuantumSample> quantum_samples;
  std::vector<ClassicalSample> classical_samples;

  std::int64_t size() const { return static_cast<std::int64_t>(r1.size()); }
  double dt() const { return params.dt; }
};

}  // namespace qtraj
