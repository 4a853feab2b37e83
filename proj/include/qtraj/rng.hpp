#pragma once

#include <cstdint>
#include <random>

namespace qtraj {

// Per-trajectory random stream. The stream for (master_seed, traj_index) is a
// 64-bit Mersenne twister initialised through std::seed_seq from the four
// 32-bit halves {lo(seed), hi(seed), lo(index), hi(index)}. Both algorithms
// are fully specified by the standard, so streams are reproducible across
// platforms and independent of how trajectories are scheduled.
class TrajectoryRng {
 public:
  TrajectoryRng(std::uint64_t master_seed, std::uint64_t traj_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(traj_index), static_cast<std::uint32_t>(traj_index >> 32)};
    engine_.seed(seq);
  }

  // Uniform double in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qtraj
