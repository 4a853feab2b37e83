#include "qtraj/telegraph.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qtraj/errors.hpp"

namespace qtraj {

namespace {

constexpr double kMaxFlipProbability = 0.5;

void check_bit(int s, const char* name) {
  if (s != 0 && s != 1) throw std::invalid_argument(std::string(name) + " must be 0 or 1");
}

// Probabilities for a spin whose partner is aligned / anti-aligned with it.
struct FlipTable {
  double aligned;
  double anti_aligned;

  double operator()(int s_i, int s_j) const { return s_i == s_j ? aligned : anti_aligned; }
};

FlipTable make_flip_table(const SimParams& p) {
  const double base = p.dt * p.gamma * effective_drive(p);
  const FlipTable t{base * std::exp(-p.beta * p.coupling), base * std::exp(p.beta * p.coupling)};
  const double worst = std::max(t.aligned, t.anti_aligned);
  if (!(worst <= kMaxFlipProbability)) {
    std::ostringstream os;
    os << "classical flip probability " << worst << " exceeds " << kMaxFlipProbability << "; reduce dt";
    throw NumericalGuardError(os.str());
  }
  return t;
}

bool counts_as_emission(int before, int after, EmissionConvention c) {
  if (before == after) return false;
  return c == EmissionConvention::kAnyFlip || (before == 1 && after == 0);
}

ClassicalStepResult step_kernel(const ClassicalState& s, const FlipTable& flips, double u1, double u2,
                                EmissionConvention convention) {
  ClassicalState next = s;
  if (u1 < flips(s.s1, s.s2)) next.s1 = 1 - s.s1;
  if (u2 < flips(s.s2, s.s1)) next.s2 = 1 - s.s2;
  return {next, counts_as_emission(s.s1, next.s1, convention) ? 1 : 0,
          counts_as_emission(s.s2, next.s2, convention) ? 1 : 0};
}

}  // namespace

double effective_drive(const SimParams& p) {
  const double denom = p.gamma * p.gamma + 2.0 * (p.omega * p.omega + p.coupling * p.coupling);
  if (denom == 0.0) return 0.0;
  return p.gamma * p.omega * p.omega / denom;
}

double flip_probability(int s_i, int s_j, const SimParams& p) {
  check_bit(s_i, "s_i");
  check_bit(s_j, "s_j");
  p.validate();
  return make_flip_table(p)(s_i, s_j);
}

ClassicalStepResult tg_step(const ClassicalState& state, const SimParams& p, double u1, double u2,
                            EmissionConvention convention) {
  check_bit(state.s1, "s1");
  check_bit(state.s2, "s2");
  return step_kernel(state, make_flip_table(p), u1, u2, convention);
}

EmissionRecord run_trajectory_classical(const SimParams& p, std::int64_t traj_index, EmissionConvention convention) {
  p.validate();
  const FlipTable flips = make_flip_table(p);
  TrajectoryRng rng(p.seed, static_cast<std::uint64_t>(traj_index));

  EmissionRecord rec;
  rec.model = Model::kClassical;
  rec.params = p;
  rec.traj_index = traj_index;
  rec.r1.resize(static_cast<std::size_t>(p.steps));
  rec.r2.resize(static_cast<std::size_t>(p.steps));
  rec.classical_samples.reserve(static_cast<std::size_t>(p.steps / p.sample_stride + 1));

  ClassicalState s;
  for (std::int64_t t = 0; t < p.steps; ++t) {
    if (t % p.sample_stride == 0) rec.classical_samples.push_back({t, s.s1, s.s2});
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    const ClassicalStepResult r = step_kernel(s, flips, u1, u2, convention);
    s = r.state;
    rec.r1[static_cast<std::size_t>(t)] = static_cast<std::uint8_t>(r.emit1);
    rec.r2[static_cast<std::size_t>(t)] = static_cast<std::uint8_t>(r.emit2);
  }
  return rec;
}

double classical_mutual_information(const OccupancyTable& occ) {
  occ.validate();
  const double h1 = shannon_entropy(std::vector<double>{occ.p[0][0] + occ.p[0][1], occ.p[1][0] + occ.p[1][1]});
  const double h2 = shannon_entropy(std::vector<double>{occ.p[0][0] + occ.p[1][0], occ.p[0][1] + occ.p[1][1]});
  const double h12 = shannon_entropy(std::vector<double>{occ.p[0][0], occ.p[0][1], occ.p[1][0], occ.p[1][1]});
  return std::max(0.0, h1 + h2 - h12);
}

}  // namespace qtraj
