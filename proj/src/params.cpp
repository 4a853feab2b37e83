#include "qtraj/params.hpp"

#include <cmath>
#include <sstream>

#include "qtraj/errors.hpp"

namespace qtraj {

std::string_view to_string(Model m) { return m == Model::kQuantum ? "quantum" : "classical"; }

Model model_from_string(std::string_view s) {
  if (s == "quantum") return Model::kQuantum;
  if (s == "classical") return Model::kClassical;
  throw ConfigError("unknown model '" + std::string(s) + "' (expected quantum or classical)");
}

std::string_view to_string(EmissionConvention c) { return c == EmissionConvention::kAnyFlip ? "any-flip" : "down-flip"; }

EmissionConvention emission_convention_from_string(std::string_view s) {
  if (s == "any-flip") return EmissionConvention::kAnyFlip;
  if (s == "down-flip") return EmissionConvention::kDownFlip;
  throw ConfigError("unknown emission convention '" + std::string(s) + "' (expected any-flip or down-flip)");
}

namespace {

void require(bool ok, const char* field, const char* bound, double value) {
  if (ok) return;
  std::ostringstream os;
  os << "invalid " << field << " = " << value << ": must satisfy " << bound;
  throw ConfigError(os.str());
}

}  // namespace

void SimParams::validate() const {
  require(std::isfinite(omega) && omega >= 0.0, "omega", "omega >= 0", omega);
  require(std::isfinite(gamma) && gamma >= 0.0, "gamma", "gamma >= 0", gamma);
  require(std::isfinite(coupling), "coupling", "finite", coupling);
  require(std::isfinite(beta), "beta", "finite", beta);
  require(std::isfinite(dt) && dt > 0.0, "dt", "dt > 0", dt);
  require(steps >= 1, "steps", "steps >= 1", static_cast<double>(steps));
  require(n_traj >= 1, "n_traj", "n_traj >= 1", static_cast<double>(n_traj));
  require(sample_stride >= 1, "sample_stride", "sample_stride >= 1", static_cast<double>(sample_stride));
  if (gamma * dt > kMaxGammaDt) {
    std::ostringstream os;
    os << "gamma*dt = " << gamma * dt << " exceeds " << kMaxGammaDt
       << "; first-order jump probabilities need a smaller dt (try dt <= " << kMaxGammaDt / gamma << ")";
    throw NumericalGuardError(os.str());
  }
}

}  // namespace qtraj
