#include "dressgate/physics.hpp"

#include <cmath>

#include "dressgate/errors.hpp"
#include "dressgate/types.hpp"

namespace dressgate {

std::string_view to_string(StartSide side) { return side == StartSide::blue ? "blue" : "red"; }

StartSide parse_start_side(std::string_view text) {
  if (text == "blue") return StartSide::blue;
  if (text == "red") return StartSide::red;
  throw ValidationError("start_side must be \"blue\" or \"red\", got \"" + std::string(text) + "\"");
}

void AtomDrive::validate() const {
  if (!std::isfinite(omega) || !std::isfinite(delta)) {
    throw ValidationError("AtomDrive: non-finite Rabi frequency or detuning");
  }
  if (omega < 0.0) throw ValidationError("AtomDrive: Rabi frequency must be >= 0");
}

void PhysicsParams::validate() const {
  const double fields[] = {omega_max, v_dd, gamma_r, k_1r, mass, temperature};
  for (double f : fields) {
    if (!std::isfinite(f)) throw ValidationError("PhysicsParams: non-finite field");
    if (f < 0.0) throw ValidationError("PhysicsParams: fields must be >= 0");
  }
  if (omega_max > 0.0 && gamma_r >= omega_max) {
    throw ValidationError("PhysicsParams: gamma_r must be below omega_max (fast-gate regime)");
  }
}

std::vector<std::string> PhysicsParams::warnings() const {
  std::vector<std::string> out;
  if (v_dd <= omega_max) {
    out.emplace_back("v_dd <= omega_max: blockade assumption does not hold");
  }
  return out;
}

PhysicsParams PhysicsParams::cesium_reference() {
  PhysicsParams p;
  p.omega_max = hz_to_angular(4.0e6);
  p.v_dd = 10.0 * p.omega_max;
  p.gamma_r = 1.0 / 140.0e-6;
  p.k_1r = kTwoPi / 319.0e-9;
  p.mass = constants::kCesiumMassAmu * constants::kAtomicMassUnit;
  p.temperature = 10.0e-6;
  return p;
}

}  // namespace dressgate
