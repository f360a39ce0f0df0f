#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dressgate {

namespace constants {
inline constexpr double kBoltzmann = 1.380649e-23;        // J/K (exact, SI 2019)
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg (CODATA 2018)
inline constexpr double kCesiumMassAmu = 132.905451933;
}  // namespace constants

// Which side of resonance the dressing sweep starts from. Blue means the laser
// is above resonance (Delta > 0 in H = -Delta |r><r|), red means below.
enum class StartSide { blue, red };

constexpr double side_sign(StartSide side) { return side == StartSide::blue ? 1.0 : -1.0; }

std::string_view to_string(StartSide side);
StartSide parse_start_side(std::string_view text);

// Rydberg laser parameters seen by one atom, angular units (rad/s).
struct AtomDrive {
  double omega = 0.0;
  double delta = 0.0;

  void validate() const;
};

// All frequencies are angular (rad/s).
struct PhysicsParams {
  double omega_max = 0.0;
  double v_dd = 0.0;
  double gamma_r = 0.0;  // 1 / tau_r
  double k_1r = 0.0;     // rad/m
  double mass = 0.0;     // kg
  double temperature = 0.0;  // K

  // Throws ValidationError on negative or non-finite fields, or on
  // gamma_r >= omega_max when both are set.
  void validate() const;

  // Soft problems that do not stop a run (e.g. v_dd <= omega_max).
  std::vector<std::string> warnings() const;

  // Cs, 319 nm, Omega_max/2pi = 4 MHz, V_DD = 10 Omega_max, tau_r = 140 us, 10 uK.
  static PhysicsParams cesium_reference();
};

inline constexpr double hz_to_angular(double hz) { return 2.0 * 3.14159265358979323846 * hz; }

}  // namespace dressgate
