#pragma once

#include <Eigen/Core>

#include "dressgate/physics.hpp"
#include "dressgate/types.hpp"

namespace dressgate {

// Closed-form dressed-state analytics in the perfect-blockade limit.
//
// Each light shift has two branches; the one returned is the eigenvalue that
// connects adiabatically to the bare ground state when the sweep starts far on
// `side` of resonance. With H = -Delta|r><r|, blue (Delta > 0) picks the upper
// branch and red (Delta < 0) the lower one.

// E_LS^(1) = (-Delta +- sqrt(Omega^2 + Delta^2)) / 2
double light_shift_one(const AtomDrive& drive, StartSide side);

// E_LS^(2) = (-Delta +- sqrt(2 Omega^2 + Delta^2)) / 2, coupling sqrt(2) Omega / 2
double light_shift_two(const AtomDrive& drive, StartSide side);

// kappa = E_LS^(2) - 2 E_LS^(1)
double kappa_perfect_blockade(const AtomDrive& drive, StartSide side);

struct DressedAnalytics {
  double e_ls1 = 0.0;
  double e_ls2 = 0.0;
  double kappa = 0.0;
  double theta1 = 0.0;  // tan(theta1) = Omega / Delta
  double theta2 = 0.0;  // tan(theta2) = sqrt(2) Omega / Delta
};

DressedAnalytics dressed_analytics(const AtomDrive& drive, StartSide side);

// Symmetric-drive kappa with a finite interaction: ground-connected eigenvalue
// of the {|11>, |B>, |rr>} block minus twice the one-atom shift.
struct FiniteBlockadeKappa {
  double kappa = 0.0;
  double ground_energy = 0.0;
  // Weight of |11> in the selected eigenvector.
  double bare_overlap = 1.0;
  // Set when the selected level carries at least 1/4 |rr> weight
  // (V_DD ~ 2 Delta) and the branch choice is not trustworthy.
  bool near_resonance = false;
};

FiniteBlockadeKappa kappa_finite_blockade(const AtomDrive& drive, double v_dd, StartSide side);

// Ground-connected eigenvalue of the 4-dim {|11>,|1r>,|r1>,|rr>} sector with
// independent drives on the two atoms (no decay).
FiniteBlockadeKappa kappa_two_atom(const AtomDrive& drive_a, const AtomDrive& drive_b, double v_dd,
                                   StartSide side);

// Momentum-resolved bright/dark model.
struct BDModelParams {
  double omega_a = 0.0;
  double omega_b = 0.0;
  double delta = 0.0;
  double p_cm = 0.0;        // p_a + p_b, kg m/s
  double p_rel = 0.0;       // (p_a - p_b) / 2, kg m/s
  double total_mass = 0.0;  // kg
  double mass = 0.0;        // kg

  void validate() const;
};

enum BDState : int { kBDGround = 0, kBDBright = 1, kBDDark = 2, kBDDouble = 3 };

using Matrix4d = Eigen::Matrix4d;

// Hamiltonian on {|G>, |B>, |D>, |rr>}. Real symmetric.
Matrix4d build_bd_hamiltonian(const BDModelParams& params, double v_dd, double k_1r);

}  // namespace dressgate
