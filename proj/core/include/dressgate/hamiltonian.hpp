#pragma once

#include <array>

#include "dressgate/basis.hpp"
#include "dressgate/physics.hpp"
#include "dressgate/types.hpp"

namespace dressgate {

// -Delta|r><r| + (Omega/2)(|r><1| + |1><r|) - i(gamma_r/2)|r><r| on {|0>,|1>,|r>}.
// The clock state |0> is never coupled. Throws ValidationError on bad input.
Matrix3c build_single_hamiltonian(const AtomDrive& drive, double gamma_r);

// H_a (x) 1 + 1 (x) H_b + V_DD |rr><rr|, with per-atom decay from physics.gamma_r.
Operator9 build_two_atom_hamiltonian(const AtomDrive& drive_a, const AtomDrive& drive_b,
                                     const PhysicsParams& physics);

// Sparse form of the same operator, for the inner loop of the integrators:
// 9 diagonal entries plus the |1>-|r> couplings of each atom.
struct TwoAtomCoefficients {
  std::array<Complex, kTwoAtomDim> diagonal{};
  double half_omega_a = 0.0;
  double half_omega_b = 0.0;

  static TwoAtomCoefficients from(const AtomDrive& drive_a, const AtomDrive& drive_b,
                                  double v_dd, double gamma_r);

  // out = H * in, column by column. `in` and `out` must not alias.
  template <typename In, typename Out>
  void apply(const In& in, Out& out) const {
    for (Eigen::Index c = 0; c < in.cols(); ++c) {
      for (int i = 0; i < kTwoAtomDim; ++i) out(i, c) = diagonal[i] * in(i, c);
      // atom a: |1 x> <-> |r x>
      for (int x = 0; x < 3; ++x) {
        const int lo = 3 + x;
        const int hi = 6 + x;
        out(lo, c) += half_omega_a * in(hi, c);
        out(hi, c) += half_omega_a * in(lo, c);
      }
      // atom b: |x 1> <-> |x r>
      for (int x = 0; x < 3; ++x) {
        const int lo = 3 * x + 1;
        const int hi = 3 * x + 2;
        out(lo, c) += half_omega_b * in(hi, c);
        out(hi, c) += half_omega_b * in(lo, c);
      }
    }
  }

  Operator9 dense() const;
};

}  // namespace dressgate
