#include "dressgate/hamiltonian.hpp"

#include <cmath>

#include "dressgate/errors.hpp"

namespace dressgate {

namespace {

void check_rate(double gamma_r) {
  if (!std::isfinite(gamma_r) || gamma_r < 0.0) {
    throw ValidationError("decay rate must be finite and >= 0");
  }
}

}  // namespace

Matrix3c build_single_hamiltonian(const AtomDrive& drive, double gamma_r) {
  drive.validate();
  check_rate(gamma_r);
  Matrix3c h = Matrix3c::Zero();
  h(1, 2) = drive.omega / 2.0;
  h(2, 1) = drive.omega / 2.0;
  h(2, 2) = Complex(-drive.delta, -gamma_r / 2.0);
  return h;
}

TwoAtomCoefficients TwoAtomCoefficients::from(const AtomDrive& drive_a, const AtomDrive& drive_b,
                                              double v_dd, double gamma_r) {
  TwoAtomCoefficients c;
  const Complex ryd_a(-drive_a.delta, -gamma_r / 2.0);
  const Complex ryd_b(-drive_b.delta, -gamma_r / 2.0);
  for (int i = 0; i < kTwoAtomDim; ++i) {
    Complex d = 0.0;
    if (level_of_atom_a(i) == Level::rydberg) d += ryd_a;
    if (level_of_atom_b(i) == Level::rydberg) d += ryd_b;
    if (i == index_of(BasisState::srr)) d += v_dd;
    c.diagonal[i] = d;
  }
  c.half_omega_a = drive_a.omega / 2.0;
  c.half_omega_b = drive_b.omega / 2.0;
  return c;
}

Operator9 TwoAtomCoefficients::dense() const {
  Operator9 h = Operator9::Zero();
  const Operator9 identity = Operator9::Identity();
  apply(identity, h);
  return h;
}

Operator9 build_two_atom_hamiltonian(const AtomDrive& drive_a, const AtomDrive& drive_b,
                                     const PhysicsParams& physics) {
  physics.validate();
  const Matrix3c ha = build_single_hamiltonian(drive_a, physics.gamma_r);
  const Matrix3c hb = build_single_hamiltonian(drive_b, physics.gamma_r);
  Operator9 h = Operator9::Zero();
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int a2 = 0; a2 < 3; ++a2) {
        for (int b2 = 0; b2 < 3; ++b2) {
          Complex v = 0.0;
          if (b == b2) v += ha(a, a2);
          if (a == a2) v += hb(b, b2);
          h(3 * a + b, 3 * a2 + b2) = v;
        }
      }
    }
  }
  h(index_of(BasisState::srr), index_of(BasisState::srr)) += physics.v_dd;
  return h;
}

}  // namespace dressgate
