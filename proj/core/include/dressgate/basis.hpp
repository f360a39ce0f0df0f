#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace dressgate {

enum class Level : int { zero = 0, one = 1, rydberg = 2 };

// Two-atom basis state |ab>, index 3*a + b. The order is fixed and shared by
// every operator, state vector and serialized output.
enum class BasisState : int {
  s00 = 0,
  s01,
  s0r,
  s10,
  s11,
  s1r,
  sr0,
  sr1,
  srr,
};

inline constexpr int kTwoAtomDim = 9;

inline constexpr std::array<std::string_view, kTwoAtomDim> kBasisLabels = {
    "00", "01", "0r", "10", "11", "1r", "r0", "r1", "rr"};

// Computational states in logical order {00, 01, 10, 11}.
inline constexpr std::array<BasisState, 4> kLogicalStates = {
    BasisState::s00, BasisState::s01, BasisState::s10, BasisState::s11};

constexpr int index_of(BasisState s) { return static_cast<int>(s); }

constexpr int index_of(Level a, Level b) {
  return 3 * static_cast<int>(a) + static_cast<int>(b);
}

constexpr Level level_of_atom_a(int index) { return static_cast<Level>(index / 3); }
constexpr Level level_of_atom_b(int index) { return static_cast<Level>(index % 3); }

constexpr int rydberg_count(int index) {
  return (level_of_atom_a(index) == Level::rydberg ? 1 : 0) +
         (level_of_atom_b(index) == Level::rydberg ? 1 : 0);
}

constexpr std::string_view label_of(BasisState s) { return kBasisLabels[index_of(s)]; }

inline std::optional<BasisState> parse_basis_label(std::string_view label) {
  for (int i = 0; i < kTwoAtomDim; ++i) {
    if (kBasisLabels[i] == label) return static_cast<BasisState>(i);
  }
  return std::nullopt;
}

// Position of a computational state in the 4-dim logical order, or -1.
constexpr int logical_position(BasisState s) {
  for (int i = 0; i < 4; ++i) {
    if (kLogicalStates[i] == s) return i;
  }
  return -1;
}

}  // namespace dressgate
