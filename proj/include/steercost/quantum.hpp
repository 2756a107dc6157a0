#pragma once

// Two-qubit states, qubit measurements and assemblages sigma_{a|x}, plus the
// box they generate: p(ab|xy) = Tr[Pi_{b|y} sigma_{a|x}].
//
// Alice's system is a qubit (d = 2). Tensor order is A (x) B throughout.

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "steercost/box.hpp"
#include "steercost/cmatrix.hpp"

namespace steercost {

inline constexpr double kQuantumTolerance = 1e-10;

// Density matrix: Hermitian, unit trace, PSD (min eigenvalue >= -tolerance).
class State {
 public:
  // Throws DimensionMismatch (d not 2 or 4) or InvalidOperator.
  static State from_matrix(const CMatrix& rho, double tolerance = kQuantumTolerance);

  const CMatrix& matrix() const { return rho_; }
  std::size_t dim() const { return rho_.dim(); }

 private:
  explicit State(CMatrix rho) : rho_(std::move(rho)) {}
  CMatrix rho_;
};

// |Psi^-> = (|01> - |10>)/sqrt(2)
Ket singlet();

// V |Psi^-><Psi^-| + (1 - V) 1/4. Throws OutOfRange for V outside [0,1].
State werner_state(double V);
// V |Psi^-><Psi^-| + (1 - V)(|01><01| + |10><10|)/2.
State colored_noise_state(double V);

// Partial transpose on B has an eigenvalue below -tolerance. Necessary and
// sufficient for entanglement of two qubits.
bool ppt_entangled(const State& state, double tolerance = kQuantumTolerance);

// effects[x][o]: one list of effects per setting.
class MeasurementSet {
 public:
  // Each effect Hermitian and PSD, effects of a setting summing to identity,
  // and idempotent when projective is set. Throws InvalidOperator or
  // DimensionMismatch.
  static MeasurementSet from_effects(std::vector<std::vector<CMatrix>> effects, bool projective,
                                     double tolerance = kQuantumTolerance);

  std::size_t settings() const { return effects_.size(); }
  std::size_t outcomes(std::size_t x) const { return effects_[x].size(); }
  const CMatrix& effect(std::size_t x, std::size_t outcome) const { return effects_[x][outcome]; }
  std::size_t dim() const { return effects_.front().front().dim(); }
  bool projective() const { return projective_; }

 private:
  MeasurementSet(std::vector<std::vector<CMatrix>> effects, bool projective)
      : effects_(std::move(effects)), projective_(projective) {}
  std::vector<std::vector<CMatrix>> effects_;
  bool projective_ = false;
};

// Two orthonormal qubit bases {f1,f2}, {g1,g2} with |<f_i|g_j>|^2 = 1/2.
class MubPair {
 public:
  // Throws InvalidOperator when either basis is not orthonormal or the pair
  // is not mutually unbiased.
  static MubPair from_bases(const std::array<Ket, 2>& f, const std::array<Ket, 2>& g,
                            double tolerance = kQuantumTolerance);

  const Ket& f(int i) const { return f_[i]; }
  const Ket& g(int j) const { return g_[j]; }

 private:
  MubPair(std::array<Ket, 2> f, std::array<Ket, 2> g) : f_(std::move(f)), g_(std::move(g)) {}
  std::array<Ket, 2> f_;
  std::array<Ket, 2> g_;
};

// sigma_z eigenbasis {|0>,|1>} and sigma_x eigenbasis {|+>,|->}.
MubPair mub_pair_standard();
// Standard pair rotated by exp(-i angle n.sigma), n = (1,1,1)/sqrt(3).
MubPair mub_pair_rotated(double angle);

// Bob measures B_0 for y = 0 and B_1 for y = 1; outcome b picks the (b+1)-th
// basis vector.
MeasurementSet bob_measurements(const MubPair& pair);

// Alice: x = 0 gives {(1 - sigma_z)/2, (1 + sigma_z)/2}, x = 1 gives
// {(1 + sigma_x)/2, (1 - sigma_x)/2}. With bob_measurements(standard) these
// turn the Werner state into the BB84 box and the colored state into its
// colored-noise counterpart.
MeasurementSet bb84_alice_measurements();

class Assemblage {
 public:
  using Elements = std::array<std::array<CMatrix, 2>, 2>;  // [x][a]

  // Checks qubit dimension, Hermiticity, PSD, consistency sum_a sigma_{a|0} =
  // sum_a sigma_{a|1}, and unit total trace. Throws InvalidOperator,
  // SignalingDetected or DimensionMismatch.
  static Assemblage from_elements(const Elements& sigma, double tolerance = kQuantumTolerance);

  const CMatrix& sigma(int a, int x) const { return sigma_[x][a]; }
  const Elements& elements() const { return sigma_; }
  // Bob's reduced state sum_a sigma_{a|x}.
  CMatrix reduced_state() const;

 private:
  explicit Assemblage(const Elements& sigma) : sigma_(sigma) {}
  Elements sigma_;
};

// sigma_{a|x} = Tr_A[(M_{a|x} (x) 1) rho]. Alice needs two dichotomic
// settings on a qubit.
Assemblage assemblage_from(const State& state, const MeasurementSet& alice);

// p(ab|xy) = Tr[Pi_{b|y} sigma_{a|x}]; Bob needs two dichotomic settings.
Box box_from(const Assemblage& assemblage, const MeasurementSet& bob);

// Direct Tr[(M_{a|x} (x) Pi_{b|y}) rho], bypassing the assemblage.
Box joint_box(const State& state, const MeasurementSet& alice, const MeasurementSet& bob);

}  // namespace steercost
