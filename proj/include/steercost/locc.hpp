#pragma once

// One-way LOCC from Bob (trusted) to Alice (black box): Bob applies a Kraus
// operator K_w, announces w, and Alice rewires her box with a w-dependent
// classical pre/post-processing.
//
//   sigma'_{a'|x'} = sum_{a,x} p(x|x') p(a'|x',a,x) K sigma_{a|x} K^dagger

#include <array>
#include <string>
#include <vector>

#include "steercost/box.hpp"
#include "steercost/cmatrix.hpp"
#include "steercost/quantum.hpp"
#include "steercost/steering.hpp"

namespace steercost {

struct Wiring {
  // pre[x'][x] = p(x|x')
  std::array<std::array<double, 2>, 2> pre{};
  // post[x'][a][x][a'] = p(a'|x',a,x)
  std::array<std::array<std::array<std::array<double, 2>, 2>, 2>, 2> post{};

  // Throws StochasticityViolation naming the offending conditional.
  void validate(double tolerance = kBoxTolerance) const;

  static Wiring identity();
  // x = x' xor 1
  static Wiring swap_inputs();
  // a' = 0 whatever happened; Alice effectively has no input.
  static Wiring coarse_grain();
  // a' = a xor 1
  static Wiring flip_outcomes();
};

struct Subchannel {
  int label = 0;
  CMatrix kraus = CMatrix::identity(2);
  Wiring wiring = Wiring::identity();
};

using Channel = std::vector<Subchannel>;

// Every Kraus operator 2x2, every wiring stochastic, and
// 1 - sum K^dagger K positive semidefinite. Throws InvalidOperator,
// DimensionMismatch or StochasticityViolation.
void validate_channel(const Channel& channel, double tolerance = kQuantumTolerance);
bool is_trace_preserving(const Channel& channel, double tolerance = kQuantumTolerance);

Assemblage apply_wiring_assemblage(const Wiring& wiring, const Assemblage& assemblage);

struct SubchannelOutput {
  Assemblage::Elements sigma;  // unnormalized, [x'][a']
  double transmission = 0.0;   // T = Tr sum_a' sigma_{a'|0}
  bool empty = false;          // T <= kQuantumTolerance
};

SubchannelOutput apply_subchannel(const Subchannel& subchannel, const Assemblage& assemblage);

// Box of the normalized post-subchannel assemblage,
// p(a'b|x'y) = Tr[Pi_{b|y} sigma'_{a'|x'}] / T. Throws ZeroTransmission when
// T <= kQuantumTolerance.
Box normalized_box_after(const Subchannel& subchannel, const Assemblage& assemblage, const MeasurementSet& bob);

struct MonotonicityReport {
  double before = 0.0;
  double average_after = 0.0;  // sum_w T(w) C(box after w)
  std::vector<double> transmissions;
  std::vector<double> costs_after;  // 0 for subchannels that transmit nothing
  double tolerance = 0.0;
  bool pass = false;
};

inline constexpr double kMonotonicityTolerance = 5e-3;

// Checks that the numeric steering cost does not increase on average.
// Validates the channel first.
MonotonicityReport monotonicity_harness(const Assemblage& assemblage, const Channel& channel,
                                        const MeasurementSet& bob, int grid_n = kDefaultGrid,
                                        double tolerance = kMonotonicityTolerance);

// identity, swap-inputs, coarse-grain, flip-outcomes, dephase-B0, dephase-B1,
// project-f1, project-g1, hadamard, amplitude-damping, pauli-noise,
// conditional-swap, noisy-wiring. B0/B1 and f1/g1 refer to the standard MUB
// pair.
std::vector<std::string> channel_preset_names();
// Throws UnknownPreset.
Channel channel_preset(const std::string& name);

}  // namespace steercost
