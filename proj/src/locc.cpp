#include "steercost/locc.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "steercost/errors.hpp"

namespace steercost {

namespace {

void require_distribution(double p0, double p1, double tolerance, const std::string& what) {
  for (double p : {p0, p1}) {
    if (!std::isfinite(p) || p < -tolerance) {
      std::ostringstream os;
      os << what << " has entry " << p;
      throw StochasticityViolation(os.str());
    }
  }
  if (std::abs(p0 + p1 - 1.0) > tolerance) {
    std::ostringstream os;
    os << what << " sums to " << p0 + p1 << ", expected 1";
    throw StochasticityViolation(os.str());
  }
}

Wiring deterministic_wiring(int swap, int flip, bool constant_output) {
  Wiring w;
  for (int xp = 0; xp < 2; ++xp) {
    w.pre[xp][xp ^ swap] = 1.0;
    for (int a = 0; a < 2; ++a)
      for (int x = 0; x < 2; ++x) w.post[xp][a][x][constant_output ? 0 : (a ^ flip)] = 1.0;
  }
  return w;
}

}  // namespace

void Wiring::validate(double tolerance) const {
  for (int xp = 0; xp < 2; ++xp) {
    require_distribution(pre[xp][0], pre[xp][1], tolerance, "p(x|x'=" + std::to_string(xp) + ")");
    for (int a = 0; a < 2; ++a)
      for (int x = 0; x < 2; ++x) {
        const auto& d = post[xp][a][x];
        require_distribution(d[0], d[1], tolerance,
                             "p(a'|x'=" + std::to_string(xp) + ",a=" + std::to_string(a) + ",x=" + std::to_string(x) + ")");
      }
  }
}

Wiring Wiring::identity() { return deterministic_wiring(0, 0, false); }
Wiring Wiring::swap_inputs() { return deterministic_wiring(1, 0, false); }
Wiring Wiring::coarse_grain() { return deterministic_wiring(0, 0, true); }
Wiring Wiring::flip_outcomes() { return deterministic_wiring(0, 1, false); }

void validate_channel(const Channel& channel, double tolerance) {
  if (channel.empty()) throw InvalidOperator("channel has no subchannels");
  CMatrix total(2);
  for (const auto& s : channel) {
    if (s.kraus.dim() != 2) throw DimensionMismatch("Kraus operator of subchannel " + std::to_string(s.label) + " is not 2x2");
    if (!s.kraus.is_finite()) throw InvalidOperator("Kraus operator of subchannel " + std::to_string(s.label) + " is not finite");
    s.wiring.validate();
    total += s.kraus.adjoint() * s.kraus;
  }
  const double lo = min_eigenvalue(CMatrix::identity(2) - total);
  if (lo < -tolerance) {
    std::ostringstream os;
    os << "sum of K^dagger K exceeds the identity (1 - sum has eigenvalue " << lo << ")";
    throw InvalidOperator(os.str());
  }
}

bool is_trace_preserving(const Channel& channel, double tolerance) {
  CMatrix total(2);
  for (const auto& s : channel) total += s.kraus.adjoint() * s.kraus;
  return max_abs_difference(total, CMatrix::identity(2)) <= tolerance;
}

namespace {

Assemblage::Elements wire(const Wiring& w, const Assemblage& assemblage) {
  Assemblage::Elements out;
  for (int xp = 0; xp < 2; ++xp)
    for (int ap = 0; ap < 2; ++ap) {
      CMatrix s(2);
      for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a) {
          const double weight = w.pre[xp][x] * w.post[xp][a][x][ap];
          if (weight != 0.0) s += weight * assemblage.sigma(a, x);
        }
      out[xp][ap] = s;
    }
  return out;
}

}  // namespace

Assemblage apply_wiring_assemblage(const Wiring& wiring, const Assemblage& assemblage) {
  wiring.validate();
  return Assemblage::from_elements(wire(wiring, assemblage));
}

SubchannelOutput apply_subchannel(const Subchannel& subchannel, const Assemblage& assemblage) {
  if (subchannel.kraus.dim() != 2) throw DimensionMismatch("Kraus operator must be 2x2");
  subchannel.wiring.validate();
  const auto wired = wire(subchannel.wiring, assemblage);
  const CMatrix k_dag = subchannel.kraus.adjoint();
  SubchannelOutput out;
  for (int xp = 0; xp < 2; ++xp)
    for (int ap = 0; ap < 2; ++ap) out.sigma[xp][ap] = subchannel.kraus * wired[xp][ap] * k_dag;
  out.transmission = (out.sigma[0][0] + out.sigma[0][1]).trace().real();
  out.empty = out.transmission <= kQuantumTolerance;
  return out;
}

Box normalized_box_after(const Subchannel& subchannel, const Assemblage& assemblage, const MeasurementSet& bob) {
  const auto out = apply_subchannel(subchannel, assemblage);
  if (out.empty) {
    std::ostringstream os;
    os << "subchannel " << subchannel.label << " transmits with probability " << out.transmission
       << "; the conditional box is undefined";
    throw ZeroTransmission(os.str());
  }
  Assemblage::Elements normalized;
  for (int xp = 0; xp < 2; ++xp)
    for (int ap = 0; ap < 2; ++ap) {
      const CMatrix& s = out.sigma[xp][ap];
      normalized[xp][ap] = (1.0 / out.transmission) * (0.5 * (s + s.adjoint()));
    }
  return box_from(Assemblage::from_elements(normalized, 1e-9), bob);
}

MonotonicityReport monotonicity_harness(const Assemblage& assemblage, const Channel& channel,
                                        const MeasurementSet& bob, int grid_n, double tolerance) {
  validate_channel(channel);
  MonotonicityReport r;
  r.tolerance = tolerance;
  r.before = steering_cost_numeric(box_from(assemblage, bob), grid_n);
  for (const auto& s : channel) {
    const auto out = apply_subchannel(s, assemblage);
    r.transmissions.push_back(out.transmission);
    if (out.empty) {
      r.costs_after.push_back(0.0);
      continue;
    }
    const double c = steering_cost_numeric(normalized_box_after(s, assemblage, bob), grid_n);
    r.costs_after.push_back(c);
    r.average_after += out.transmission * c;
  }
  r.pass = r.average_after <= r.before + tolerance;
  return r;
}

std::vector<std::string> channel_preset_names() {
  return {"identity",   "swap-inputs", "coarse-grain", "flip-outcomes",     "dephase-B0",       "dephase-B1",
          "project-f1", "project-g1",  "hadamard",     "amplitude-damping", "pauli-noise",      "conditional-swap",
          "noisy-wiring"};
}

Channel channel_preset(const std::string& name) {
  const MubPair mub = mub_pair_standard();
  auto single = [](CMatrix k, Wiring w) { return Channel{Subchannel{0, std::move(k), w}}; };
  auto pair_of = [](CMatrix k0, CMatrix k1, Wiring w0, Wiring w1) {
    return Channel{Subchannel{0, std::move(k0), w0}, Subchannel{1, std::move(k1), w1}};
  };
  const CMatrix id = CMatrix::identity(2);

  if (name == "identity") return single(id, Wiring::identity());
  if (name == "swap-inputs") return single(id, Wiring::swap_inputs());
  if (name == "coarse-grain") return single(id, Wiring::coarse_grain());
  if (name == "flip-outcomes") return single(id, Wiring::flip_outcomes());
  if (name == "dephase-B0")
    return pair_of(projector(mub.f(0)), projector(mub.f(1)), Wiring::identity(), Wiring::identity());
  if (name == "dephase-B1")
    return pair_of(projector(mub.g(0)), projector(mub.g(1)), Wiring::identity(), Wiring::identity());
  if (name == "project-f1") return single(projector(mub.f(0)), Wiring::identity());
  if (name == "project-g1") return single(projector(mub.g(0)), Wiring::identity());
  if (name == "hadamard") return single((1.0 / std::numbers::sqrt2) * (pauli_x() + pauli_z()), Wiring::identity());
  if (name == "amplitude-damping") {
    const double gamma = 0.3;
    CMatrix k0 = {1.0, 0.0, 0.0, std::sqrt(1.0 - gamma)};
    CMatrix k1 = {0.0, std::sqrt(gamma), 0.0, 0.0};
    return pair_of(std::move(k0), std::move(k1), Wiring::identity(), Wiring::identity());
  }
  if (name == "pauli-noise") {
    const double p = 0.2;
    return Channel{Subchannel{0, std::sqrt(1.0 - 3.0 * p / 4.0) * id, Wiring::identity()},
                   Subchannel{1, std::sqrt(p / 4.0) * pauli_x(), Wiring::identity()},
                   Subchannel{2, std::sqrt(p / 4.0) * pauli_y(), Wiring::identity()},
                   Subchannel{3, std::sqrt(p / 4.0) * pauli_z(), Wiring::identity()}};
  }
  if (name == "conditional-swap") {
    // Bob measures B0 and tells Alice; she swaps her inputs on outcome f2.
    return pair_of(projector(mub.f(0)), projector(mub.f(1)), Wiring::identity(), Wiring::swap_inputs());
  }
  if (name == "noisy-wiring") {
    Wiring w;
    for (int xp = 0; xp < 2; ++xp) {
      w.pre[xp][xp] = 0.7;
      w.pre[xp][xp ^ 1] = 0.3;
      for (int a = 0; a < 2; ++a)
        for (int x = 0; x < 2; ++x) {
          w.post[xp][a][x][a] = 0.8;
          w.post[xp][a][x][a ^ 1] = 0.2;
        }
    }
    return single(id, w);
  }
  throw UnknownPreset("unknown channel preset '" + name + "'");
}

}  // namespace steercost
