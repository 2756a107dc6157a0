#include "steercost/quantum.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "steercost/errors.hpp"

namespace steercost {

namespace {

void require_unit_interval(double V, const char* what) {
  if (!(V >= 0.0 && V <= 1.0)) {
    std::ostringstream os;
    os << what << ": V = " << V << " is outside [0,1]";
    throw OutOfRange(os.str());
  }
}

void require_psd(const CMatrix& m, double tolerance, const std::string& what) {
  const double h = hermiticity_defect(m);
  if (h > tolerance) {
    std::ostringstream os;
    os << what << " is not Hermitian (defect " << h << ")";
    throw InvalidOperator(os.str());
  }
  const double lo = min_eigenvalue(m);
  if (lo < -tolerance) {
    std::ostringstream os;
    os << what << " has negative eigenvalue " << lo;
    throw InvalidOperator(os.str());
  }
}

}  // namespace

State State::from_matrix(const CMatrix& rho, double tolerance) {
  if (rho.dim() != 2 && rho.dim() != 4) {
    throw DimensionMismatch("states must be 2x2 or 4x4, got dimension " + std::to_string(rho.dim()));
  }
  if (!rho.is_finite()) throw InvalidOperator("density matrix has non-finite entries");
  require_psd(rho, tolerance, "density matrix");
  const Complex t = rho.trace();
  if (std::abs(t - Complex(1.0)) > tolerance) {
    std::ostringstream os;
    os << "density matrix has trace " << t.real() << ", expected 1";
    throw InvalidOperator(os.str());
  }
  return State(rho);
}

Ket singlet() {
  const double s = 1.0 / std::sqrt(2.0);
  return {0.0, s, -s, 0.0};
}

State werner_state(double V) {
  require_unit_interval(V, "werner_state");
  return State::from_matrix(V * projector(singlet()) + (1.0 - V) / 4.0 * CMatrix::identity(4));
}

State colored_noise_state(double V) {
  require_unit_interval(V, "colored_noise_state");
  CMatrix noise(4);
  noise(1, 1) = 0.5;
  noise(2, 2) = 0.5;
  return State::from_matrix(V * projector(singlet()) + (1.0 - V) * noise);
}

bool ppt_entangled(const State& state, double tolerance) {
  return min_eigenvalue(partial_transpose_B(state.matrix())) < -tolerance;
}

MeasurementSet MeasurementSet::from_effects(std::vector<std::vector<CMatrix>> effects, bool projective,
                                            double tolerance) {
  if (effects.empty() || effects.front().empty()) throw DimensionMismatch("measurement set has no effects");
  const std::size_t d = effects.front().front().dim();
  for (std::size_t x = 0; x < effects.size(); ++x) {
    if (effects[x].empty()) throw DimensionMismatch("setting " + std::to_string(x) + " has no outcomes");
    CMatrix total(d);
    for (std::size_t o = 0; o < effects[x].size(); ++o) {
      const CMatrix& e = effects[x][o];
      const std::string name = "effect (x=" + std::to_string(x) + ", outcome=" + std::to_string(o) + ")";
      if (e.dim() != d) throw DimensionMismatch(name + " has a different dimension");
      if (!e.is_finite()) throw InvalidOperator(name + " has non-finite entries");
      require_psd(e, tolerance, name);
      if (projective && max_abs_difference(e * e, e) > tolerance) {
        throw InvalidOperator(name + " is not a projector");
      }
      total += e;
    }
    const double defect = max_abs_difference(total, CMatrix::identity(d));
    if (defect > tolerance) {
      std::ostringstream os;
      os << "effects of setting " << x << " do not sum to the identity (defect " << defect << ")";
      throw InvalidOperator(os.str());
    }
  }
  return MeasurementSet(std::move(effects), projective);
}

MubPair MubPair::from_bases(const std::array<Ket, 2>& f, const std::array<Ket, 2>& g, double tolerance) {
  for (const auto* basis : {&f, &g})
    for (int i = 0; i < 2; ++i) {
      if ((*basis)[i].size() != 2) throw DimensionMismatch("MUB vectors must be qubit kets");
      for (int j = 0; j < 2; ++j) {
        const double expected = i == j ? 1.0 : 0.0;
        if (std::abs(inner((*basis)[i], (*basis)[j]) - Complex(expected)) > tolerance) {
          throw InvalidOperator("MUB basis is not orthonormal");
        }
      }
    }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double overlap = std::norm(inner(f[i], g[j]));
      if (std::abs(overlap - 0.5) > tolerance) {
        std::ostringstream os;
        os << "|<f" << i + 1 << "|g" << j + 1 << ">|^2 = " << overlap << ", expected 1/2";
        throw InvalidOperator(os.str());
      }
    }
  return MubPair(f, g);
}

MubPair mub_pair_standard() {
  const double s = 1.0 / std::sqrt(2.0);
  return MubPair::from_bases({Ket{1.0, 0.0}, Ket{0.0, 1.0}}, {Ket{s, s}, Ket{s, -s}});
}

MubPair mub_pair_rotated(double angle) {
  if (!std::isfinite(angle)) throw OutOfRange("rotation angle must be finite");
  const double n = 1.0 / std::sqrt(3.0);
  const CMatrix generator = n * (pauli_x() + pauli_y() + pauli_z());
  const CMatrix u = std::cos(angle) * CMatrix::identity(2) - Complex(0.0, std::sin(angle)) * generator;
  const MubPair base = mub_pair_standard();
  return MubPair::from_bases({apply_operator(u, base.f(0)), apply_operator(u, base.f(1))},
                             {apply_operator(u, base.g(0)), apply_operator(u, base.g(1))});
}

MeasurementSet bob_measurements(const MubPair& pair) {
  return MeasurementSet::from_effects({{projector(pair.f(0)), projector(pair.f(1))},
                                       {projector(pair.g(0)), projector(pair.g(1))}},
                                      true);
}

MeasurementSet bb84_alice_measurements() {
  const CMatrix id = CMatrix::identity(2);
  return MeasurementSet::from_effects({{0.5 * (id - pauli_z()), 0.5 * (id + pauli_z())},
                                       {0.5 * (id + pauli_x()), 0.5 * (id - pauli_x())}},
                                      true);
}

Assemblage Assemblage::from_elements(const Elements& sigma, double tolerance) {
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      const std::string name = "sigma_{" + std::to_string(a) + "|" + std::to_string(x) + "}";
      if (sigma[x][a].dim() != 2) throw DimensionMismatch(name + " is not 2x2");
      if (!sigma[x][a].is_finite()) throw InvalidOperator(name + " has non-finite entries");
      require_psd(sigma[x][a], tolerance, name);
    }
  const CMatrix r0 = sigma[0][0] + sigma[0][1];
  const CMatrix r1 = sigma[1][0] + sigma[1][1];
  const double gap = max_abs_difference(r0, r1);
  if (gap > tolerance) {
    std::ostringstream os;
    os << "sum_a sigma_{a|0} and sum_a sigma_{a|1} differ by " << gap;
    throw SignalingDetected(os.str());
  }
  const double t = r0.trace().real();
  if (std::abs(t - 1.0) > tolerance) {
    std::ostringstream os;
    os << "assemblage has total trace " << t << ", expected 1";
    throw InvalidOperator(os.str());
  }
  return Assemblage(sigma);
}

CMatrix Assemblage::reduced_state() const { return sigma_[0][0] + sigma_[0][1]; }

namespace {

void require_dichotomic_qubit(const MeasurementSet& m, const char* who) {
  if (m.dim() != 2 || m.settings() != 2 || m.outcomes(0) != 2 || m.outcomes(1) != 2) {
    throw DimensionMismatch(std::string(who) + " needs two dichotomic qubit measurements");
  }
}

}  // namespace

Assemblage assemblage_from(const State& state, const MeasurementSet& alice) {
  if (state.dim() != 4) throw DimensionMismatch("assemblage_from needs a two-qubit state");
  require_dichotomic_qubit(alice, "Alice");
  const CMatrix id = CMatrix::identity(2);
  Assemblage::Elements sigma;
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      CMatrix s = partial_trace_A(tensor(alice.effect(x, a), id) * state.matrix());
      // Equal to Tr_A[(sqrt(M) (x) 1) rho (sqrt(M) (x) 1)], hence Hermitian;
      // drop the rounding-level anti-Hermitian part.
      sigma[x][a] = 0.5 * (s + s.adjoint());
    }
  return Assemblage::from_elements(sigma);
}

Box box_from(const Assemblage& assemblage, const MeasurementSet& bob) {
  require_dichotomic_qubit(bob, "Bob");
  Box::Table table{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          table[Box::index(a, b, x, y)] = (bob.effect(y, b) * assemblage.sigma(a, x)).trace().real();
  return Box::from_table(table);
}

Box joint_box(const State& state, const MeasurementSet& alice, const MeasurementSet& bob) {
  if (state.dim() != 4) throw DimensionMismatch("joint_box needs a two-qubit state");
  require_dichotomic_qubit(alice, "Alice");
  require_dichotomic_qubit(bob, "Bob");
  Box::Table table{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          table[Box::index(a, b, x, y)] =
              (tensor(alice.effect(x, a), bob.effect(y, b)) * state.matrix()).trace().real();
  return Box::from_table(table);
}

}  // namespace steercost
