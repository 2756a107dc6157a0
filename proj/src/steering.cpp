#include "steercost/steering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "steercost/errors.hpp"

namespace steercost {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

void require_unit_interval(double V, const char* what) {
  if (!(V >= 0.0 && V <= 1.0)) {
    std::ostringstream os;
    os << what << ": V = " << V << " is outside [0,1]";
    throw OutOfRange(os.str());
  }
}

// Box with uniform marginals and the given correlators E[x][y].
Box box_from_correlators(const std::array<std::array<double, 2>, 2>& e) {
  Box::Table table{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) table[Box::index(a, b, x, y)] = (1.0 + ((a ^ b) ? -1.0 : 1.0) * e[x][y]) / 4.0;
  return Box::from_table(table);
}

int alice_output(int alpha, int beta, int x) { return (alpha * x) ^ beta; }

Box::Table product_table(int alpha, int beta, const BobStrategy& bob) {
  Box::Table table{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int b = 0; b < 2; ++b) table[Box::index(alice_output(alpha, beta, x), b, x, y)] = bob(b, y);
  return table;
}

void require_grid(int grid_n) {
  if (grid_n < 8) throw OutOfRange("grid_n must be at least 8, got " + std::to_string(grid_n));
}

LhvComponent make_component(int alpha, int beta, double weight, const BobStrategy& bob) {
  LhvComponent c;
  c.alpha = alpha;
  c.beta = beta;
  c.weight = weight;
  c.bob = bob;
  c.realizable = mub_realizable(bob);
  if (c.realizable) c.state = find_pure_state(bob);
  return c;
}

LhvLhsModel four_strategy_model(const std::array<std::array<double, 2>, 4>& bob_correlators) {
  LhvLhsModel model;
  for (int lambda = 0; lambda < 4; ++lambda) {
    const auto& e = bob_correlators[lambda];
    model.components.push_back(
        make_component(lambda >> 1, lambda & 1, 0.25, BobStrategy::from_correlators(e[0], e[1])));
  }
  return model;
}

}  // namespace

double steering_functional(const Box& box) {
  const auto e = correlators(box).joint;
  return std::hypot(e[0][0] + e[1][0], e[0][1] + e[1][1]) + std::hypot(e[0][0] - e[1][0], e[0][1] - e[1][1]);
}

bool is_steerable(const Box& box, double tolerance) { return steering_functional(box) > 2.0 + tolerance; }

Box bb84_box(double V) {
  require_unit_interval(V, "bb84_box");
  return box_from_correlators({{{V, 0.0}, {0.0, -V}}});
}

Box colored_bb84_box(double V) {
  require_unit_interval(V, "colored_bb84_box");
  return box_from_correlators({{{1.0, 0.0}, {0.0, -V}}});
}

Box extremal_steerable_box() { return bb84_box(1.0); }

Box colored_unsteerable_box() { return box_from_correlators({{{1.0, 0.0}, {0.0, 0.0}}}); }

const char* to_string(Family family) { return family == Family::White ? "white" : "colored"; }

Family parse_family(const std::string& name) {
  if (name == "white") return Family::White;
  if (name == "colored") return Family::Colored;
  throw OutOfRange("unknown family '" + name + "' (expected white or colored)");
}

Box family_box(Family family, double V) { return family == Family::White ? bb84_box(V) : colored_bb84_box(V); }

Box family_noise_box(Family family) {
  return family == Family::White ? uniform_box() : colored_unsteerable_box();
}

State family_state(Family family, double V) {
  return family == Family::White ? werner_state(V) : colored_noise_state(V);
}

Assemblage family_assemblage(Family family, double V) {
  return assemblage_from(family_state(family, V), bb84_alice_measurements());
}

BobStrategy BobStrategy::from_table(const Table& p) {
  for (int y = 0; y < 2; ++y) {
    for (int b = 0; b < 2; ++b) {
      if (!std::isfinite(p[y][b]) || p[y][b] < -kBoxTolerance) {
        std::ostringstream os;
        os << "P(b=" << b << "|y=" << y << ") = " << p[y][b] << " is negative or not finite";
        throw NegativeEntry(os.str());
      }
    }
    if (std::abs(p[y][0] + p[y][1] - 1.0) > kBoxTolerance) {
      std::ostringstream os;
      os << "sum_b P(b|y=" << y << ") = " << p[y][0] + p[y][1] << ", expected 1";
      throw NotNormalized(os.str());
    }
  }
  return BobStrategy(p);
}

BobStrategy BobStrategy::from_correlators(double e0, double e1) {
  for (double e : {e0, e1}) {
    if (!(std::abs(e) <= 1.0 + kBoxTolerance)) {
      std::ostringstream os;
      os << "Bob correlator " << e << " is outside [-1,1]";
      throw OutOfRange(os.str());
    }
  }
  return BobStrategy({{{(1.0 + e0) / 2.0, (1.0 - e0) / 2.0}, {(1.0 + e1) / 2.0, (1.0 - e1) / 2.0}}});
}

bool mub_realizable(const BobStrategy& s, double tolerance) {
  const double e0 = s.correlator(0);
  const double e1 = s.correlator(1);
  return e0 * e0 + e1 * e1 <= 1.0 + tolerance;
}

PureState find_pure_state(const BobStrategy& s, double tolerance) {
  if (!mub_realizable(s, tolerance)) {
    std::ostringstream os;
    os << "Bob strategy with correlators (" << s.correlator(0) << ", " << s.correlator(1)
       << ") lies outside the Bloch circle; no pure qubit state reproduces it";
    throw NotRealizable(os.str());
  }
  const double e0 = std::clamp(s.correlator(0), -1.0, 1.0);
  PureState out;
  out.r1 = std::sqrt((1.0 + e0) / 2.0);
  out.r2 = std::sqrt((1.0 - e0) / 2.0);
  const double rr = out.r1 * out.r2;
  out.cos_phi = rr > 0.0 ? std::clamp(s.correlator(1) / (2.0 * rr), -1.0, 1.0) : 0.0;
  return out;
}

BobStrategy strategy_of(const PureState& state) {
  const double e0 = state.r1 * state.r1 - state.r2 * state.r2;
  const double e1 = 2.0 * state.r1 * state.r2 * state.cos_phi;
  return BobStrategy::from_correlators(e0, e1);
}

Ket ket_for(const PureState& state, const MubPair& pair) {
  // With c_i = <g1|f_i>, |<g1|psi>|^2 = 1/2 + r1 r2 cos(phi + arg(c2/c1)).
  const Complex c1 = inner(pair.g(0), pair.f(0));
  const Complex c2 = inner(pair.g(0), pair.f(1));
  const double phi = std::acos(std::clamp(state.cos_phi, -1.0, 1.0)) - std::arg(c2 / c1);
  const Complex phase = std::polar(1.0, phi);
  Ket psi(2);
  for (int i = 0; i < 2; ++i) psi[i] = state.r1 * pair.f(0)[i] + phase * state.r2 * pair.f(1)[i];
  return psi;
}

bool LhvLhsModel::realizable() const {
  return std::all_of(components.begin(), components.end(), [](const LhvComponent& c) { return c.realizable; });
}

double LhvLhsModel::total_weight() const {
  double total = 0.0;
  for (const auto& c : components) total += c.weight;
  return total;
}

Box::Table LhvLhsModel::reconstruct() const {
  Box::Table table{};
  for (const auto& c : components) {
    const BobStrategy bob = c.state ? strategy_of(*c.state) : c.bob;
    const auto part = product_table(c.alpha, c.beta, bob);
    for (std::size_t i = 0; i < Box::kSize; ++i) table[i] += c.weight * part[i];
  }
  return table;
}

Box::Table LhvLhsModel::reconstruct_quantum(const MubPair& pair) const {
  if (!realizable()) throw NotRealizable("model has Bob strategies without a pure-state realization");
  const MeasurementSet bob = bob_measurements(pair);
  Box::Table table{};
  for (const auto& c : components) {
    const CMatrix rho = projector(ket_for(*c.state, pair));
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int b = 0; b < 2; ++b)
          table[Box::index(alice_output(c.alpha, c.beta, x), b, x, y)] +=
              c.weight * (bob.effect(y, b) * rho).trace().real();
  }
  return table;
}

double LhvLhsModel::residual(const Box& box) const {
  const auto table = reconstruct();
  double worst = 0.0;
  for (std::size_t i = 0; i < Box::kSize; ++i) worst = std::max(worst, std::abs(table[i] - box[i]));
  return worst;
}

LhvLhsModel bb84_lhv_model(double V) {
  require_unit_interval(V, "bb84_lhv_model");
  return four_strategy_model({{{V, -V}, {-V, V}, {V, V}, {-V, -V}}});
}

LhvLhsModel colored_bb84_lhv_model(double V) {
  require_unit_interval(V, "colored_bb84_lhv_model");
  return four_strategy_model({{{1.0, -V}, {-1.0, V}, {1.0, V}, {-1.0, -V}}});
}

LhvLhsModel colored_unsteerable_model() {
  return four_strategy_model({{{1.0, 0.0}, {-1.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}}});
}

std::vector<GridGenerator> grid_generators(int grid_n) {
  require_grid(grid_n);
  std::vector<GridGenerator> out;
  out.reserve(4 * static_cast<std::size_t>(grid_n));
  for (int alpha = 0; alpha < 2; ++alpha)
    for (int beta = 0; beta < 2; ++beta)
      for (int k = 0; k < grid_n; ++k)
        out.push_back({alpha, beta, k, 2.0 * std::numbers::pi * k / grid_n});
  return out;
}

std::vector<Box> grid_boxes(int grid_n) {
  std::vector<Box> out;
  for (const auto& g : grid_generators(grid_n)) {
    const auto bob = BobStrategy::from_correlators(std::cos(g.theta), std::sin(g.theta));
    out.push_back(Box::from_table(product_table(g.alpha, g.beta, bob)));
  }
  return out;
}

lp::ConicDecomposition unsteerable_weight(const Box& box, int grid_n, const lp::SolveOptions& options) {
  return lp::conic_weight(box, grid_boxes(grid_n), options);
}

namespace {

LhvLhsModel model_from_grid(const lp::ConicDecomposition& d, int grid_n) {
  const auto generators = grid_generators(grid_n);
  const double total = std::accumulate(d.coefficients.begin(), d.coefficients.end(), 0.0);
  LhvLhsModel model;
  for (std::size_t k = 0; k < generators.size(); ++k) {
    if (d.coefficients[k] <= 0.0) continue;
    const auto& g = generators[k];
    model.components.push_back(make_component(g.alpha, g.beta, d.coefficients[k] / total,
                                              BobStrategy::from_correlators(std::cos(g.theta), std::sin(g.theta))));
  }
  return model;
}

}  // namespace

std::optional<LhvLhsModel> lhv_lhs_search(const Box& box, int grid_n, const lp::SolveOptions& options) {
  const auto d = unsteerable_weight(box, grid_n, options);
  if (d.weight < 1.0 - kGridTolerance) return std::nullopt;
  return model_from_grid(d, grid_n);
}

double steering_cost_lower_bound(const Box& box) {
  // Nonsignaling boxes outside the scenario reach S = 4; the cost is still at most 1.
  return std::clamp((steering_functional(box) - 2.0) / (2.0 * kSqrt2 - 2.0), 0.0, 1.0);
}

double steering_cost_numeric(const Box& box, int grid_n, const lp::SolveOptions& options) {
  return std::clamp(1.0 - unsteerable_weight(box, grid_n, options).weight, 0.0, 1.0);
}

SteeringCostEstimate estimate_steering_cost(const Box& box, int grid_n, bool check_convergence,
                                            const lp::SolveOptions& options) {
  SteeringCostEstimate out;
  out.grid_n = grid_n;
  out.cost = steering_cost_numeric(box, grid_n, options);
  if (check_convergence) out.refined_cost = steering_cost_numeric(box, 2 * grid_n, options);
  out.lower_bound = steering_cost_lower_bound(box);
  return out;
}

double steering_cost_bb84(double V) {
  require_unit_interval(V, "steering_cost_bb84");
  return std::max(0.0, (kSqrt2 * V - 1.0) / (kSqrt2 - 1.0));
}

double steering_cost_colored(double V) {
  require_unit_interval(V, "steering_cost_colored");
  return V;
}

double steering_cost_closed_form(Family family, double V) {
  return family == Family::White ? steering_cost_bb84(V) : steering_cost_colored(V);
}

Box::Table SteeringDecomposition::reconstruct() const {
  Box::Table table{};
  for (std::size_t i = 0; i < Box::kSize; ++i)
    table[i] = p_s * steerable_part[i] + (1.0 - p_s) * unsteerable_part[i];
  return table;
}

double SteeringDecomposition::residual(const Box& box) const {
  const auto table = reconstruct();
  double worst = 0.0;
  for (std::size_t i = 0; i < Box::kSize; ++i) worst = std::max(worst, std::abs(table[i] - box[i]));
  return worst;
}

SteeringDecomposition optimal_decomposition_bb84(double V) {
  require_unit_interval(V, "optimal_decomposition_bb84");
  const double threshold = 1.0 / kSqrt2;
  if (V < threshold - kModelTolerance) {
    std::ostringstream os;
    os << "optimal_decomposition_bb84: V = " << V << " is below the steering threshold 1/sqrt(2)";
    throw OutOfRange(os.str());
  }
  SteeringDecomposition d;
  d.p_s = steering_cost_bb84(V);
  d.steerable_part = extremal_steerable_box();
  d.unsteerable_part = bb84_box(threshold);
  d.model = bb84_lhv_model(threshold);
  return d;
}

SteeringDecomposition optimal_decomposition_colored(double V) {
  require_unit_interval(V, "optimal_decomposition_colored");
  SteeringDecomposition d;
  d.p_s = V;
  d.steerable_part = extremal_steerable_box();
  d.unsteerable_part = colored_unsteerable_box();
  d.model = colored_unsteerable_model();
  return d;
}

SteeringDecomposition numeric_decomposition(const Box& box, int grid_n, const lp::SolveOptions& options) {
  const auto generators = grid_boxes(grid_n);
  const auto d = lp::conic_weight(box, generators, options);
  const double w = std::accumulate(d.coefficients.begin(), d.coefficients.end(), 0.0);
  if (w <= 0.0) {
    // Nothing unsteerable fits under the box; it is its own steerable part.
    SteeringDecomposition out;
    out.p_s = 1.0;
    out.steerable_part = box;
    return out;
  }

  Box::Table unsteerable{};
  for (std::size_t k = 0; k < generators.size(); ++k) {
    if (d.coefficients[k] == 0.0) continue;
    for (std::size_t i = 0; i < Box::kSize; ++i) unsteerable[i] += d.coefficients[k] / w * generators[k][i];
  }
  SteeringDecomposition out;
  out.unsteerable_part = Box::from_table(unsteerable, kModelTolerance);
  out.model = model_from_grid(d, grid_n);

  const double p_s = 1.0 - w;
  if (p_s < kGridTolerance) {
    out.p_s = 0.0;
    return out;
  }
  Box::Table steerable{};
  for (std::size_t i = 0; i < Box::kSize; ++i) steerable[i] = std::max(d.residual[i], 0.0) / p_s;
  out.p_s = p_s;
  out.steerable_part = Box::from_table(steerable, kModelTolerance);
  return out;
}

ConvexRoofReport convex_roof_check(double V, Family family, int grid_n, double numeric_tolerance) {
  require_unit_interval(V, "convex_roof_check");
  ConvexRoofReport r;
  r.family = family;
  r.V = V;
  r.left = steering_cost_closed_form(family, V);
  r.right = V;
  double left = r.left;
  double right = r.right;
  double tolerance = kModelTolerance;
  if (grid_n > 0) {
    r.left_numeric = steering_cost_numeric(family_box(family, V), grid_n);
    r.right_numeric = V * steering_cost_numeric(extremal_steerable_box(), grid_n) +
                      (1.0 - V) * steering_cost_numeric(family_noise_box(family), grid_n);
    left = *r.left_numeric;
    right = *r.right_numeric;
    tolerance = numeric_tolerance;
  }
  r.inequality_holds = left <= right + tolerance;
  r.equality_holds = std::abs(left - right) <= tolerance;
  return r;
}

}  // namespace steercost
