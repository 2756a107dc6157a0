#pragma once

// Steering in the scenario where Alice is a black box with two dichotomic
// settings and Bob measures a qubit in two mutually unbiased bases.
//
// In that scenario the extremal unsteerable boxes are products of a
// deterministic Alice strategy P_D^{ab}(a|x) (a = alpha*x xor beta) with a Bob
// strategy <psi|Pi_{b|y}|psi> from a pure qubit state. A Bob strategy with
// correlators (E0, E1) comes from such a state iff E0^2 + E1^2 <= 1.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "steercost/box.hpp"
#include "steercost/cmatrix.hpp"
#include "steercost/membership.hpp"
#include "steercost/quantum.hpp"

namespace steercost {

inline constexpr double kModelTolerance = 1e-7;
inline constexpr double kGridTolerance = 1e-6;
inline constexpr int kDefaultGrid = 720;

// sqrt(<(A0+A1)B0>^2 + <(A0+A1)B1>^2) + sqrt(<(A0-A1)B0>^2 + <(A0-A1)B1>^2).
// At most 2 on unsteerable boxes of the scenario, 2 sqrt(2) at most overall.
double steering_functional(const Box& box);

// steering_functional > 2 + tolerance. The boundary value 2 counts as
// unsteerable.
bool is_steerable(const Box& box, double tolerance = kModelTolerance);

// (1 + (-1)^(a^b^xy) delta_xy V)/4, correlators (V, 0, 0, -V).
Box bb84_box(double V);
// Correlators (1, 0, 0, -V) with uniform marginals.
Box colored_bb84_box(double V);
// bb84_box(1).
Box extremal_steerable_box();
// (PR^000 + PR^110 + PR^010 + PR^100)/4, correlators (1, 0, 0, 0). Unsteerable;
// the colored family is V * extremal + (1 - V) * this.
Box colored_unsteerable_box();

enum class Family { White, Colored };

const char* to_string(Family family);
// "white" or "colored"; throws OutOfRange otherwise.
Family parse_family(const std::string& name);

Box family_box(Family family, double V);
// The box the family's noise term produces: uniform for white noise,
// colored_unsteerable_box() for colored noise.
Box family_noise_box(Family family);
// Werner or colored-noise state at visibility V.
State family_state(Family family, double V);
// assemblage_from(family_state, bb84_alice_measurements()).
Assemblage family_assemblage(Family family, double V);

// p(b|y), stored [y][b].
class BobStrategy {
 public:
  using Table = std::array<std::array<double, 2>, 2>;

  // Nonnegative with each row summing to 1 (within kBoxTolerance); throws
  // NegativeEntry or NotNormalized.
  static BobStrategy from_table(const Table& p);
  // P(b|y) = (1 + (-1)^b E_y)/2; throws OutOfRange unless |E_y| <= 1.
  static BobStrategy from_correlators(double e0, double e1);

  double operator()(int b, int y) const { return p_[y][b]; }
  // E_y = P(0|y) - P(1|y)
  double correlator(int y) const { return p_[y][0] - p_[y][1]; }

 private:
  explicit BobStrategy(const Table& p) : p_(p) {}
  Table p_{};
};

bool mub_realizable(const BobStrategy& s, double tolerance = kModelTolerance);

// |psi> = r1 |f1> + e^{i phi} r2 |f2>. Two MUB measurements only see cos phi,
// so the sign of sin phi is fixed to +.
struct PureState {
  double r1 = 1.0;
  double r2 = 0.0;
  double cos_phi = 0.0;
};

// r1 = sqrt((1+E0)/2), r2 = sqrt((1-E0)/2), cos phi = E1/(2 r1 r2), with
// cos phi = 0 when r1 r2 = 0. Throws NotRealizable when E0^2 + E1^2 > 1 +
// tolerance; inside the tolerance band cos phi is clamped to [-1, 1].
PureState find_pure_state(const BobStrategy& s, double tolerance = kModelTolerance);

// The strategy that measuring `state` in B0 (y = 0) and B1 (y = 1) produces.
BobStrategy strategy_of(const PureState& state);

// A ket in the given MUB pair whose measurement statistics equal
// strategy_of(state): the relative phase is shifted by arg(<f2|g1>/<f1|g1>).
Ket ket_for(const PureState& state, const MubPair& pair);

// Alice deterministic strategy P_D^{alpha beta}: a = alpha*x xor beta.
struct LhvComponent {
  int alpha = 0;
  int beta = 0;
  double weight = 0.0;
  BobStrategy bob = BobStrategy::from_correlators(0.0, 0.0);
  bool realizable = false;
  std::optional<PureState> state;  // set when realizable
};

struct LhvLhsModel {
  std::vector<LhvComponent> components;

  // Every Bob strategy comes from a pure qubit state, so this is a genuine
  // LHV-LHS model and not only an LHV decomposition.
  bool realizable() const;
  double total_weight() const;
  // sum_k w_k D(a|x; alpha_k, beta_k) P_k(b|y), using the pure state where
  // one is present.
  Box::Table reconstruct() const;
  // Same, computed from kets and projectors of the given MUB pair.
  Box::Table reconstruct_quantum(const MubPair& pair) const;
  // Largest entrywise |reconstruct() - box|.
  double residual(const Box& box) const;
};

// Weight 1/4 per Alice strategy with Bob correlators (V,-V), (-V,V), (V,V),
// (-V,-V) for P_D^{00}, P_D^{01}, P_D^{10}, P_D^{11}. Reproduces bb84_box(V)
// for every V; realizable iff 2V^2 <= 1. Throws OutOfRange.
LhvLhsModel bb84_lhv_model(double V);
// Same Alice strategies with Bob correlators (1,-V), (-1,V), (1,V), (-1,-V).
// Reproduces colored_bb84_box(V); realizable only at V = 0.
LhvLhsModel colored_bb84_lhv_model(double V);
// 1/4 each of P_D^{00}|f1>, P_D^{01}|f2>, P_D^{10}|f1>, P_D^{11}|f2>.
LhvLhsModel colored_unsteerable_model();

// Extremal unsteerable boxes on a grid: P_D^{alpha beta} times the Bob
// strategy with correlators (cos t_k, sin t_k), t_k = 2 pi k / grid_n.
// Ordered alpha-major, then beta, then k. Throws OutOfRange for grid_n < 8.
struct GridGenerator {
  int alpha = 0;
  int beta = 0;
  int k = 0;
  double theta = 0.0;
};
std::vector<GridGenerator> grid_generators(int grid_n);
std::vector<Box> grid_boxes(int grid_n);

// Unsteerable weight of the box on the grid: max sum q s.t. sum q G <= box.
lp::ConicDecomposition unsteerable_weight(const Box& box, int grid_n, const lp::SolveOptions& options = {});

// Model assembled from the grid LP when its weight reaches 1 - kGridTolerance;
// weights are renormalized to sum to 1.
std::optional<LhvLhsModel> lhv_lhs_search(const Box& box, int grid_n = kDefaultGrid,
                                          const lp::SolveOptions& options = {});

// max{0, (S - 2)/(2 sqrt(2) - 2)}, capped at 1. Valid because S is convex, at
// most 2 on the unsteerable part and at most 2 sqrt(2) on the steerable part.
double steering_cost_lower_bound(const Box& box);

// 1 - unsteerable_weight on the grid, clamped to [0, 1].
//
// Two error sources pull in opposite directions. The grid polygon sits inside
// the Bloch circle, which shrinks the unsteerable set and biases the value up
// by O((pi/grid_n)^2). The residual is only required to be a nonsignaling box,
// not a box the scenario can produce, which biases it down.
double steering_cost_numeric(const Box& box, int grid_n = kDefaultGrid, const lp::SolveOptions& options = {});

struct SteeringCostEstimate {
  double cost = 0.0;
  int grid_n = 0;
  // The same LP on a grid of 2 * grid_n points, when requested. The change
  // from `cost` estimates the remaining discretization error.
  std::optional<double> refined_cost;
  double lower_bound = 0.0;
};

SteeringCostEstimate estimate_steering_cost(const Box& box, int grid_n = kDefaultGrid, bool check_convergence = true,
                                            const lp::SolveOptions& options = {});

// max{0, (sqrt(2) V - 1)/(sqrt(2) - 1)}
double steering_cost_bb84(double V);
// V
double steering_cost_colored(double V);
double steering_cost_closed_form(Family family, double V);

// box = p_s * steerable_part + (1 - p_s) * unsteerable_part.
struct SteeringDecomposition {
  double p_s = 0.0;
  Box steerable_part = extremal_steerable_box();
  Box unsteerable_part = uniform_box();
  std::optional<LhvLhsModel> model;  // certifies unsteerable_part

  Box::Table reconstruct() const;
  double residual(const Box& box) const;
};

// p_s = (sqrt(2) V - 1)/(sqrt(2) - 1); unsteerable part bb84_box(1/sqrt(2)).
// Throws OutOfRange below the threshold V = 1/sqrt(2).
SteeringDecomposition optimal_decomposition_bb84(double V);
// p_s = V; unsteerable part colored_unsteerable_box().
SteeringDecomposition optimal_decomposition_colored(double V);

// Decomposition read off the grid LP. When p_s falls below kGridTolerance it
// is reported as 0 and the steerable part is a placeholder (the extremal box).
SteeringDecomposition numeric_decomposition(const Box& box, int grid_n = kDefaultGrid,
                                            const lp::SolveOptions& options = {});

// C(family box at V) against V * C(noise-free box) + (1 - V) * C(noise box).
// White noise gives a strict inequality inside (0,1), colored noise equality.
struct ConvexRoofReport {
  Family family = Family::White;
  double V = 0.0;
  double left = 0.0;   // closed form
  double right = 0.0;  // closed form: V * 1 + (1 - V) * 0
  std::optional<double> left_numeric;
  std::optional<double> right_numeric;
  bool inequality_holds = false;
  bool equality_holds = false;
};

// With grid_n > 0 the numeric sides are filled in too and the verdicts use
// them with tolerance `numeric_tolerance`; otherwise they use the closed forms
// with kModelTolerance.
ConvexRoofReport convex_roof_check(double V, Family family, int grid_n = 0, double numeric_tolerance = 1e-3);

}  // namespace steercost
