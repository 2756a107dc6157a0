#include "steercost/membership.hpp"

#include <algorithm>

#include "steercost/errors.hpp"

namespace steercost::lp {

ConicDecomposition conic_weight(const Box& box, std::span<const Box> generators,
                                const SolveOptions& options) {
  if (generators.empty()) throw DimensionMismatch("conic_weight needs at least one generator");
  const std::size_t k = generators.size();
  LpProblem problem(k);
  problem.set_objective(std::vector<double>(k, 1.0));
  std::vector<double> row(k);
  for (std::size_t i = 0; i < Box::kSize; ++i) {
    for (std::size_t g = 0; g < k; ++g) row[g] = generators[g][i];
    // Validated boxes may carry entries down to -kBoxTolerance; the LP wants b >= 0.
    problem.add_constraint(row, Sense::LessEqual, std::max(box[i], 0.0));
  }
  problem.add_constraint(std::vector<double>(k, 1.0), Sense::LessEqual, 1.0);

  ConicDecomposition out;
  out.lp = solve(problem, options);
  if (out.lp.status != Status::Optimal) {
    // q = 0 is always feasible and the objective is bounded by 1.
    throw NumericalFailure(std::string("membership LP reported ") + to_string(out.lp.status));
  }
  out.coefficients = out.lp.x;
  for (double& q : out.coefficients) q = std::max(q, 0.0);
  out.weight = std::clamp(out.lp.objective, 0.0, 1.0);
  out.residual = box.table();
  for (std::size_t g = 0; g < k; ++g) {
    if (out.coefficients[g] == 0.0) continue;
    for (std::size_t i = 0; i < Box::kSize; ++i) out.residual[i] -= out.coefficients[g] * generators[g][i];
  }
  return out;
}

ConicDecomposition local_weight(const Box& box, const SolveOptions& options) {
  static const auto vertices = all_local_det_boxes();
  return conic_weight(box, vertices, options);
}

double nonlocal_cost(const Box& box, const SolveOptions& options) {
  return std::clamp(1.0 - local_weight(box, options).weight, 0.0, 1.0);
}

}  // namespace steercost::lp
