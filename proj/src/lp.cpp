#include "steercost/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "simplex.hpp"
#include "steercost/errors.hpp"

namespace steercost::lp {

const char* to_string(Status status) {
  switch (status) {
    case Status::Optimal:
      return "optimal";
    case Status::Infeasible:
      return "infeasible";
    case Status::Unbounded:
      return "unbounded";
  }
  return "unknown";
}

LpProblem::LpProblem(std::size_t num_variables)
    : num_variables_(num_variables), objective_(num_variables, 0.0) {}

namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values)
    if (!std::isfinite(v)) throw ValidationError(std::string(what) + " contains a non-finite value");
}

}  // namespace

void LpProblem::set_objective(std::span<const double> coefficients) {
  if (coefficients.size() != num_variables_) {
    throw DimensionMismatch("objective has " + std::to_string(coefficients.size()) +
                            " coefficients for " + std::to_string(num_variables_) + " variables");
  }
  require_finite(coefficients, "objective");
  objective_.assign(coefficients.begin(), coefficients.end());
}

void LpProblem::add_constraint(std::span<const double> coefficients, Sense sense, double rhs) {
  if (coefficients.size() != num_variables_) {
    throw DimensionMismatch("constraint has " + std::to_string(coefficients.size()) +
                            " coefficients for " + std::to_string(num_variables_) + " variables");
  }
  require_finite(coefficients, "constraint row");
  if (!std::isfinite(rhs)) throw ValidationError("constraint right-hand side is not finite");
  matrix_.insert(matrix_.end(), coefficients.begin(), coefficients.end());
  senses_.push_back(sense);
  rhs_.push_back(rhs);
}

namespace {

// Residuals of a candidate optimum, measured against the original double data.
void certify(const LpProblem& problem, LpSolution& s) {
  const std::size_t m = problem.num_constraints();
  const std::size_t n = problem.num_variables();
  double primal = 0.0;
  double slackness = 0.0;
  for (double v : s.x) primal = std::max(primal, -v);
  std::vector<double> reduced(problem.objective().begin(), problem.objective().end());
  s.dual_objective = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = problem.row(i);
    double lhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      lhs += row[j] * s.x[j];
      reduced[j] -= s.duals[i] * row[j];
    }
    const double slack = problem.rhs(i) - lhs;
    switch (problem.sense(i)) {
      case Sense::LessEqual:
        primal = std::max(primal, -slack);
        break;
      case Sense::GreaterEqual:
        primal = std::max(primal, slack);
        break;
      case Sense::Equal:
        primal = std::max(primal, std::abs(slack));
        break;
    }
    slackness = std::max(slackness, std::abs(s.duals[i] * slack));
    s.dual_objective += s.duals[i] * problem.rhs(i);
  }
  for (std::size_t j = 0; j < n; ++j) slackness = std::max(slackness, std::abs(s.x[j] * reduced[j]));
  s.primal_residual = primal;
  s.complementary_slackness = slackness;
}

template <typename Scalar>
LpSolution run_solver(const LpProblem& problem, const SolveOptions& options) {
  detail::RevisedSimplex<Scalar> simplex(problem, options);
  const auto raw = simplex.run();
  LpSolution s;
  s.status = raw.status;
  s.iterations = raw.iterations;
  if (raw.status != Status::Optimal) return s;
  using A = detail::Arith<Scalar>;
  s.objective = A::to_double(raw.objective);
  for (const auto& v : raw.x) s.x.push_back(A::to_double(v));
  for (const auto& v : raw.duals) s.duals.push_back(A::to_double(v));
  if constexpr (std::is_same_v<Scalar, mpq_class>) s.exact_objective = raw.objective.get_str();
  return s;
}

LpSolution certified(const LpProblem& problem, LpSolution s, const SolveOptions& options) {
  if (s.status != Status::Optimal) return s;
  certify(problem, s);
  if (s.primal_residual > options.tolerance || s.complementary_slackness > options.tolerance) {
    std::ostringstream os;
    os << "optimal basis fails its certificate: primal residual " << s.primal_residual
       << ", complementary slackness " << s.complementary_slackness;
    throw NumericalFailure(os.str());
  }
  return s;
}

}  // namespace

LpSolution solve(const LpProblem& problem, const SolveOptions& options) {
  if (options.arithmetic == Arithmetic::ExactRational)
    return certified(problem, run_solver<mpq_class>(problem, options), options);
  try {
    return certified(problem, run_solver<double>(problem, options), options);
  } catch (const NumericalFailure&) {
    // Fine grids put nearly parallel columns side by side and a degenerate
    // problem can walk into a basis too ill-conditioned for doubles. The same
    // pivots in exact arithmetic cannot go wrong, only slower.
    if (!options.exact_fallback) throw;
  }
  return certified(problem, run_solver<mpq_class>(problem, options), options);
}

}  // namespace steercost::lp
