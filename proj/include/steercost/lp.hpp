#pragma once

// Small dense linear programs: maximize c.x subject to rows a_i.x (<=,=,>=) b_i
// and x >= 0. Solved with a two-phase revised simplex using Bland's rule, so
// pivoting is deterministic and cannot cycle. Sizes in this project stay
// around 20 rows by a few thousand columns.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace steercost::lp {

inline constexpr double kTolerance = 1e-9;

enum class Sense { LessEqual, Equal, GreaterEqual };
enum class Status { Optimal, Infeasible, Unbounded };
enum class Arithmetic { Double, ExactRational };

const char* to_string(Status status);

class LpProblem {
 public:
  explicit LpProblem(std::size_t num_variables);

  // Maximization objective. Throws DimensionMismatch or ValidationError.
  void set_objective(std::span<const double> coefficients);
  void add_constraint(std::span<const double> coefficients, Sense sense, double rhs);

  std::size_t num_variables() const { return num_variables_; }
  std::size_t num_constraints() const { return senses_.size(); }
  std::span<const double> objective() const { return objective_; }
  std::span<const double> row(std::size_t i) const {
    return {matrix_.data() + i * num_variables_, num_variables_};
  }
  Sense sense(std::size_t i) const { return senses_[i]; }
  double rhs(std::size_t i) const { return rhs_[i]; }

 private:
  std::size_t num_variables_;
  std::vector<double> objective_;
  std::vector<double> matrix_;  // row-major, num_constraints x num_variables
  std::vector<Sense> senses_;
  std::vector<double> rhs_;
};

struct SolveOptions {
  double tolerance = kTolerance;
  // Exact mode converts the (binary floating point) data to rationals without
  // rounding and pivots in GMP arithmetic. Only practical for small problems.
  Arithmetic arithmetic = Arithmetic::Double;
  std::size_t max_iterations = 200000;
  // A double solve that ends in NumericalFailure is rerun in exact mode.
  bool exact_fallback = true;
};

struct LpSolution {
  Status status = Status::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
  // Dual values read from the final basis, one per constraint, in the sign
  // convention of the original rows.
  std::vector<double> duals;
  double dual_objective = 0.0;
  double primal_residual = 0.0;          // worst constraint or bound violation
  double complementary_slackness = 0.0;  // worst |y_i s_i| or |x_j d_j|
  std::size_t iterations = 0;
  std::optional<std::string> exact_objective;  // "p/q", exact mode only
};

// Throws NumericalFailure on pivot breakdown, iteration exhaustion, or when an
// optimum fails its feasibility / complementary-slackness certificate.
LpSolution solve(const LpProblem& problem, const SolveOptions& options = {});

}  // namespace steercost::lp
