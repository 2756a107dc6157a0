#pragma once

// Two-phase revised simplex with Bland's rule, generic over the scalar type so
// the same pivoting code runs in double and in exact GMP rationals.
//
// Row counts here are tiny (about 20) while columns run into the thousands,
// so the basis inverse is rebuilt from the original data at every iteration.
// That costs about as much as one tableau pivot and stops rounding error from
// piling up across iterations.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "steercost/errors.hpp"
#include "steercost/lp.hpp"

namespace steercost::lp::detail {

template <typename Scalar>
struct Arith;

template <>
struct Arith<double> {
  static double from_double(double v) { return v; }
  static double to_double(double v) { return v; }
  static double zero_tol(const SolveOptions& o) { return o.tolerance; }
  static double pivot_tol() { return 1e-9; }
  static double singular_tol() { return 1e-12; }
};

template <>
struct Arith<mpq_class> {
  static mpq_class from_double(double v) { return mpq_class(v); }
  static double to_double(const mpq_class& v) { return v.get_d(); }
  static mpq_class zero_tol(const SolveOptions&) { return 0; }
  static mpq_class pivot_tol() { return 0; }
  static mpq_class singular_tol() { return 0; }
};

template <typename Scalar>
struct RawResult {
  Status status = Status::Infeasible;
  std::vector<Scalar> x;
  std::vector<Scalar> duals;
  Scalar objective = 0;
  std::size_t iterations = 0;
};

template <typename Scalar>
class RevisedSimplex {
  using A = Arith<Scalar>;

 public:
  RevisedSimplex(const LpProblem& problem, const SolveOptions& options)
      : options_(options),
        m_(problem.num_constraints()),
        n_(problem.num_variables()),
        tol_(A::zero_tol(options)),
        pivot_tol_(A::pivot_tol()) {
    // Flip rows to get b >= 0, then one slack (<=), surplus (>=) or nothing
    // (=) per row, and one artificial per >= or = row.
    flip_.assign(m_, false);
    std::vector<Sense> senses(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      senses[i] = problem.sense(i);
      if (problem.rhs(i) < 0.0) {
        flip_[i] = true;
        if (senses[i] == Sense::LessEqual)
          senses[i] = Sense::GreaterEqual;
        else if (senses[i] == Sense::GreaterEqual)
          senses[i] = Sense::LessEqual;
      }
    }
    std::size_t slacks = 0;
    std::size_t artificials = 0;
    for (Sense s : senses) {
      if (s != Sense::Equal) ++slacks;
      if (s != Sense::LessEqual) ++artificials;
    }
    first_artificial_ = n_ + slacks;
    cols_ = first_artificial_ + artificials;

    columns_.assign(cols_ * m_, Scalar(0));
    rhs_.assign(m_, Scalar(0));
    basis_.assign(m_, 0);
    std::size_t next_slack = n_;
    std::size_t next_artificial = first_artificial_;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto row = problem.row(i);
      const Scalar sign = flip_[i] ? Scalar(-1) : Scalar(1);
      for (std::size_t j = 0; j < n_; ++j)
        if (row[j] != 0.0) entry(i, j) = sign * A::from_double(row[j]);
      rhs_[i] = sign * A::from_double(problem.rhs(i));
      if (senses[i] == Sense::LessEqual) {
        entry(i, next_slack) = 1;
        basis_[i] = next_slack++;
      } else {
        if (senses[i] == Sense::GreaterEqual) entry(i, next_slack++) = -1;
        entry(i, next_artificial) = 1;
        basis_[i] = next_artificial++;
      }
    }
    cost_.assign(cols_, Scalar(0));
    const auto objective = problem.objective();
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = A::from_double(objective[j]);
  }

  RawResult<Scalar> run() {
    RawResult<Scalar> result;
    if (first_artificial_ < cols_) {
      std::vector<Scalar> phase1(cols_, Scalar(0));
      for (std::size_t j = first_artificial_; j < cols_; ++j) phase1[j] = -1;
      if (iterate(phase1, cols_, result.iterations) != Status::Optimal) {
        throw NumericalFailure("phase 1 reported an unbounded auxiliary problem");
      }
      if (objective_value(phase1) < -tol_) {
        result.status = Status::Infeasible;
        return result;
      }
      drive_out_artificials();
    }
    result.status = iterate(cost_, first_artificial_, result.iterations);
    if (result.status != Status::Optimal) return result;

    refactor();
    result.x.assign(n_, Scalar(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) result.x[basis_[i]] = basic_value(i);
    const auto y = duals(cost_);
    result.duals.assign(m_, Scalar(0));
    for (std::size_t i = 0; i < m_; ++i) result.duals[i] = flip_[i] ? Scalar(-y[i]) : y[i];
    result.objective = objective_value(cost_);
    return result;
  }

 private:
  Scalar& entry(std::size_t i, std::size_t j) { return columns_[j * m_ + i]; }
  const Scalar* column(std::size_t j) const { return columns_.data() + j * m_; }

  static Scalar magnitude(const Scalar& v) { return v < 0 ? Scalar(-v) : v; }

  // Gauss-Jordan inverse of the basis matrix with partial pivoting, then
  // x_B = B^-1 b.
  void refactor() {
    std::vector<Scalar> work(m_ * m_);
    for (std::size_t k = 0; k < m_; ++k) {
      const Scalar* col = column(basis_[k]);
      for (std::size_t i = 0; i < m_; ++i) work[i * m_ + k] = col[i];
    }
    inverse_.assign(m_ * m_, Scalar(0));
    for (std::size_t i = 0; i < m_; ++i) inverse_[i * m_ + i] = 1;
    for (std::size_t k = 0; k < m_; ++k) {
      std::size_t best = k;
      for (std::size_t i = k + 1; i < m_; ++i)
        if (magnitude(work[i * m_ + k]) > magnitude(work[best * m_ + k])) best = i;
      if (!(magnitude(work[best * m_ + k]) > A::singular_tol())) {
        throw NumericalFailure("basis matrix is numerically singular");
      }
      if (best != k) {
        for (std::size_t c = 0; c < m_; ++c) {
          std::swap(work[k * m_ + c], work[best * m_ + c]);
          std::swap(inverse_[k * m_ + c], inverse_[best * m_ + c]);
        }
      }
      const Scalar p = work[k * m_ + k];
      for (std::size_t c = 0; c < m_; ++c) {
        work[k * m_ + c] /= p;
        inverse_[k * m_ + c] /= p;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        if (i == k) continue;
        const Scalar f = work[i * m_ + k];
        if (f == 0) continue;
        for (std::size_t c = 0; c < m_; ++c) {
          work[i * m_ + c] -= f * work[k * m_ + c];
          inverse_[i * m_ + c] -= f * inverse_[k * m_ + c];
        }
      }
    }
    values_.assign(m_, Scalar(0));
    for (std::size_t i = 0; i < m_; ++i) {
      Scalar v = 0;
      for (std::size_t k = 0; k < m_; ++k) v += inverse_[i * m_ + k] * rhs_[k];
      values_[i] = v;
    }
  }

  // Degenerate bases leave basic values at -1e-16 or so; read them as zero.
  Scalar basic_value(std::size_t i) const { return values_[i] < 0 ? Scalar(0) : values_[i]; }

  // y = c_B^T B^-1
  std::vector<Scalar> duals(const std::vector<Scalar>& cost) const {
    std::vector<Scalar> y(m_, Scalar(0));
    for (std::size_t k = 0; k < m_; ++k) {
      const Scalar& cb = cost[basis_[k]];
      if (cb == 0) continue;
      for (std::size_t i = 0; i < m_; ++i) y[i] += cb * inverse_[k * m_ + i];
    }
    return y;
  }

  Scalar objective_value(const std::vector<Scalar>& cost) const {
    Scalar total = 0;
    for (std::size_t i = 0; i < m_; ++i) total += cost[basis_[i]] * basic_value(i);
    return total;
  }

  Scalar row_times_column(std::size_t i, std::size_t j) const {
    const Scalar* col = column(j);
    Scalar v = 0;
    for (std::size_t k = 0; k < m_; ++k)
      if (col[k] != 0) v += inverse_[i * m_ + k] * col[k];
    return v;
  }

  Status iterate(const std::vector<Scalar>& cost, std::size_t limit, std::size_t& iterations) {
    std::vector<bool> in_basis(cols_, false);
    std::vector<Scalar> direction(m_);
    while (true) {
      refactor();
      const auto y = duals(cost);
      std::fill(in_basis.begin(), in_basis.end(), false);
      for (std::size_t b : basis_) in_basis[b] = true;

      // Bland: lowest-index column with negative reduced cost z_j - c_j.
      std::size_t entering = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (in_basis[j]) continue;
        const Scalar* col = column(j);
        Scalar z = 0;
        for (std::size_t i = 0; i < m_; ++i)
          if (col[i] != 0) z += y[i] * col[i];
        if (z - cost[j] < -tol_) {
          entering = j;
          break;
        }
      }
      if (entering == limit) return Status::Optimal;

      for (std::size_t i = 0; i < m_; ++i) direction[i] = row_times_column(i, entering);

      const std::size_t leaving = choose_leaving(direction);
      if (leaving == m_) return Status::Unbounded;

      basis_[leaving] = entering;
      if (++iterations > options_.max_iterations) {
        throw NumericalFailure("simplex exceeded " + std::to_string(options_.max_iterations) +
                               " iterations");
      }
    }
  }

  // Bland: the lowest basis index among minimum ratios. In doubles, ratios
  // within tol of the minimum count as ties and pivots below pivot_tol are
  // skipped.
  std::size_t choose_leaving(const std::vector<Scalar>& direction) const {
    std::size_t leaving = m_;
    Scalar best_ratio = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (!(direction[i] > pivot_tol_)) continue;
      const Scalar ratio = basic_value(i) / direction[i];
      if (leaving == m_ || ratio < best_ratio - tol_) {
        leaving = i;
        best_ratio = ratio;
      } else if (!(ratio > best_ratio + tol_) && basis_[i] < basis_[leaving]) {
        leaving = i;
        if (ratio < best_ratio) best_ratio = ratio;
      }
    }
    return leaving;
  }

  // After a feasible phase 1, basic artificials sit at zero. Swap each one for
  // the nonbasic structural or slack column with the largest pivot; rows with none
  // are redundant and keep their artificial at zero.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      refactor();
      std::vector<bool> in_basis(cols_, false);
      for (std::size_t b : basis_) in_basis[b] = true;
      std::size_t best = first_artificial_;
      Scalar best_pivot = pivot_tol_;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (in_basis[j]) continue;
        const Scalar p = magnitude(row_times_column(i, j));
        if (p > best_pivot) {
          best = j;
          best_pivot = p;
        }
      }
      if (best < first_artificial_) basis_[i] = best;
    }
  }

  SolveOptions options_;
  std::size_t m_;
  std::size_t n_;
  std::size_t cols_ = 0;
  std::size_t first_artificial_ = 0;
  Scalar tol_;
  Scalar pivot_tol_;
  std::vector<Scalar> columns_;  // column-major, m x cols
  std::vector<Scalar> rhs_;
  std::vector<Scalar> cost_;
  std::vector<Scalar> inverse_;  // row-major, m x m
  std::vector<Scalar> values_;
  std::vector<std::size_t> basis_;
  std::vector<bool> flip_;
};

}  // namespace steercost::lp::detail
