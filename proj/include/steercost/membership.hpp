#pragma once

// Polytope-membership weights built on the LP solver: how much of a box can be
// carved out as a convex combination of given generator boxes.

#include <span>
#include <vector>

#include "steercost/box.hpp"
#include "steercost/lp.hpp"

namespace steercost::lp {

struct ConicDecomposition {
  // max sum_k q_k  s.t.  q >= 0, sum_k q_k <= 1, sum_k q_k G_k <= box entrywise
  double weight = 0.0;
  std::vector<double> coefficients;  // q_k, one per generator
  Box::Table residual{};             // box - sum_k q_k G_k, entrywise >= -tolerance
  LpSolution lp;
};

ConicDecomposition conic_weight(const Box& box, std::span<const Box> generators,
                                const SolveOptions& options = {});

// conic_weight over the 16 local-deterministic boxes (all_local_det_boxes order).
ConicDecomposition local_weight(const Box& box, const SolveOptions& options = {});

// 1 - local_weight: the minimal nonlocal weight over local + nonlocal splits.
double nonlocal_cost(const Box& box, const SolveOptions& options = {});

}  // namespace steercost::lp
