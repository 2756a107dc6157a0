#pragma once

// JSON and CSV reports behind the command-line tool.

#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "steercost/box.hpp"
#include "steercost/steering.hpp"

namespace steercost {

struct FamilyMatch {
  Family family = Family::White;
  double V = 0.0;
  double residual = 0.0;  // entrywise distance to family_box(family, V)
};

inline constexpr double kFamilyMatchTolerance = 1e-9;

// Fits V from the correlators ((E00 - E11)/2 for white, -E11 for colored) and
// accepts the fit when the family box at that V matches entrywise within
// kFamilyMatchTolerance. White wins when both match (at V = 1 the families
// coincide).
std::optional<FamilyMatch> detect_family(const Box& box);

// Locality, steering functional, cost bounds and estimates. The numeric cost
// is repeated on a grid of 2 * grid_n points when check_convergence is set.
nlohmann::json analyze_report(const Box& box, int grid_n = kDefaultGrid, bool check_convergence = true);

nlohmann::json model_to_json(const LhvLhsModel& model);
nlohmann::json decomposition_to_json(const SteeringDecomposition& d, const Box& target);

// LHV-LHS model when the grid search finds one, otherwise the LP
// decomposition into steerable and unsteerable parts. Known families also get
// their closed-form optimal decomposition.
nlohmann::json decompose_report(const Box& box, int grid_n = kDefaultGrid);

struct SweepOptions {
  Family family = Family::White;
  double v_min = 0.0;
  double v_max = 1.0;
  int steps = 11;
  int grid_n = kDefaultGrid;
  unsigned threads = 0;  // 0: hardware concurrency
};

inline constexpr const char* kSweepHeader = "V,S_value,cost_closed,cost_lb,cost_numeric,chsh_max,nonlocal_cost";

// Throws OutOfRange unless 0 <= v_min <= v_max <= 1 and steps >= 2. Rows are
// computed in parallel and written in V order with 12 significant digits.
void write_sweep_csv(std::ostream& out, const SweepOptions& options);

// Monotonicity harness on the family assemblage with Bob's standard MUB pair.
nlohmann::json locc_report(const std::string& preset, Family family, double V, int grid_n = kDefaultGrid);

}  // namespace steercost
