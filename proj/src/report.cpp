#include "steercost/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <sstream>
#include <thread>
#include <vector>

#include "steercost/box_io.hpp"
#include "steercost/errors.hpp"
#include "steercost/locc.hpp"
#include "steercost/membership.hpp"

namespace steercost {

using nlohmann::json;

std::optional<FamilyMatch> detect_family(const Box& box) {
  const auto e = correlators(box).joint;
  const std::array<std::pair<Family, double>, 2> fits = {
      {{Family::White, (e[0][0] - e[1][1]) / 2.0}, {Family::Colored, -e[1][1]}}};
  for (const auto& [family, v] : fits) {
    if (!(v >= -kFamilyMatchTolerance && v <= 1.0 + kFamilyMatchTolerance)) continue;
    const double V = std::clamp(v, 0.0, 1.0) + 0.0;  // no -0 in reports
    const double residual = max_abs_difference(box, family_box(family, V));
    if (residual < kFamilyMatchTolerance) return FamilyMatch{family, V, residual};
  }
  return std::nullopt;
}

json analyze_report(const Box& box, int grid_n, bool check_convergence) {
  json r;
  r["box"] = box_to_json(box);
  const auto chsh = chsh_values(box);
  r["chsh"] = chsh;
  r["chsh_max"] = max_chsh_value(box);
  r["local"] = is_local(box);
  r["nonlocal_cost"] = lp::nonlocal_cost(box);
  const double s = steering_functional(box);
  r["steering_functional"] = s;
  r["steerable"] = is_steerable(box);

  const auto estimate = estimate_steering_cost(box, grid_n, check_convergence);
  json cost;
  cost["lower_bound"] = estimate.lower_bound;
  cost["numeric"] = estimate.cost;
  cost["grid_n"] = grid_n;
  if (estimate.refined_cost) {
    cost["refined_numeric"] = *estimate.refined_cost;
    cost["refined_grid_n"] = 2 * grid_n;
    cost["convergence_gap"] = std::abs(*estimate.refined_cost - estimate.cost);
  }
  cost["closed_form"] = nullptr;
  cost["family"] = nullptr;
  if (const auto match = detect_family(box)) {
    cost["closed_form"] = steering_cost_closed_form(match->family, match->V);
    cost["family"] = {{"name", to_string(match->family)}, {"V", match->V}, {"residual", match->residual}};
  }
  r["steering_cost"] = cost;
  return r;
}

json model_to_json(const LhvLhsModel& model) {
  json components = json::array();
  for (const auto& c : model.components) {
    json item = {{"weight", c.weight},
                 {"alice", {{"alpha", c.alpha}, {"beta", c.beta}}},
                 {"bob_correlators", {c.bob.correlator(0), c.bob.correlator(1)}},
                 {"realizable", c.realizable}};
    if (c.state) item["bob_state"] = {{"r1", c.state->r1}, {"r2", c.state->r2}, {"cos_phi", c.state->cos_phi}};
    components.push_back(item);
  }
  return {{"components", components}, {"realizable", model.realizable()}, {"total_weight", model.total_weight()}};
}

json decomposition_to_json(const SteeringDecomposition& d, const Box& target) {
  json j = {{"p_s", d.p_s},
            {"steerable_part", box_to_json(d.steerable_part)},
            {"unsteerable_part", box_to_json(d.unsteerable_part)},
            {"unsteerable_functional", steering_functional(d.unsteerable_part)},
            {"residual", d.residual(target)},
            {"steerable_distance_to_extremal", max_abs_difference(d.steerable_part, extremal_steerable_box())}};
  if (d.model) {
    j["unsteerable_model"] = model_to_json(*d.model);
    j["unsteerable_model_residual"] = d.model->residual(d.unsteerable_part);
  }
  return j;
}

json decompose_report(const Box& box, int grid_n) {
  json r;
  r["box"] = box_to_json(box);
  r["grid_n"] = grid_n;
  r["steering_functional"] = steering_functional(box);
  if (const auto model = lhv_lhs_search(box, grid_n)) {
    r["steerable"] = false;
    r["model"] = model_to_json(*model);
    r["model_residual"] = model->residual(box);
  } else {
    r["steerable"] = true;
    r["decomposition"] = decomposition_to_json(numeric_decomposition(box, grid_n), box);
    r["lower_bound"] = steering_cost_lower_bound(box);
  }
  if (const auto match = detect_family(box)) {
    r["family"] = {{"name", to_string(match->family)}, {"V", match->V}};
    const bool has_optimal = match->family == Family::Colored || match->V >= 1.0 / std::sqrt(2.0);
    if (has_optimal) {
      const auto d = match->family == Family::White ? optimal_decomposition_bb84(match->V)
                                                   : optimal_decomposition_colored(match->V);
      r["optimal_decomposition"] = decomposition_to_json(d, box);
    }
  }
  return r;
}

void write_sweep_csv(std::ostream& out, const SweepOptions& options) {
  if (!(options.v_min >= 0.0 && options.v_min <= options.v_max && options.v_max <= 1.0)) {
    std::ostringstream os;
    os << "sweep needs 0 <= vmin <= vmax <= 1, got vmin = " << options.v_min << ", vmax = " << options.v_max;
    throw OutOfRange(os.str());
  }
  if (options.steps < 2) throw OutOfRange("sweep needs at least 2 steps, got " + std::to_string(options.steps));

  const auto n = static_cast<std::size_t>(options.steps);
  std::vector<std::array<double, 7>> rows(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        const double V = i + 1 == n ? options.v_max
                                    : options.v_min + (options.v_max - options.v_min) * static_cast<double>(i) /
                                                          static_cast<double>(n - 1);
        const Box box = family_box(options.family, V);
        rows[i] = {V,
                   steering_functional(box),
                   steering_cost_closed_form(options.family, V),
                   steering_cost_lower_bound(box),
                   steering_cost_numeric(box, options.grid_n),
                   max_chsh_value(box),
                   lp::nonlocal_cost(box)};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(n));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  out << kSweepHeader << '\n';
  out << std::setprecision(12);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    out << '\n';
  }
}

json locc_report(const std::string& preset, Family family, double V, int grid_n) {
  const Channel channel = channel_preset(preset);
  const auto assemblage = family_assemblage(family, V);
  const auto bob = bob_measurements(mub_pair_standard());
  const auto r = monotonicity_harness(assemblage, channel, bob, grid_n);
  json subchannels = json::array();
  for (std::size_t i = 0; i < channel.size(); ++i)
    subchannels.push_back({{"label", channel[i].label},
                           {"transmission", r.transmissions[i]},
                           {"cost_after", r.costs_after[i]}});
  return {{"preset", preset},
          {"family", to_string(family)},
          {"V", V},
          {"grid_n", grid_n},
          {"trace_preserving", is_trace_preserving(channel)},
          {"before", r.before},
          {"average_after", r.average_after},
          {"subchannels", subchannels},
          {"tolerance", r.tolerance},
          {"pass", r.pass}};
}

}  // namespace steercost
