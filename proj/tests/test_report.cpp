#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "steercost/box_io.hpp"
#include "steercost/errors.hpp"
#include "steercost/report.hpp"

using namespace steercost;
using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::vector<std::vector<std::string>> sweep_rows(const SweepOptions& options) {
  std::ostringstream os;
  write_sweep_csv(os, options);
  std::istringstream in(os.str());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) rows.push_back(split(line, ','));
  return rows;
}

}  // namespace

TEST_CASE("box JSON round trip is bit exact") {
  for (double V : {0.1, 1.0 / 3.0, 0.9, 1.0 / std::sqrt(2.0)}) {
    for (Family f : {Family::White, Family::Colored}) {
      const Box b = family_box(f, V);
      const Box back = box_from_json(json::parse(box_to_json(b).dump()));
      CHECK(back == b);
    }
  }
  CHECK_THROWS_AS(box_from_json(json::parse("[1,2]")), ValidationError);
  CHECK_THROWS_AS(box_from_json(json::parse(R"({"p": [1, 2]})")), DimensionMismatch);
  CHECK_THROWS_AS(box_from_json(json::parse(R"({"p": "x"})")), ValidationError);
  CHECK_THROWS_AS(read_box_file("/nonexistent/box.json"), ValidationError);

  const auto path = std::filesystem::temp_directory_path() / "steercost_box_roundtrip.json";
  write_box_file(path, bb84_box(0.37));
  CHECK(read_box_file(path) == bb84_box(0.37));
  {
    std::ofstream broken(path);
    broken << "{ not json";
  }
  CHECK_THROWS_AS(read_box_file(path), ValidationError);
  std::filesystem::remove(path);
}

TEST_CASE("family detection") {
  for (double V : {0.0, 0.3, 0.9}) {
    const auto w = detect_family(bb84_box(V));
    REQUIRE(w.has_value());
    CHECK(w->family == Family::White);
    CHECK(w->V == doctest::Approx(V));
  }
  for (double V : {0.2, 0.7}) {
    const auto c = detect_family(colored_bb84_box(V));
    REQUIRE(c.has_value());
    CHECK(c->family == Family::Colored);
    CHECK(c->V == doctest::Approx(V));
  }
  CHECK(detect_family(bb84_box(1.0))->family == Family::White);
  CHECK_FALSE(detect_family(pr_box(0, 0, 0)).has_value());
  CHECK_FALSE(detect_family(local_det_box(0, 1, 1, 0)).has_value());
}

TEST_CASE("analysis report") {
  const json r = analyze_report(bb84_box(0.9), 720, true);
  CHECK(r["steerable"] == true);
  CHECK(r["local"] == true);
  CHECK(r["chsh"].size() == 8);
  CHECK(std::abs(r["nonlocal_cost"].get<double>()) <= 1e-9);
  const auto& cost = r["steering_cost"];
  CHECK(cost["closed_form"].get<double>() == doctest::Approx(oracle::bb84_cost(0.9)));
  CHECK(std::abs(cost["numeric"].get<double>() - oracle::bb84_cost(0.9)) <= 1e-3);
  CHECK(cost["grid_n"] == 720);
  CHECK(cost["refined_grid_n"] == 1440);
  CHECK(cost["family"]["name"] == "white");
  CHECK(box_from_json(r["box"]) == bb84_box(0.9));

  const json n = analyze_report(uniform_box(), 720, false);
  CHECK(n["steering_functional"] == 0.0);
  CHECK(n["steerable"] == false);
  CHECK(std::abs(n["steering_cost"]["numeric"].get<double>()) <= 1e-9);
  CHECK_FALSE(n["steering_cost"].contains("refined_numeric"));

  const json pr = analyze_report(pr_box(0, 0, 0), 360, false);
  CHECK(pr["local"] == false);
  CHECK(pr["steering_cost"]["closed_form"].is_null());
  CHECK(pr["steering_cost"]["lower_bound"].get<double>() <= 1.0);
}

TEST_CASE("decompose report") {
  const json u = decompose_report(bb84_box(0.5), 720);
  CHECK(u["steerable"] == false);
  CHECK(u["model"]["realizable"] == true);
  CHECK(u["model_residual"].get<double>() <= kModelTolerance);

  const json s = decompose_report(bb84_box(0.9), 720);
  CHECK(s["steerable"] == true);
  CHECK(s["decomposition"]["p_s"].get<double>() == doctest::Approx(oracle::bb84_cost(0.9)).epsilon(1e-3));
  CHECK(s["decomposition"]["residual"].get<double>() <= kModelTolerance);
  CHECK(s["optimal_decomposition"]["p_s"].get<double>() == doctest::Approx(oracle::bb84_cost(0.9)));

  const json c = decompose_report(colored_bb84_box(0.4), 720);
  CHECK(c["decomposition"]["p_s"].get<double>() == doctest::Approx(0.4).epsilon(1e-3));
  CHECK(box_from_json(c["optimal_decomposition"]["unsteerable_part"]) == colored_unsteerable_box());
}

TEST_CASE("sweep CSV") {
  SweepOptions white;
  white.steps = 11;
  white.grid_n = 360;
  const auto rows = sweep_rows(white);
  REQUIRE(rows.size() == 12);
  CHECK(rows[0] == split(kSweepHeader, ','));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 7);
    const double V = std::stod(rows[i][0]);
    CHECK(V == doctest::Approx((i - 1) / 10.0));
    CHECK(std::stod(rows[i][2]) == doctest::Approx(oracle::bb84_cost(V)).epsilon(1e-11));
    CHECK(std::abs(std::stod(rows[i][6])) <= 1e-9);
    CHECK(std::stod(rows[i][1]) == doctest::Approx(2.0 * std::sqrt(2.0) * V).epsilon(1e-11));
  }
  CHECK(rows[4][0] == "0.3");
  CHECK(rows[11][1] == "2.82842712475");

  SweepOptions colored;
  colored.family = Family::Colored;
  colored.steps = 6;
  colored.grid_n = 360;
  const auto crows = sweep_rows(colored);
  for (std::size_t i = 1; i < crows.size(); ++i) CHECK(crows[i][2] == crows[i][0]);

  SweepOptions bad = white;
  bad.v_min = 0.8;
  bad.v_max = 0.2;
  std::ostringstream sink;
  CHECK_THROWS_AS(write_sweep_csv(sink, bad), OutOfRange);
  bad = white;
  bad.steps = 1;
  CHECK_THROWS_AS(write_sweep_csv(sink, bad), OutOfRange);
}

TEST_CASE("locc report") {
  const json r = locc_report("coarse-grain", Family::White, 0.9, 720);
  CHECK(r["pass"] == true);
  CHECK(r["average_after"].get<double>() == doctest::Approx(0.0));
  CHECK(r["trace_preserving"] == true);
  CHECK_THROWS_AS(locc_report("nope", Family::White, 0.9, 720), UnknownPreset);
}
