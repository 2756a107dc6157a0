#include <doctest.h>

#include <array>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "steercost/box.hpp"
#include "steercost/errors.hpp"
#include "steercost/steering.hpp"

using namespace steercost;

namespace {

Box from_oracle(const oracle::Table& t) { return make_box(t); }

}  // namespace

TEST_CASE("index order matches the flat layout") {
  CHECK(Box::index(0, 0, 0, 0) == 0);
  CHECK(Box::index(0, 1, 0, 0) == 1);
  CHECK(Box::index(1, 0, 0, 0) == 2);
  CHECK(Box::index(0, 0, 0, 1) == 4);
  CHECK(Box::index(0, 0, 1, 0) == 8);
  CHECK(Box::index(1, 1, 1, 1) == 15);
}

TEST_CASE("make_box accepts the uniform box and rejects broken tables") {
  std::array<double, 16> t;
  t.fill(0.25);
  CHECK(make_box(t) == uniform_box());

  auto bad = t;
  bad[0] = 1.1;
  CHECK_THROWS_AS(make_box(bad), ValidationError);
  bad = t;
  bad[0] = -0.25;
  bad[1] = 0.75;
  CHECK_THROWS_AS(make_box(bad), NegativeEntry);
  bad = t;
  bad[0] = 0.5;
  CHECK_THROWS_AS(make_box(bad), NotNormalized);

  // p(0b|00) sums to 0.6 while p(0b|01) sums to 0.5.
  bad = t;
  bad[Box::index(0, 0, 0, 0)] = 0.35;
  bad[Box::index(1, 0, 0, 0)] = 0.15;
  bad[Box::index(0, 1, 0, 0)] = 0.25;
  bad[Box::index(1, 1, 0, 0)] = 0.25;
  CHECK_THROWS_AS(make_box(bad), SignalingDetected);

  const std::vector<double> short_list(15, 1.0 / 15);
  CHECK_THROWS_AS(make_box(short_list), DimensionMismatch);
}

TEST_CASE("signaling error names the offending entries") {
  std::array<double, 16> t;
  t.fill(0.25);
  t[Box::index(0, 0, 0, 0)] = 0.5;
  t[Box::index(1, 0, 0, 0)] = 0.0;
  try {
    make_box(t);
    FAIL("expected SignalingDetected");
  } catch (const SignalingDetected& e) {
    CHECK(std::string(e.what()).find("p(") != std::string::npos);
  }
}

TEST_CASE("PR boxes") {
  const Box p = pr_box(0, 0, 0);
  CHECK(p(0, 0, 0, 0) == 0.5);
  CHECK(p(0, 1, 0, 0) == 0.0);
  CHECK(p(0, 1, 1, 1) == 0.5);
  CHECK(p(0, 0, 1, 1) == 0.0);

  const auto all = all_pr_boxes();
  for (int i = 0; i < 8; ++i) {
    CHECK(oracle::max_diff(oracle::as_table(all[i]), oracle::pr(i >> 2 & 1, i >> 1 & 1, i & 1)) == 0.0);
    int nonzero = 0;
    for (std::size_t k = 0; k < 16; ++k) nonzero += all[i][k] != 0.0;
    CHECK(nonzero == 8);
    for (int j = 0; j < i; ++j) CHECK_FALSE(all[i] == all[j]);
  }
  CHECK_THROWS_AS(pr_box(2, 0, 0), OutOfRange);
}

TEST_CASE("deterministic boxes") {
  const Box d0 = local_det_box(0, 0, 0, 0);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) CHECK(d0(0, 0, x, y) == 1.0);
  CHECK(local_det_box(1, 0, 0, 1)(0, 1, 0, 1) == 1.0);

  const auto all = all_local_det_boxes();
  for (int i = 0; i < 16; ++i) {
    CHECK(oracle::max_diff(oracle::as_table(all[i]),
                           oracle::deterministic(i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1)) == 0.0);
    int ones = 0;
    for (std::size_t k = 0; k < 16; ++k) {
      CHECK((all[i][k] == 0.0 || all[i][k] == 1.0));
      ones += all[i][k] == 1.0;
    }
    CHECK(ones == 4);
  }
}

TEST_CASE("the 24 vertices span an 8-dimensional affine space") {
  std::vector<std::array<double, 16>> vertices;
  for (const auto& b : all_pr_boxes()) vertices.push_back(oracle::as_table(b));
  for (const auto& b : all_local_det_boxes()) vertices.push_back(oracle::as_table(b));
  REQUIRE(vertices.size() == 24);
  std::vector<std::vector<double>> centered;
  for (const auto& v : vertices) {
    std::vector<double> row(16);
    for (int k = 0; k < 16; ++k) row[k] = v[k] - vertices[0][k];
    centered.push_back(row);
  }
  CHECK(oracle::rank(centered) == 8);
}

TEST_CASE("mix") {
  const std::array<Box, 1> one = {uniform_box()};
  const std::array<double, 1> w1 = {1.0};
  CHECK(mix(one, w1) == uniform_box());

  const std::array<Box, 2> prs = {pr_box(0, 0, 0), pr_box(1, 1, 0)};
  const std::array<double, 2> half = {0.5, 0.5};
  CHECK(max_abs_difference(mix(prs, half), from_oracle(oracle::bb84(1.0))) < 1e-15);

  const auto dets = all_local_det_boxes();
  std::vector<double> w16(16, 1.0 / 16);
  CHECK(max_abs_difference(mix(dets, w16), uniform_box()) < 1e-15);

  const std::array<double, 2> negative = {1.5, -0.5};
  CHECK_THROWS_AS(mix(prs, negative), BadWeights);
  const std::array<double, 2> short_sum = {0.5, 0.4};
  CHECK_THROWS_AS(mix(prs, short_sum), BadWeights);
  const std::array<double, 1> wrong_count = {1.0};
  CHECK_THROWS_AS(mix(prs, wrong_count), BadWeights);
}

TEST_CASE("correlators") {
  const auto pr = correlators(pr_box(0, 0, 0));
  CHECK(pr.joint[0][0] == 1.0);
  CHECK(pr.joint[0][1] == 1.0);
  CHECK(pr.joint[1][0] == 1.0);
  CHECK(pr.joint[1][1] == -1.0);

  const auto n = correlators(uniform_box());
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) CHECK(n.joint[x][y] == 0.0);

  for (double V : {0.0, 0.3, 0.77, 1.0}) {
    const auto e = correlators(bb84_box(V)).joint;
    CHECK(e[0][0] == doctest::Approx(V).epsilon(1e-15));
    CHECK(e[0][1] == doctest::Approx(0.0));
    CHECK(e[1][0] == doctest::Approx(0.0));
    CHECK(e[1][1] == doctest::Approx(-V).epsilon(1e-15));
  }

  const auto d = correlators(local_det_box(1, 0, 0, 1));
  CHECK(d.alice[0] == 1.0);
  CHECK(d.alice[1] == -1.0);
  CHECK(d.bob[0] == -1.0);
  CHECK(d.bob[1] == -1.0);
}

TEST_CASE("correlators are linear under mixing") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(0, 23);
  std::exponential_distribution<double> expo(1.0);
  std::vector<Box> vertices;
  for (const auto& b : all_pr_boxes()) vertices.push_back(b);
  for (const auto& b : all_local_det_boxes()) vertices.push_back(b);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Box> boxes;
    std::vector<double> w;
    double total = 0.0;
    for (int i = 0; i < 5; ++i) {
      boxes.push_back(vertices[static_cast<std::size_t>(pick(rng))]);
      w.push_back(expo(rng));
      total += w.back();
    }
    for (double& v : w) v /= total;
    const auto mixed = correlators(mix(boxes, w));
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        double expected = 0.0;
        for (std::size_t i = 0; i < boxes.size(); ++i) expected += w[i] * correlators(boxes[i]).joint[x][y];
        CHECK(std::abs(mixed.joint[x][y] - expected) <= kBoxTolerance);
      }
  }
}

TEST_CASE("CHSH values") {
  CHECK(chsh_value(pr_box(0, 0, 0), 0, 0, 0) == 4.0);
  for (int i = 0; i < 8; ++i) CHECK(chsh_values(uniform_box())[i] == 0.0);
  for (double V : {0.2, 0.5, 1.0}) CHECK(chsh_value(bb84_box(V), 0, 0, 0) == doctest::Approx(2.0 * V));

  for (const auto& d : all_local_det_boxes()) {
    const auto t = oracle::as_table(d);
    for (int i = 0; i < 8; ++i) {
      CHECK(std::abs(chsh_values(d)[i]) <= 2.0);
      CHECK(chsh_values(d)[i] == doctest::Approx(oracle::chsh(t, i >> 2 & 1, i >> 1 & 1, i & 1)));
    }
  }
  for (const auto& p : all_pr_boxes()) {
    int at_four = 0;
    for (double v : chsh_values(p)) at_four += v == 4.0;
    CHECK(at_four == 1);
    CHECK(max_chsh_value(p) == 4.0);
  }
}

TEST_CASE("locality verdicts") {
  CHECK_FALSE(is_local(pr_box(0, 0, 0)));
  for (const auto& d : all_local_det_boxes()) CHECK(is_local(d));
  for (double V : {0.01, 0.5, 0.9, 1.0}) {
    CHECK(is_local(bb84_box(V)));
    CHECK(is_local(colored_bb84_box(V)));
  }
}

TEST_CASE("relabeling permutes entries") {
  Relabeling r;
  r.swap_x = 1;
  r.flip_a = {1, 0};
  r.flip_b = {0, 1};
  const Box src = mix(std::array<Box, 2>{pr_box(0, 1, 0), local_det_box(1, 0, 1, 1)}, std::array<double, 2>{0.3, 0.7});
  const Box out = relabel(src, r);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) CHECK(out(a ^ r.flip_a[x], b ^ r.flip_b[y], x ^ 1, y) == src(a, b, x, y));
  CHECK(max_chsh_value(out) == doctest::Approx(max_chsh_value(src)));
}
