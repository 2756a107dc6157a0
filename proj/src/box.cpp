#include "steercost/box.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "steercost/errors.hpp"

namespace steercost {

namespace {

void require_bit(int v, const char* name) {
  if (v != 0 && v != 1) {
    throw OutOfRange(std::string(name) + " must be 0 or 1, got " + std::to_string(v));
  }
}

std::string describe_entry(int a, int b, int x, int y) {
  std::ostringstream os;
  os << "p(" << a << b << "|" << x << y << ")";
  return os.str();
}

}  // namespace

Box Box::from_table(const Table& table, double tolerance) {
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const double v = table[index(a, b, x, y)];
          if (!std::isfinite(v)) {
            throw NegativeEntry(describe_entry(a, b, x, y) + " is not finite");
          }
          if (v < -tolerance) {
            std::ostringstream os;
            os << describe_entry(a, b, x, y) << " = " << v << " is negative";
            throw NegativeEntry(os.str());
          }
        }

  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      double total = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) total += table[index(a, b, x, y)];
      if (std::abs(total - 1.0) > tolerance) {
        std::ostringstream os;
        os << "sum_ab p(ab|" << x << y << ") = " << total << ", expected 1";
        throw NotNormalized(os.str());
      }
    }

  // Alice's marginal must not depend on y, Bob's must not depend on x.
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      const double m0 = table[index(a, 0, x, 0)] + table[index(a, 1, x, 0)];
      const double m1 = table[index(a, 0, x, 1)] + table[index(a, 1, x, 1)];
      if (std::abs(m0 - m1) > tolerance) {
        std::ostringstream os;
        os << "Alice marginal p(a=" << a << "|x=" << x << ") differs between y=0 (" << m0
           << ") and y=1 (" << m1 << ")";
        throw SignalingDetected(os.str());
      }
    }
  for (int y = 0; y < 2; ++y)
    for (int b = 0; b < 2; ++b) {
      const double m0 = table[index(0, b, 0, y)] + table[index(1, b, 0, y)];
      const double m1 = table[index(0, b, 1, y)] + table[index(1, b, 1, y)];
      if (std::abs(m0 - m1) > tolerance) {
        std::ostringstream os;
        os << "Bob marginal p(b=" << b << "|y=" << y << ") differs between x=0 (" << m0
           << ") and x=1 (" << m1 << ")";
        throw SignalingDetected(os.str());
      }
    }
  return Box(table);
}

double Box::alice_marginal(int a, int x) const { return (*this)(a, 0, x, 0) + (*this)(a, 1, x, 0); }

double Box::bob_marginal(int b, int y) const { return (*this)(0, b, 0, y) + (*this)(1, b, 0, y); }

Box make_box(std::span<const double> entries) {
  if (entries.size() != Box::kSize) {
    throw DimensionMismatch("a box needs exactly 16 entries, got " + std::to_string(entries.size()));
  }
  Box::Table table{};
  std::copy(entries.begin(), entries.end(), table.begin());
  return Box::from_table(table);
}

Box uniform_box() {
  Box::Table table{};
  table.fill(0.25);
  return Box::from_table(table);
}

Box pr_box(int alpha, int beta, int gamma) {
  require_bit(alpha, "alpha");
  require_bit(beta, "beta");
  require_bit(gamma, "gamma");
  Box::Table table{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const int rhs = (x * y) ^ (alpha * x) ^ (beta * y) ^ gamma;
          table[Box::index(a, b, x, y)] = ((a ^ b) == rhs) ? 0.5 : 0.0;
        }
  return Box::from_table(table);
}

Box local_det_box(int alpha, int beta, int gamma, int epsilon) {
  require_bit(alpha, "alpha");
  require_bit(beta, "beta");
  require_bit(gamma, "gamma");
  require_bit(epsilon, "epsilon");
  Box::Table table{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const int a = (alpha * x) ^ beta;
      const int b = (gamma * y) ^ epsilon;
      table[Box::index(a, b, x, y)] = 1.0;
    }
  return Box::from_table(table);
}

std::array<Box, 8> all_pr_boxes() {
  return {pr_box(0, 0, 0), pr_box(0, 0, 1), pr_box(0, 1, 0), pr_box(0, 1, 1),
          pr_box(1, 0, 0), pr_box(1, 0, 1), pr_box(1, 1, 0), pr_box(1, 1, 1)};
}

std::array<Box, 16> all_local_det_boxes() {
  auto make = [](int i) { return local_det_box((i >> 3) & 1, (i >> 2) & 1, (i >> 1) & 1, i & 1); };
  return {make(0), make(1), make(2),  make(3),  make(4),  make(5),  make(6),  make(7),
          make(8), make(9), make(10), make(11), make(12), make(13), make(14), make(15)};
}

Box mix(std::span<const Box> boxes, std::span<const double> weights) {
  if (boxes.empty() || boxes.size() != weights.size()) {
    throw BadWeights("mix needs equally many boxes and weights (at least one), got " +
                     std::to_string(boxes.size()) + " boxes and " + std::to_string(weights.size()) +
                     " weights");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < -kBoxTolerance) {
      throw BadWeights("mixing weights must be nonnegative and finite");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kBoxTolerance) {
    throw BadWeights("mixing weights sum to " + std::to_string(total) + ", expected 1");
  }
  Box::Table table{};
  for (std::size_t k = 0; k < boxes.size(); ++k)
    for (std::size_t i = 0; i < Box::kSize; ++i) table[i] += weights[k] * boxes[k][i];
  return Box::from_table(table);
}

Correlators correlators(const Box& box) {
  Correlators c;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      double e = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) e += (((a ^ b) == 0) ? 1.0 : -1.0) * box(a, b, x, y);
      c.joint[x][y] = e;
    }
  for (int x = 0; x < 2; ++x) c.alice[x] = box.alice_marginal(0, x) - box.alice_marginal(1, x);
  for (int y = 0; y < 2; ++y) c.bob[y] = box.bob_marginal(0, y) - box.bob_marginal(1, y);
  return c;
}

double chsh_value(const Box& box, int alpha, int beta, int gamma) {
  require_bit(alpha, "alpha");
  require_bit(beta, "beta");
  require_bit(gamma, "gamma");
  const auto e = correlators(box).joint;
  auto sign = [](int bit) { return (bit & 1) ? -1.0 : 1.0; };
  return sign(gamma) * e[0][0] + sign(beta ^ gamma) * e[0][1] + sign(alpha ^ gamma) * e[1][0] +
         sign(alpha ^ beta ^ gamma ^ 1) * e[1][1];
}

std::array<double, 8> chsh_values(const Box& box) {
  std::array<double, 8> out{};
  for (int i = 0; i < 8; ++i) out[i] = chsh_value(box, (i >> 2) & 1, (i >> 1) & 1, i & 1);
  return out;
}

double max_chsh_value(const Box& box) {
  const auto values = chsh_values(box);
  return *std::max_element(values.begin(), values.end());
}

bool is_local(const Box& box, double tolerance) { return max_chsh_value(box) <= 2.0 + tolerance; }

double max_abs_difference(const Box& lhs, const Box& rhs) {
  double worst = 0.0;
  for (std::size_t i = 0; i < Box::kSize; ++i) worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
  return worst;
}

Box relabel(const Box& box, const Relabeling& r) {
  for (int bit : {r.swap_x, r.swap_y, r.flip_a[0], r.flip_a[1], r.flip_b[0], r.flip_b[1]}) require_bit(bit, "relabeling bit");
  Box::Table table{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          table[Box::index(a ^ r.flip_a[x], b ^ r.flip_b[y], x ^ r.swap_x, y ^ r.swap_y)] = box(a, b, x, y);
  return Box::from_table(table);
}

}  // namespace steercost
