#pragma once

// Two-input/two-output bipartite correlation boxes p(ab|xy).
//
// Flat layout: idx = ((x*2 + y)*2 + a)*2 + b, so the four entries of one
// setting pair (x,y) are contiguous. Every Box is validated when it is built
// (nonnegativity, per-setting normalization, nonsignaling); downstream code
// relies on those invariants without rechecking them.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace steercost {

inline constexpr double kBoxTolerance = 1e-9;

class Box {
 public:
  static constexpr std::size_t kSize = 16;
  using Table = std::array<double, kSize>;

  static constexpr std::size_t index(int a, int b, int x, int y) {
    return static_cast<std::size_t>(((x * 2 + y) * 2 + a) * 2 + b);
  }

  // Validating constructor. Throws NegativeEntry, NotNormalized or
  // SignalingDetected.
  static Box from_table(const Table& table, double tolerance = kBoxTolerance);

  // p(ab|xy)
  double operator()(int a, int b, int x, int y) const { return table_[index(a, b, x, y)]; }
  double operator[](std::size_t i) const { return table_[i]; }

  const Table& table() const { return table_; }

  // Marginals p(a|x) and p(b|y). Well defined because the box is nonsignaling.
  double alice_marginal(int a, int x) const;
  double bob_marginal(int b, int y) const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  explicit Box(const Table& table) : table_(table) {}
  Table table_{};
};

// make_box: accepts exactly 16 entries in the documented index order.
Box make_box(std::span<const double> entries);

// The maximally mixed box P_N.
Box uniform_box();

// PR box: 1/2 where a xor b = x*y xor alpha*x xor beta*y xor gamma.
Box pr_box(int alpha, int beta, int gamma);

// Local-deterministic box: a = alpha*x xor beta, b = gamma*y xor epsilon.
Box local_det_box(int alpha, int beta, int gamma, int epsilon);

// The 8 PR boxes in (alpha,beta,gamma) binary order and the 16 deterministic
// boxes in (alpha,beta,gamma,epsilon) binary order.
std::array<Box, 8> all_pr_boxes();
std::array<Box, 16> all_local_det_boxes();

// Entrywise convex combination; throws BadWeights.
Box mix(std::span<const Box> boxes, std::span<const double> weights);

struct Correlators {
  // E[x][y] = sum_ab (-1)^(a xor b) p(ab|xy)
  std::array<std::array<double, 2>, 2> joint{};
  std::array<double, 2> alice{};  // <A_x>
  std::array<double, 2> bob{};    // <B_y>
};

Correlators correlators(const Box& box);

// The CHSH expression B_{alpha beta gamma}; the local bound is 2.
double chsh_value(const Box& box, int alpha, int beta, int gamma);

// All eight forms, indexed by (alpha*4 + beta*2 + gamma).
std::array<double, 8> chsh_values(const Box& box);

double max_chsh_value(const Box& box);

// True iff no CHSH form exceeds 2 (+ tolerance).
bool is_local(const Box& box, double tolerance = kBoxTolerance);

double max_abs_difference(const Box& lhs, const Box& rhs);

// Local relabeling: the entry at (a,b,x,y) moves to
// (a ^ flip_a[x], b ^ flip_b[y], x ^ swap_x, y ^ swap_y).
struct Relabeling {
  int swap_x = 0;
  int swap_y = 0;
  std::array<int, 2> flip_a{};
  std::array<int, 2> flip_b{};
};

Box relabel(const Box& box, const Relabeling& r);

}  // namespace steercost
