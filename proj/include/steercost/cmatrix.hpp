#pragma once

// Small dense complex square matrices (d = 2 or 4 in practice) and the handful
// of operations the qubit code needs.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace steercost {

using Complex = std::complex<double>;
using Ket = std::vector<Complex>;

class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
  // Row-major entries; throws DimensionMismatch unless the count is a square.
  CMatrix(std::initializer_list<Complex> entries);

  static CMatrix identity(std::size_t dim);
  static CMatrix zero(std::size_t dim) { return CMatrix(dim); }

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  Complex trace() const;
  bool is_finite() const;

  CMatrix& operator+=(const CMatrix& rhs);
  CMatrix& operator-=(const CMatrix& rhs);
  CMatrix& operator*=(Complex s);

  friend CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
  friend CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }
  friend CMatrix operator*(CMatrix m, Complex s) { return m *= s; }
  friend CMatrix operator*(Complex s, CMatrix m) { return m *= s; }
  friend CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

// Largest entrywise modulus of lhs - rhs.
double max_abs_difference(const CMatrix& lhs, const CMatrix& rhs);
double hermiticity_defect(const CMatrix& m);

CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

// |psi><psi|
CMatrix projector(const Ket& psi);
Complex inner(const Ket& lhs, const Ket& rhs);  // <lhs|rhs>
Ket apply_operator(const CMatrix& m, const Ket& psi);

// Kronecker product of two qubit operators (throws DimensionMismatch otherwise).
CMatrix tensor(const CMatrix& a, const CMatrix& b);

// Reduced operators of a 4x4 operator on A (x) B.
CMatrix partial_trace_A(const CMatrix& m);
CMatrix partial_trace_B(const CMatrix& m);
CMatrix partial_transpose_B(const CMatrix& m);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  std::vector<Ket> vectors;    // orthonormal, vectors[k] pairs with values[k]
};

// Jacobi rotations on the real-symmetric embedding [[Re, -Im], [Im, Re]].
// The input is symmetrized first, so tiny anti-Hermitian noise is ignored.
HermitianEigen eigh(const CMatrix& m);

double min_eigenvalue(const CMatrix& m);

}  // namespace steercost
