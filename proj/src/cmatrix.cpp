#include "steercost/cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "steercost/errors.hpp"

namespace steercost {

CMatrix::CMatrix(std::initializer_list<Complex> entries) {
  const auto n = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(entries.size()))));
  if (n * n != entries.size()) {
    throw DimensionMismatch(std::to_string(entries.size()) + " entries do not form a square matrix");
  }
  dim_ = n;
  data_.assign(entries.begin(), entries.end());
}

CMatrix CMatrix::identity(std::size_t dim) {
  CMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

CMatrix CMatrix::transpose() const {
  CMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Complex CMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

bool CMatrix::is_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

namespace {

void require_same_dim(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("matrix dimensions differ: " + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
  }
}

void require_dim(const CMatrix& m, std::size_t dim, const char* what) {
  if (m.dim() != dim) {
    throw DimensionMismatch(std::string(what) + " expects a " + std::to_string(dim) + "x" +
                            std::to_string(dim) + " matrix, got " + std::to_string(m.dim()));
  }
}

}  // namespace

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
  require_same_dim(lhs, rhs);
  const std::size_t n = lhs.dim();
  CMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex l = lhs(i, k);
      if (l == Complex(0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += l * rhs(k, j);
    }
  return out;
}

double max_abs_difference(const CMatrix& lhs, const CMatrix& rhs) {
  require_same_dim(lhs, rhs);
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.dim(); ++i)
    for (std::size_t j = 0; j < lhs.dim(); ++j) worst = std::max(worst, std::abs(lhs(i, j) - rhs(i, j)));
  return worst;
}

double hermiticity_defect(const CMatrix& m) { return max_abs_difference(m, m.adjoint()); }

CMatrix pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }
CMatrix pauli_y() { return {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0}; }
CMatrix pauli_z() { return {1.0, 0.0, 0.0, -1.0}; }

CMatrix projector(const Ket& psi) {
  CMatrix out(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (std::size_t j = 0; j < psi.size(); ++j) out(i, j) = psi[i] * std::conj(psi[j]);
  return out;
}

Complex inner(const Ket& lhs, const Ket& rhs) {
  if (lhs.size() != rhs.size()) throw DimensionMismatch("kets have different dimensions");
  Complex s = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) s += std::conj(lhs[i]) * rhs[i];
  return s;
}

Ket apply_operator(const CMatrix& m, const Ket& psi) {
  if (m.dim() != psi.size()) throw DimensionMismatch("operator and ket dimensions differ");
  Ket out(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (std::size_t j = 0; j < psi.size(); ++j) out[i] += m(i, j) * psi[j];
  return out;
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  require_dim(a, 2, "tensor");
  require_dim(b, 2, "tensor");
  CMatrix out(4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

// Index convention for 4x4 operators on A (x) B: row 2*i + k, i on A, k on B.
CMatrix partial_trace_A(const CMatrix& m) {
  require_dim(m, 4, "partial_trace_A");
  CMatrix out(2);
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t l = 0; l < 2; ++l) out(k, l) = m(k, l) + m(2 + k, 2 + l);
  return out;
}

CMatrix partial_trace_B(const CMatrix& m) {
  require_dim(m, 4, "partial_trace_B");
  CMatrix out(2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) out(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
  return out;
}

CMatrix partial_transpose_B(const CMatrix& m) {
  require_dim(m, 4, "partial_transpose_B");
  CMatrix out(4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = m(2 * i + l, 2 * j + k);
  return out;
}

namespace {

// Cyclic Jacobi on a dense real symmetric matrix (row-major, n x n).
void jacobi(std::vector<double>& a, std::vector<double>& v, std::size_t n) {
  v.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        (i == j ? scale : off) += a[i * n + j] * a[i * n + j];
      }
    if (off <= 1e-30 * std::max(scale, 1e-300)) return;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p];
          const double vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
  }
  throw NumericalFailure("Jacobi eigensolver did not converge");
}

}  // namespace

HermitianEigen eigh(const CMatrix& m) {
  if (!m.is_finite()) throw InvalidOperator("eigh: matrix has non-finite entries");
  const std::size_t d = m.dim();
  const std::size_t n = 2 * d;
  const CMatrix h = 0.5 * (m + m.adjoint());
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Complex z = h(i, j);
      a[i * n + j] = z.real();
      a[i * n + d + j] = -z.imag();
      a[(d + i) * n + j] = z.imag();
      a[(d + i) * n + d + j] = z.real();
    }
  std::vector<double> v;
  jacobi(a, v, n);

  // Every eigenvalue of the embedding is doubled; the pair (u, w) and (-w, u)
  // describe the same complex vector u + i w up to a phase. Walk the real
  // eigenvectors in ascending order and keep the ones that add a new complex
  // direction.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return a[l * n + l] < a[r * n + r]; });

  HermitianEigen out;
  for (std::size_t col : order) {
    if (out.vectors.size() == d) break;
    Ket z(d);
    for (std::size_t i = 0; i < d; ++i) z[i] = Complex(v[i * n + col], v[(d + i) * n + col]);
    for (const Ket& q : out.vectors) {
      const Complex c = inner(q, z);
      for (std::size_t i = 0; i < d; ++i) z[i] -= c * q[i];
    }
    const double norm = std::sqrt(std::real(inner(z, z)));
    if (norm < 0.5) continue;
    for (auto& c : z) c /= norm;
    out.values.push_back(std::real(inner(z, apply_operator(h, z))));
    out.vectors.push_back(std::move(z));
  }
  if (out.vectors.size() != d) throw NumericalFailure("eigh: could not recover a complex eigenbasis");
  return out;
}

double min_eigenvalue(const CMatrix& m) {
  const auto e = eigh(m);
  return *std::min_element(e.values.begin(), e.values.end());
}

}  // namespace steercost
