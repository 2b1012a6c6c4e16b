#pragma once

// Small dense exact linear algebra over Z and Q.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

namespace morseq::linalg {

using Rational = mpq_class;
using Vector = std::vector<Rational>;

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<mpz_class>;
using QMatrix = Matrix<Rational>;

/// Rank by fraction-free (Bareiss) elimination; exact on integer matrices.
std::size_t rank(const IntMatrix& m);
/// Rank of the submatrix on the given rows and columns.
std::size_t rank(const IntMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols);

std::size_t rank(const QMatrix& m);

QMatrix to_rational(const IntMatrix& m);
QMatrix multiply(const QMatrix& a, const QMatrix& b);
Vector apply(const QMatrix& m, const Vector& x);
bool is_zero(const QMatrix& m);
bool is_zero(const Vector& v);

/// Basis of {x : m x = 0}.
std::vector<Vector> kernel(const QMatrix& m);

/// Inverse of a square matrix, if invertible.
std::optional<QMatrix> inverse(const QMatrix& m);

/// Linearly independent subfamily spanning the same space, in input order.
std::vector<Vector> independent_span(const std::vector<Vector>& vectors, std::size_t dim);

/// Vectors from `candidates` that extend a basis of span(base) to a basis of
/// span(base + candidates).
std::vector<Vector> extend_basis(const std::vector<Vector>& base, const std::vector<Vector>& candidates,
                                 std::size_t dim);

/// Coefficients a with sum a_i columns[i] = y, if y lies in their span
/// (columns assumed independent).
std::optional<Vector> solve(const std::vector<Vector>& columns, const Vector& y, std::size_t dim);

}  // namespace morseq::linalg
