#include "morseq/linalg.hpp"

#include <algorithm>
#include <utility>

#include "morseq/errors.hpp"

namespace morseq::linalg {

std::size_t rank(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix a = m;
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(pivot, j), a(r, j));
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a(i, j) = (a(r, c) * a(i, j) - a(i, c) * a(r, j)) / prev;
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

std::size_t rank(const IntMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  IntMatrix sub(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) sub(i, j) = m(rows[i], cols[j]);
  }
  return rank(sub);
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    }
    const Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

QMatrix from_columns(const std::vector<Vector>& columns, std::size_t dim) {
  QMatrix m(dim, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != dim) throw InvalidInput("vector length mismatch in linear algebra");
    for (std::size_t i = 0; i < dim; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

}  // namespace

std::size_t rank(const QMatrix& m) {
  QMatrix a = m;
  return rref(a).size();
}

QMatrix to_rational(const IntMatrix& m) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rational(m(i, j));
  }
  return q;
}

QMatrix multiply(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("matrix shape mismatch in product");
  QMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  }
  return c;
}

Vector apply(const QMatrix& m, const Vector& x) {
  if (m.cols() != x.size()) throw InvalidInput("matrix shape mismatch in apply");
  Vector y(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (x[j] != 0) y[i] += m(i, j) * x[j];
    }
  }
  return y;
}

bool is_zero(const QMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0) return false;
    }
  }
  return true;
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

std::vector<Vector> kernel(const QMatrix& m) {
  QMatrix a = m;
  const auto pivots = rref(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector x(m.cols());
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -a(r, free);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw InvalidInput("inverse of a non-square matrix");
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  }
  return inv;
}

std::vector<Vector> independent_span(const std::vector<Vector>& vectors, std::size_t dim) {
  return extend_basis({}, vectors, dim);
}

std::vector<Vector> extend_basis(const std::vector<Vector>& base, const std::vector<Vector>& candidates,
                                 std::size_t dim) {
  // Incremental echelon: keep reduced copies with their pivot column.
  std::vector<std::pair<std::size_t, Vector>> echelon;
  auto reduce = [&](Vector v) {
    for (const auto& [pc, row] : echelon) {
      if (v[pc] == 0) continue;
      const Rational f = v[pc] / row[pc];
      for (std::size_t j = 0; j < dim; ++j) v[j] -= f * row[j];
    }
    return v;
  };
  auto insert = [&](const Vector& v) {
    if (v.size() != dim) throw InvalidInput("vector length mismatch in linear algebra");
    Vector r = reduce(v);
    for (std::size_t j = 0; j < dim; ++j) {
      if (r[j] != 0) {
        echelon.emplace_back(j, std::move(r));
        return true;
      }
    }
    return false;
  };
  for (const auto& b : base) insert(b);
  std::vector<Vector> added;
  for (const auto& c : candidates) {
    if (insert(c)) added.push_back(c);
  }
  return added;
}

std::optional<Vector> solve(const std::vector<Vector>& columns, const Vector& y, std::size_t dim) {
  const std::size_t n = columns.size();
  QMatrix aug = from_columns(columns, dim);
  QMatrix full(dim, n + 1);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < n; ++j) full(i, j) = aug(i, j);
    full(i, n) = y[i];
  }
  const auto pivots = rref(full);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  Vector x(n);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = full(r, n);
  return x;
}

}  // namespace morseq::linalg
