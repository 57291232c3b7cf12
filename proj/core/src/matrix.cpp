#include "hilbx/matrix.hpp"

#include <sstream>
#include <utility>

namespace hilbx {

namespace {

void require_nonempty(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw DomainError("matrix dimensions must be positive");
}

std::string dims(const Matrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  require_nonempty(rows, cols);
  entries_.resize(rows * cols);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  require_nonempty(rows, cols);
  if (entries_.size() != rows * cols) {
    throw DomainError("matrix entry count " + std::to_string(entries_.size()) + " does not match " +
                      std::to_string(rows) + "x" + std::to_string(cols));
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::column(std::vector<Rational> entries) {
  const auto n = entries.size();
  return Matrix(n, 1, std::move(entries));
}

Matrix Matrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) throw DomainError("matrix dimensions must be positive");
  const auto cols = rows.front().size();
  std::vector<Rational> entries;
  entries.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw DomainError("ragged matrix rows");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return Matrix(rows.size(), cols, std::move(entries));
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

std::string Matrix::pretty() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ',';
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ',';
      const auto& e = (*this)(r, c);
      if (e.is_integer())
        os << e.num_ref().get_str(10);
      else
        os << e.str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DomainError("cannot multiply " + dims(a) + " by " + dims(b));
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      mpq_class acc(0);
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k).raw() * b(k, j).raw();
      out(i, j) = Rational::canonical(acc.get_num(), acc.get_den());
    }
  }
  return out;
}

Matrix add(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("cannot add " + dims(a) + " and " + dims(b));
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

Rational determinant(const Matrix& a) {
  if (!a.is_square()) throw DomainError("determinant of non-square " + dims(a) + " matrix");
  const std::size_t n = a.rows();

  // Scale each row by the lcm of its denominators; det(a) = det(m) / prod(scale).
  std::vector<mpz_class> m(n * n);
  mpz_class scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).den_ref().get_mpz_t());
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = a(i, j).num_ref() * (l / a(i, j).den_ref());
    scale *= l;
  }

  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k * n + k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p * n + k] == 0) ++p;
      if (p == n) return Rational(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[p * n + j]);
      sign = -sign;
    }
    const mpz_class& pivot = m[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = m[i * n + j] * pivot - m[i * n + k] * m[k * n + j];
        mpz_divexact(m[i * n + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i * n + k] = 0;
    }
    prev = pivot;
  }
  mpz_class det = m[n * n - 1];
  if (sign < 0) det = -det;
  return Rational::canonical(det, scale);
}

Matrix inverse(const Matrix& a) {
  if (!a.is_square()) throw DomainError("inverse of non-square " + dims(a) + " matrix");
  const std::size_t n = a.rows();
  Matrix work = a;
  Matrix inv = Matrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && work(p, k).is_zero()) ++p;
    if (p == n) throw SingularMatrixError(Rational(0));
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(work(k, j), work(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    }
    const Rational pivot = work(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      work(k, j) /= pivot;
      inv(k, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || work(i, k).is_zero()) continue;
      const Rational f = work(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        if (!work(k, j).is_zero()) work(i, j) -= f * work(k, j);
        if (!inv(k, j).is_zero()) inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

}  // namespace hilbx
