#include "hilbx/special.hpp"

#include <string>

#include "hilbx/errors.hpp"

namespace hilbx::special {

namespace {

std::string idx(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

void check_shape(const SpecialSpec& s) {
  switch (s.family) {
    case Family::Hilbert:
      if (s.n < 1) throw DomainError("hilbert order must be >= 1");
      break;
    case Family::Cauchy:
      if (s.x.empty() || s.x.size() != s.y.size() || s.n != s.x.size())
        throw DomainError("cauchy needs equal-length, nonempty x and y");
      break;
    case Family::Vandermonde:
      if (s.x.empty() || s.n != s.x.size()) throw DomainError("vandermonde needs nonempty x");
      break;
    case Family::Combinatorial:
      if (s.n < 1) throw DomainError("combinatorial order must be >= 1");
      if (s.x.size() != 1 || s.y.size() != 1) throw DomainError("combinatorial needs scalar x and y");
      break;
  }
}

void check_cauchy_entries(const SpecialSpec& s) {
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t j = 0; j < s.n; ++j)
      if ((s.x[i] + s.y[j]).is_zero()) throw DomainError("cauchy entry " + idx(i, j) + " has x_i + y_j = 0");
}

void check_distinct(const std::vector<Rational>& v, std::string_view what) {
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] == v[j])
        throw DomainError(std::string(what) + " entries " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                          " coincide");
}

Rational pow(const Rational& base, std::size_t e) {
  Rational r(1);
  for (std::size_t k = 0; k < e; ++k) r *= base;
  return r;
}

Rational hilbert_det(std::size_t n) {
  BigInt num = 1;
  BigInt den = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      den *= static_cast<unsigned long>(i + j - 1);
      if (i < j) num *= static_cast<unsigned long>((j - i) * (j - i));
    }
  }
  return Rational::canonical(num, den);
}

Rational cauchy_det(const SpecialSpec& s) {
  check_cauchy_entries(s);
  Rational num(1);
  Rational den(1);
  for (std::size_t i = 0; i < s.n; ++i) {
    for (std::size_t j = 0; j < s.n; ++j) {
      den *= s.x[i] + s.y[j];
      if (i < j) num *= (s.x[j] - s.x[i]) * (s.y[j] - s.y[i]);
    }
  }
  return num / den;
}

Rational vandermonde_det(const SpecialSpec& s) {
  Rational d(1);
  for (std::size_t j = 0; j < s.n; ++j) {
    d *= s.x[j];
    for (std::size_t i = 0; i < j; ++i) d *= s.x[j] - s.x[i];
  }
  return d;
}

Rational combinatorial_det(const SpecialSpec& s) {
  const Rational& x = s.x[0];
  const Rational& y = s.y[0];
  return pow(x, s.n - 1) * (x + Rational(static_cast<std::int64_t>(s.n)) * y);
}

Matrix cauchy_inv(const SpecialSpec& s) {
  check_cauchy_entries(s);
  check_distinct(s.x, "cauchy x");
  check_distinct(s.y, "cauchy y");
  const std::size_t n = s.n;
  // b_ij = prod_k (x_j + y_k)(x_k + y_i) / ((x_j + y_i) prod_{k!=j} (x_j - x_k) prod_{k!=i} (y_i - y_k))
  std::vector<Rational> row_x(n, Rational(1)), col_y(n, Rational(1)), dx(n, Rational(1)), dy(n, Rational(1));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t k = 0; k < n; ++k) {
      row_x[a] *= s.x[a] + s.y[k];
      col_y[a] *= s.x[k] + s.y[a];
      if (k != a) {
        dx[a] *= s.x[a] - s.x[k];
        dy[a] *= s.y[a] - s.y[k];
      }
    }
  }
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      b(i, j) = row_x[j] * col_y[i] / ((s.x[j] + s.y[i]) * dx[j] * dy[i]);
  return b;
}

Matrix vandermonde_inv(const SpecialSpec& s) {
  check_distinct(s.x, "vandermonde x");
  for (std::size_t i = 0; i < s.n; ++i)
    if (s.x[i].is_zero()) throw DomainError("vandermonde node " + std::to_string(i + 1) + " is zero");
  const std::size_t n = s.n;

  // p(t) = prod_k (x_k - t), coefficients low to high.
  std::vector<Rational> p{Rational(1)};
  for (const auto& xk : s.x) {
    std::vector<Rational> next(p.size() + 1);
    for (std::size_t r = 0; r < p.size(); ++r) {
      next[r] += xk * p[r];
      next[r + 1] -= p[r];
    }
    p = std::move(next);
  }

  Matrix b(n, n);
  std::vector<Rational> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational& xi = s.x[i];
    // q(t) = p(t) / (x_i - t), by synthetic division from the leading term.
    q[n - 1] = -p[n];
    for (std::size_t r = n - 1; r > 0; --r) q[r - 1] = xi * q[r] - p[r];
    Rational denom = xi;
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) denom *= s.x[k] - xi;
    for (std::size_t j = 0; j < n; ++j) b(i, j) = q[j] / denom;
  }
  return b;
}

Matrix combinatorial_inv(const SpecialSpec& s) {
  const Rational& x = s.x[0];
  const Rational& y = s.y[0];
  const Rational shifted = x + Rational(static_cast<std::int64_t>(s.n)) * y;
  if (x.is_zero()) throw DomainError("combinatorial matrix with x = 0 is singular");
  if (shifted.is_zero()) throw DomainError("combinatorial matrix with x + n*y = 0 is singular");
  const Rational denom = x * shifted;
  const Rational off = -y / denom;
  const Rational diag = (shifted - y) / denom;
  Matrix b(s.n, s.n);
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t j = 0; j < s.n; ++j) b(i, j) = i == j ? diag : off;
  return b;
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Hilbert: return "hilbert";
    case Family::Cauchy: return "cauchy";
    case Family::Vandermonde: return "vandermonde";
    case Family::Combinatorial: return "comb";
  }
  return "?";
}

SpecialSpec SpecialSpec::hilbert(std::size_t n) { return {Family::Hilbert, n, {}, {}}; }

SpecialSpec SpecialSpec::cauchy(std::vector<Rational> x, std::vector<Rational> y) {
  const auto n = x.size();
  return {Family::Cauchy, n, std::move(x), std::move(y)};
}

SpecialSpec SpecialSpec::vandermonde(std::vector<Rational> x) {
  const auto n = x.size();
  return {Family::Vandermonde, n, std::move(x), {}};
}

SpecialSpec SpecialSpec::combinatorial(std::size_t n, Rational x, Rational y) {
  return {Family::Combinatorial, n, {std::move(x)}, {std::move(y)}};
}

Matrix build(const SpecialSpec& spec) {
  check_shape(spec);
  const std::size_t n = spec.n;
  Matrix a(n, n);
  switch (spec.family) {
    case Family::Hilbert:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = Rational::canonical(1, static_cast<unsigned long>(i + j + 1));
      break;
    case Family::Cauchy:
      check_cauchy_entries(spec);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = Rational(1) / (spec.x[i] + spec.y[j]);
      break;
    case Family::Vandermonde:
      for (std::size_t j = 0; j < n; ++j) {
        Rational power = spec.x[j];
        for (std::size_t i = 0; i < n; ++i) {
          a(i, j) = power;
          power *= spec.x[j];
        }
      }
      break;
    case Family::Combinatorial:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = i == j ? spec.y[0] + spec.x[0] : spec.y[0];
      break;
  }
  return a;
}

Rational closed_det(const SpecialSpec& spec) {
  check_shape(spec);
  switch (spec.family) {
    case Family::Hilbert: return hilbert_det(spec.n);
    case Family::Cauchy: return cauchy_det(spec);
    case Family::Vandermonde: return vandermonde_det(spec);
    case Family::Combinatorial: return combinatorial_det(spec);
  }
  throw DomainError("unknown matrix family");
}

std::vector<BigInt> hilbert_inverse_integers(std::size_t n) {
  if (n < 1) throw DomainError("hilbert order must be >= 1");
  // numer_i = prod_{k=0}^{n-1} (i+k),  denom_i = prod_{k!=i} (i-k)
  std::vector<BigInt> r(n);
  BigInt numer = 1;
  for (std::size_t k = 1; k <= n; ++k) numer *= static_cast<unsigned long>(k);
  BigInt denom = 1;
  for (std::size_t k = 2; k <= n; ++k) denom *= -static_cast<long>(k - 1);
  for (std::size_t i = 1; i <= n; ++i) {
    mpz_divexact(r[i - 1].get_mpz_t(), numer.get_mpz_t(), denom.get_mpz_t());
    if (i == n) break;
    numer *= static_cast<unsigned long>(i + n);
    mpz_divexact_ui(numer.get_mpz_t(), numer.get_mpz_t(), i);
    denom *= -static_cast<long>(i);
    mpz_divexact_ui(denom.get_mpz_t(), denom.get_mpz_t(), n - i);
  }

  std::vector<BigInt> out(n * n);
  BigInt t;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      t = r[i] * r[j];
      mpz_divexact_ui(out[i * n + j].get_mpz_t(), t.get_mpz_t(), i + j + 1);
      if (j != i) out[j * n + i] = out[i * n + j];
    }
  }
  return out;
}

Matrix closed_inv(const SpecialSpec& spec) {
  check_shape(spec);
  switch (spec.family) {
    case Family::Hilbert: {
      auto ints = hilbert_inverse_integers(spec.n);
      std::vector<Rational> entries;
      entries.reserve(ints.size());
      for (auto& v : ints) entries.emplace_back(v);
      return Matrix(spec.n, spec.n, std::move(entries));
    }
    case Family::Cauchy: return cauchy_inv(spec);
    case Family::Vandermonde: return vandermonde_inv(spec);
    case Family::Combinatorial: return combinatorial_inv(spec);
  }
  throw DomainError("unknown matrix family");
}

}  // namespace hilbx::special
