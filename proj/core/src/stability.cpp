#include "hilbx/stability.hpp"

#include <gmpxx.h>

#include <cmath>
#include <cstdio>
#include <limits>

#include "hilbx/errors.hpp"
#include "hilbx/special.hpp"

namespace hilbx::stability {

FloatMatrix float_hilbert(std::size_t n) {
  FloatMatrix h{n, std::vector<double>(n * n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = 1.0 / static_cast<double>(i + j + 1);
  return h;
}

FloatMatrix float_invert_hilbert(std::size_t n) {
  if (n < 1) throw DomainError("hilbert order must be >= 1");
  FloatMatrix a = float_hilbert(n);
  FloatMatrix x{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) x(i, i) = 1.0;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::fabs(a(r, k)) > std::fabs(a(p, k))) p = r;
    if (a(p, k) == 0.0) throw NumericalBreakdown(n, k);
    if (p != k) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(k, c), a(p, c));
        std::swap(x(k, c), x(p, c));
      }
    }
    const double pivot = a(k, k);
    for (std::size_t c = 0; c < n; ++c) {
      a(k, c) /= pivot;
      x(k, c) /= pivot;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == k) continue;
      const double f = a(r, k);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) -= f * a(k, c);
        x(r, c) -= f * x(k, c);
      }
    }
  }
  return x;
}

namespace {

StabilityRow measure(std::size_t n) {
  StabilityRow row;
  row.n = n;
  FloatMatrix x;
  try {
    x = float_invert_hilbert(n);
  } catch (const NumericalBreakdown&) {
    row.breakdown = true;
    row.max_abs_err = std::numeric_limits<double>::infinity();
    row.residual = std::numeric_limits<double>::infinity();
    return row;
  }
  const auto exact = special::hilbert_inverse_integers(n);
  for (std::size_t k = 0; k < n * n; ++k) {
    // Exact difference: a finite double is a dyadic rational.
    const mpq_class diff = mpq_class(x.a[k]) - mpq_class(exact[k]);
    row.max_abs_err = std::max(row.max_abs_err, std::fabs(diff.get_d()));
  }
  const FloatMatrix h = float_hilbert(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += h(i, k) * x(k, j);
      row.residual = std::max(row.residual, std::fabs(acc - (i == j ? 1.0 : 0.0)));
    }
  }
  return row;
}

}  // namespace

StabilityReport stability_report(std::size_t n_max) {
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  StabilityReport rep;
  for (std::size_t n = 1; n <= n_max; ++n) rep.rows.push_back(measure(n));
  double first = 0;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    if (i > 0 && rep.rows[i].max_abs_err > rep.rows[i - 1].max_abs_err) ++rep.increasing_steps;
    if (first == 0 && rep.rows[i].max_abs_err > 0) first = rep.rows[i].max_abs_err;
  }
  rep.growth = first > 0 ? rep.rows.back().max_abs_err / first : 0;
  return rep;
}

std::string format_table(const StabilityReport& report) {
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%4s  %14s  %14s\n", "n", "max_abs_err", "residual");
  out += buf;
  for (const auto& r : report.rows) {
    if (r.breakdown)
      std::snprintf(buf, sizeof buf, "%4zu  %14s  %14s\n", r.n, "breakdown", "breakdown");
    else
      std::snprintf(buf, sizeof buf, "%4zu  %14.6e  %14.6e\n", r.n, r.max_abs_err, r.residual);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "error grew on %zu of %zu steps; overall growth %.3e\n", report.increasing_steps,
                report.rows.empty() ? std::size_t{0} : report.rows.size() - 1, report.growth);
  out += buf;
  return out;
}

std::string format_csv(const StabilityReport& report) {
  std::string out = "n,max_abs_err,residual\n";
  char buf[128];
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", r.n, r.max_abs_err, r.residual);
    out += buf;
  }
  return out;
}

}  // namespace hilbx::stability
