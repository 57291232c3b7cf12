#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hilbx::stability {

/// Row-major binary64 square matrix.
struct FloatMatrix {
  std::size_t n = 0;
  std::vector<double> a;

  double operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }
  double& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
};

/// Every pivot candidate in a column was exactly 0.0.
class NumericalBreakdown : public std::runtime_error {
 public:
  NumericalBreakdown(std::size_t n, std::size_t column)
      : std::runtime_error("numerically singular pivot in column " + std::to_string(column + 1) +
                           " at order " + std::to_string(n)),
        column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

FloatMatrix float_hilbert(std::size_t n);

/// Gauss-Jordan with partial pivoting in binary64 on the rounded H_n. Ties
/// between equal |pivot| candidates go to the first (lowest) row.
FloatMatrix float_invert_hilbert(std::size_t n);

struct StabilityRow {
  std::size_t n = 0;
  double max_abs_err = 0;  // max |X_float - H^-1| against the exact integers
  double residual = 0;     // max |H X_float - I| evaluated in binary64
  bool breakdown = false;
};

struct StabilityReport {
  std::vector<StabilityRow> rows;
  std::size_t increasing_steps = 0;  // n -> n+1 transitions where the error grew
  double growth = 0;                 // err(n_max) / err(first n with nonzero error)
};

StabilityReport stability_report(std::size_t n_max);

std::string format_table(const StabilityReport& report);
/// Header "n,max_abs_err,residual", one row per order, %.17g values.
std::string format_csv(const StabilityReport& report);

}  // namespace hilbx::stability
