#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "hilbx/matrix.hpp"
#include "hilbx/rational.hpp"

namespace hilbx::special {

enum class Family { Hilbert, Cauchy, Vandermonde, Combinatorial };

std::string_view family_name(Family f);

/// Parameters of one special-matrix family. All formulas index from 1.
///
///   Hilbert        a_ij = 1 / (i + j - 1)
///   Cauchy         a_ij = 1 / (x_i + y_j)
///   Vandermonde    a_ij = x_j ^ i,  i = 1..n
///   Combinatorial  a_ij = y + [i == j] x
struct SpecialSpec {
  Family family = Family::Hilbert;
  std::size_t n = 0;
  std::vector<Rational> x;  // Combinatorial: single element holding x
  std::vector<Rational> y;  // Combinatorial: single element holding y

  static SpecialSpec hilbert(std::size_t n);
  static SpecialSpec cauchy(std::vector<Rational> x, std::vector<Rational> y);
  static SpecialSpec vandermonde(std::vector<Rational> x);
  static SpecialSpec combinatorial(std::size_t n, Rational x, Rational y);
};

/// Explicit matrix. Throws DomainError naming (i,j) when a Cauchy entry has
/// x_i + y_j = 0, or when the SpecialSpec is structurally malformed.
Matrix build(const SpecialSpec& spec);

/// Closed-form determinant of build(spec).
Rational closed_det(const SpecialSpec& spec);

/// Closed-form inverse of build(spec). Degenerate parameters (repeated nodes,
/// zero Vandermonde node, x = 0 or x + n y = 0) are rejected with DomainError
/// before any arithmetic.
Matrix closed_inv(const SpecialSpec& spec);

/// Integer entries of the inverse Hilbert matrix of order n, row-major.
///
/// Uses R_i = prod_{k=0}^{n-1} (i+k) / prod_{k!=i} (i-k), advanced from i to
/// i+1 by a constant number of multiplications, so that
/// (H^-1)_ij = R_i R_j / (i + j - 1) exactly.
std::vector<BigInt> hilbert_inverse_integers(std::size_t n);

}  // namespace hilbx::special
