#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "conditionh/rational.hpp"

namespace conditionh {

struct PsdResult {
  bool psd = false;
  /// Diagonal of the LDL^T factor (only the pivots reached before stopping).
  RationalVector pivots;
  /// Set when psd is false: x with x^T G x = witness_value < 0.
  RationalVector witness;
  Rational witness_value;
};

/// Symmetric elimination without pivoting. A zero pivot requires the rest of its
/// row to vanish; otherwise a two-term witness is produced. Throws DomainError if G
/// is not square and symmetric.
PsdResult psd_exact(const RationalMatrix& g);

Rational quadratic_form(const RationalMatrix& g, const RationalVector& x);

struct Rref {
  RationalMatrix reduced;
  std::vector<std::size_t> pivot_cols;
};

/// Reduced row echelon form.
Rref rref(RationalMatrix a);

/// Indices of a maximal linearly independent set of rows, chosen greedily from the top.
std::vector<std::size_t> independent_rows(const RationalMatrix& a);

/// Solves a x = b for square nonsingular a; std::nullopt if a is singular.
std::optional<RationalVector> solve_square(const RationalMatrix& a, const RationalVector& b);

/// Some solution of a x = b, or std::nullopt when the system is inconsistent.
std::optional<RationalVector> solve_any(const RationalMatrix& a, const RationalVector& b);

}  // namespace conditionh
