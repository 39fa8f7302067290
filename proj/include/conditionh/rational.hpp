#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace conditionh {

/// Exact rational, always kept in lowest terms with a positive denominator.
using Rational = mpq_class;

/// Accepts "a" or "a/b" with optional leading '-'. Throws ParseError.
Rational parse_rational(std::string_view text);

/// "a" when the denominator is 1, "a/b" otherwise.
std::string to_string(const Rational& x);

/// Dense row-major matrix of rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_double(const Eigen::MatrixXd& m);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RationalMatrix transpose() const;
  bool is_symmetric() const;
  Eigen::MatrixXd to_double() const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

using RationalVector = std::vector<Rational>;

}  // namespace conditionh
