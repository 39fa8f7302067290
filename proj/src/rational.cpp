#include "conditionh/rational.hpp"

#include <cctype>

#include "conditionh/error.hpp"

namespace conditionh {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational");
  std::size_t i = (s[0] == '-') ? 1 : 0;
  bool slash = false;
  bool digits_before = false;
  bool digits_after = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/' && !slash) {
      slash = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      (slash ? digits_after : digits_before) = true;
    } else {
      throw ParseError("not a rational: '" + s + "'");
    }
  }
  if (!digits_before || (slash && !digits_after)) throw ParseError("not a rational: '" + s + "'");
  Rational out;
  if (out.set_str(s, 10) != 0) throw ParseError("not a rational: '" + s + "'");
  if (out.get_den() == 0) throw ParseError("zero denominator: '" + s + "'");
  out.canonicalize();
  return out;
}

std::string to_string(const Rational& x) {
  Rational c = x;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_str();
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

RationalMatrix RationalMatrix::from_double(const Eigen::MatrixXd& m) {
  RationalMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Rational(m(i, j));
    }
  }
  return out;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

bool RationalMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

Eigen::MatrixXd RationalMatrix::to_double() const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).get_d();
    }
  }
  return out;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("matrix product dimension mismatch");
  RationalMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t l = 0; l < a.cols_; ++l) {
      const Rational& x = a(i, l);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += x * b(l, j);
    }
  }
  return out;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix sum dimension mismatch");
  RationalMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

}  // namespace conditionh
