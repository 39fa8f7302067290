#include "conditionh/exact_linalg.hpp"

#include <utility>

#include "conditionh/error.hpp"

namespace conditionh {

Rational quadratic_form(const RationalMatrix& g, const RationalVector& x) {
  if (g.rows() != x.size() || g.cols() != x.size()) throw DomainError("quadratic form dimension mismatch");
  Rational total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < x.size(); ++j) row += g(i, j) * x[j];
    total += x[i] * row;
  }
  return total;
}

PsdResult psd_exact(const RationalMatrix& g) {
  if (!g.is_symmetric()) throw DomainError("psd_exact needs a square symmetric matrix");
  const std::size_t n = g.rows();
  // Invariant: s = e g e^T, e unit lower triangular.
  RationalMatrix s = g;
  RationalMatrix e = RationalMatrix::identity(n);
  PsdResult out;

  auto row_of_e = [&](std::size_t k) {
    RationalVector x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = e(k, j);
    return x;
  };

  for (std::size_t k = 0; k < n; ++k) {
    const Rational pivot = s(k, k);
    out.pivots.push_back(pivot);
    if (pivot < 0) {
      out.witness = row_of_e(k);
      out.witness_value = quadratic_form(g, out.witness);
      return out;
    }
    if (pivot == 0) {
      for (std::size_t j = k + 1; j < n; ++j) {
        if (s(k, j) == 0) continue;
        // y = t e_k + e_j has y^T s y = 2 t s_kj + s_jj = -1
        Rational t = -(s(j, j) + 1) / (2 * s(k, j));
        RationalVector x(n);
        for (std::size_t c = 0; c < n; ++c) x[c] = t * e(k, c) + e(j, c);
        out.witness = std::move(x);
        out.witness_value = quadratic_form(g, out.witness);
        return out;
      }
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (s(i, k) == 0) continue;
      const Rational f = s(i, k) / pivot;
      for (std::size_t j = k + 1; j < n; ++j) s(i, j) -= f * s(k, j);
      for (std::size_t c = 0; c < n; ++c) e(i, c) -= f * e(k, c);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      s(i, k) = 0;
      s(k, i) = 0;
    }
  }
  out.psd = true;
  return out;
}

Rref rref(RationalMatrix a) {
  Rref out;
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t pick = row;
    while (pick < m && a(pick, col) == 0) ++pick;
    if (pick == m) continue;
    if (pick != row) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pick, j), a(row, j));
    }
    const Rational inv = 1 / a(row, col);
    for (std::size_t j = col; j < n; ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || a(i, col) == 0) continue;
      const Rational f = a(i, col);
      for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(row, j);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

std::vector<std::size_t> independent_rows(const RationalMatrix& a) { return rref(a.transpose()).pivot_cols; }

namespace {

RationalMatrix augment(const RationalMatrix& a, const RationalVector& b) {
  if (b.size() != a.rows()) throw DomainError("right-hand side dimension mismatch");
  RationalMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  return aug;
}

}  // namespace

std::optional<RationalVector> solve_any(const RationalMatrix& a, const RationalVector& b) {
  const std::size_t n = a.cols();
  Rref r = rref(augment(a, b));
  RationalVector x(n, Rational(0));
  for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) {
    if (r.pivot_cols[i] == n) return std::nullopt;
    x[r.pivot_cols[i]] = r.reduced(i, n);
  }
  return x;
}

std::optional<RationalVector> solve_square(const RationalMatrix& a, const RationalVector& b) {
  if (a.rows() != a.cols()) throw DomainError("solve_square needs a square matrix");
  Rref r = rref(augment(a, b));
  if (r.pivot_cols.size() != a.rows() || (!r.pivot_cols.empty() && r.pivot_cols.back() == a.cols())) {
    return std::nullopt;
  }
  RationalVector x(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) x[i] = r.reduced(i, a.cols());
  return x;
}

}  // namespace conditionh
