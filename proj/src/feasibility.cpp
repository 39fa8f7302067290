#include "conditionh/feasibility.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include <Eigen/Eigenvalues>

#include "conditionh/error.hpp"

namespace conditionh {

namespace {

std::size_t tri_index(std::size_t a, std::size_t b, std::size_t m) {
  if (a > b) std::swap(a, b);
  return a * (2 * m - a + 1) / 2 + (b - a);
}

std::size_t tri_size(std::size_t m) { return m * (m + 1) / 2; }

/// Constraints restricted to the face G = W H W^T.
std::vector<RationalMatrix> restrict_constraints(const FeasibilityProblem& problem, const RationalMatrix& w) {
  const std::size_t m = w.cols();
  std::vector<RationalMatrix> out;
  out.reserve(problem.constraints.size());
  for (const auto& con : problem.constraints) {
    RationalMatrix a(m, m);
    for (const auto& e : con) {
      for (std::size_t x = 0; x < m; ++x) {
        if (w(e.row, x) == 0) continue;
        const Rational left = e.coef * w(e.row, x);
        for (std::size_t y = 0; y < m; ++y) {
          if (w(e.col, y) != 0) a(x, y) += left * w(e.col, y);
        }
      }
    }
    out.push_back(std::move(a));
  }
  return out;
}

/// Row i holds the coefficients of <A_i, H> on the upper-triangular entries of H.
RationalMatrix entry_matrix(const std::vector<RationalMatrix>& reduced, std::size_t m) {
  RationalMatrix c(reduced.size(), tri_size(m));
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    for (std::size_t a = 0; a < m; ++a) {
      c(i, tri_index(a, a, m)) = reduced[i](a, a);
      for (std::size_t b = a + 1; b < m; ++b) c(i, tri_index(a, b, m)) = 2 * reduced[i](a, b);
    }
  }
  return c;
}

std::vector<Rational> rational_roots(const Rational& alpha, const Rational& beta, const Rational& gamma) {
  // alpha - beta*t + gamma*t^2 = 0
  std::vector<Rational> out;
  if (gamma == 0) {
    if (beta != 0) out.push_back(alpha / beta);
    return out;
  }
  Rational disc = beta * beta - 4 * alpha * gamma;
  disc.canonicalize();
  if (disc < 0) return out;
  const mpz_class& num = disc.get_num();
  const mpz_class& den = disc.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return out;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  Rational s(sn, sd);
  s.canonicalize();
  out.push_back((beta + s) / (2 * gamma));
  if (s != 0) out.push_back((beta - s) / (2 * gamma));
  return out;
}

/// One facial-reduction step: K with H = K H' K^T on the exposed face, if found.
std::optional<RationalMatrix> exposing_step(const RationalMatrix& c, const RationalVector& hstar, std::size_t m) {
  const Rref rr = rref(c);
  const std::size_t cols = c.cols();
  std::vector<long> pivot_row(cols, -1);
  for (std::size_t j = 0; j < rr.pivot_cols.size(); ++j) pivot_row[rr.pivot_cols[j]] = static_cast<long>(j);
  std::vector<std::size_t> free_cols;
  for (std::size_t f = 0; f < cols; ++f) {
    if (pivot_row[f] < 0) free_cols.push_back(f);
  }
  // component e of the null-space vector attached to free column f
  auto nf = [&](std::size_t f, std::size_t e) -> Rational {
    if (e == f) return 1;
    if (pivot_row[e] >= 0) return -rr.reduced(static_cast<std::size_t>(pivot_row[e]), f);
    return 0;
  };

  auto drop = [&](std::size_t a) {
    RationalMatrix k(m, m - 1);
    for (std::size_t j = 0, col = 0; j < m; ++j) {
      if (j == a) continue;
      k(j, col++) = 1;
    }
    return k;
  };

  for (std::size_t a = 0; a < m; ++a) {
    const std::size_t e = tri_index(a, a, m);
    bool in_span = true;
    for (std::size_t f : free_cols) {
      if (nf(f, e) != 0) {
        in_span = false;
        break;
      }
    }
    if (in_span && hstar[e] == 0) return drop(a);
  }

  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t c2 = a + 1; c2 < m; ++c2) {
      const std::size_t eaa = tri_index(a, a, m);
      const std::size_t eac = tri_index(a, c2, m);
      const std::size_t ecc = tri_index(c2, c2, m);
      std::vector<std::array<Rational, 3>> rows;
      for (std::size_t f : free_cols) {
        std::array<Rational, 3> row{nf(f, eaa), 2 * nf(f, eac), nf(f, ecc)};
        if (row[0] != 0 || row[1] != 0 || row[2] != 0) rows.push_back(row);
      }
      std::vector<Rational> lambdas = rows.empty() ? rational_roots(hstar[eaa], 2 * hstar[eac], hstar[ecc])
                                                   : rational_roots(rows[0][0], rows[0][1], rows[0][2]);
      for (const Rational& lam : lambdas) {
        if (lam == 0) continue;
        bool ok = true;
        for (const auto& row : rows) {
          if (row[0] - row[1] * lam + row[2] * lam * lam != 0) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        if (hstar[eaa] - 2 * lam * hstar[eac] + lam * lam * hstar[ecc] != 0) continue;
        // span of v^perp for v = e_a - lam e_c
        RationalMatrix k(m, m - 1);
        for (std::size_t j = 0, col = 0; j < m; ++j) {
          if (j == a) continue;
          k(j, col) = 1;
          if (j == c2) k(a, col) = lam;
          ++col;
        }
        return k;
      }
    }
  }
  return std::nullopt;
}

struct ReducedSystem {
  RationalMatrix w;
  std::size_t m = 0;
  Eigen::MatrixXd wd;
  Eigen::MatrixXd svec_rows;  ///< constraints in scaled half-vectorisation coordinates
  Eigen::MatrixXd pinv;
  Eigen::VectorXd b;
};

ReducedSystem make_reduced(const FeasibilityProblem& problem, RationalMatrix w) {
  ReducedSystem s;
  s.m = w.cols();
  s.wd = w.to_double();
  const auto reduced = restrict_constraints(problem, w);
  s.w = std::move(w);
  const std::size_t e = tri_size(s.m);
  s.svec_rows = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(reduced.size()), static_cast<Eigen::Index>(e));
  const double r2 = std::sqrt(2.0);
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    for (std::size_t a = 0; a < s.m; ++a) {
      for (std::size_t b = a; b < s.m; ++b) {
        const double v = reduced[i](a, b).get_d();
        s.svec_rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(tri_index(a, b, s.m))) =
            a == b ? v : r2 * v;
      }
    }
  }
  s.pinv = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(s.svec_rows).pseudoInverse();
  s.b.resize(static_cast<Eigen::Index>(problem.targets.size()));
  for (std::size_t i = 0; i < problem.targets.size(); ++i) s.b(static_cast<Eigen::Index>(i)) = problem.targets[i].get_d();
  return s;
}

Eigen::VectorXd svec(const Eigen::MatrixXd& h) {
  const auto m = static_cast<std::size_t>(h.rows());
  Eigen::VectorXd out(static_cast<Eigen::Index>(tri_size(m)));
  const double r2 = std::sqrt(2.0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      const double v = h(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      out(static_cast<Eigen::Index>(tri_index(a, b, m))) = a == b ? v : r2 * v;
    }
  }
  return out;
}

Eigen::MatrixXd smat(const Eigen::VectorXd& x, std::size_t m) {
  Eigen::MatrixXd h(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  const double r2 = std::sqrt(2.0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      const double v = x(static_cast<Eigen::Index>(tri_index(a, b, m)));
      const auto ia = static_cast<Eigen::Index>(a);
      const auto ib = static_cast<Eigen::Index>(b);
      h(ia, ib) = a == b ? v : v / r2;
      h(ib, ia) = h(ia, ib);
    }
  }
  return h;
}

Eigen::MatrixXd clip(const Eigen::MatrixXd& h, double floor) {
  if (h.rows() == 0) return h;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(floor);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

double min_eig(const Eigen::MatrixXd& g) {
  if (g.rows() == 0) return 0;
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

double max_eig(const Eigen::MatrixXd& g) {
  if (g.rows() == 0) return 0;
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
}

Eigen::VectorXd affine_project(const ReducedSystem& s, const Eigen::VectorXd& y) {
  return y - s.pinv * (s.svec_rows * y - s.b);
}

double affine_residual(const FeasibilityProblem& problem, const Eigen::MatrixXd& g, const Eigen::VectorXd& b) {
  if (b.size() == 0) return 0;
  return (problem.evaluate(g) - b).cwiseAbs().maxCoeff();
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

}  // namespace

std::vector<Rational> FeasibilityProblem::evaluate(const RationalMatrix& g) const {
  if (g.rows() != dimension || g.cols() != dimension) throw DomainError("Gram matrix dimension mismatch");
  std::vector<Rational> out;
  out.reserve(constraints.size());
  for (const auto& con : constraints) {
    Rational sum = 0;
    for (const auto& e : con) sum += e.coef * g(e.row, e.col);
    out.push_back(sum);
  }
  return out;
}

Eigen::VectorXd FeasibilityProblem::evaluate(const Eigen::MatrixXd& g) const {
  if (static_cast<std::size_t>(g.rows()) != dimension || static_cast<std::size_t>(g.cols()) != dimension) {
    throw DomainError("Gram matrix dimension mismatch");
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(constraints.size()));
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    double sum = 0;
    for (const auto& e : constraints[i]) {
      sum += e.coef.get_d() * g(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col));
    }
    out(static_cast<Eigen::Index>(i)) = sum;
  }
  return out;
}

FeasibilityProblem assemble(const CaseParams& params) {
  FeasibilityProblem prob;
  prob.params = params;
  prob.dimension = binomial(params.k, params.q);
  const Rational half(1, 2);
  for (const auto& key : build_key_system(params)) {
    std::map<IndexPair, Rational> coef;
    for (const auto& [u, v] : key.pairs) {
      coef[{u, v}] += half;
      coef[{v, u}] += half;
    }
    std::vector<SymEntry> entries;
    for (const auto& [pos, c] : coef) entries.push_back({pos.first, pos.second, c});
    prob.constraints.push_back(std::move(entries));
    prob.targets.emplace_back(static_cast<unsigned long>(key.target));
  }
  return prob;
}

std::string SolveReport::summary() const {
  return std::string("status=") + (status == SolveStatus::kFeasible ? "FEASIBLE" : "STALLED") +
         " residual=" + format_double(residual) + " iterations=" + std::to_string(iterations);
}

RationalMatrix reduce_face(const FeasibilityProblem& problem) {
  RationalMatrix w = RationalMatrix::identity(problem.dimension);
  while (w.cols() > 0) {
    const std::size_t m = w.cols();
    const RationalMatrix c = entry_matrix(restrict_constraints(problem, w), m);
    const auto hstar = solve_any(c, problem.targets);
    if (!hstar) break;
    auto k = exposing_step(c, *hstar, m);
    if (!k) break;
    w = w * *k;
  }
  return w;
}

SolveReport solve(const FeasibilityProblem& problem, const SolveOptions& options) {
  if (!(options.tolerance > 0)) throw DomainError("tolerance must be positive");
  SolveReport report;
  report.params = problem.params;
  report.tolerance = options.tolerance;
  report.max_iterations = options.max_iterations;
  report.face =
      options.facial_reduction ? reduce_face(problem) : RationalMatrix::identity(problem.dimension);
  const ReducedSystem s = make_reduced(problem, report.face);
  report.reduced_dimension = s.m;

  Eigen::VectorXd x;
  if (options.seed) {
    const Eigen::MatrixXd& g0 = *options.seed;
    if (static_cast<std::size_t>(g0.rows()) != problem.dimension || g0.rows() != g0.cols()) {
      throw DomainError("seed has the wrong dimension");
    }
    const Eigen::MatrixXd wplus = (s.wd.transpose() * s.wd).ldlt().solve(s.wd.transpose());
    x = svec(wplus * g0 * wplus.transpose());
  } else {
    x = s.pinv * s.b;
  }

  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](const Eigen::MatrixXd& h, int iteration) {
    const Eigen::MatrixXd g = s.wd * h * s.wd.transpose();
    double res = affine_residual(problem, g, s.b);
    double lmin = std::numeric_limits<double>::quiet_NaN();
    if (res < options.tolerance) {
      lmin = min_eig(g);
      res = std::max(res, -lmin);
    }
    if (res < best) {
      best = res;
      report.gram = g;
      report.reduced = h;
      report.residual = res;
      report.min_eigenvalue = std::isnan(lmin) ? min_eig(g) : lmin;
    }
    report.iterations = iteration;
    return res < options.tolerance;
  };

  for (int it = 1; it <= options.max_iterations; ++it) {
    if (it == 1 && options.seed && consider(smat(x, s.m), it)) {
      report.status = SolveStatus::kFeasible;
      return report;
    }
    const Eigen::MatrixXd y = clip(smat(x, s.m), 0.0);
    if (consider(y, it)) {
      report.status = SolveStatus::kFeasible;
      return report;
    }
    x = affine_project(s, svec(y));
  }
  report.status = SolveStatus::kStalled;
  return report;
}

Rational best_rational(const Rational& x, const mpz_class& bound) {
  if (bound < 1) throw DomainError("denominator bound must be positive");
  Rational y = x;
  y.canonicalize();
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  while (true) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    const mpz_class p2 = a * p1 + p0;
    const mpz_class q2 = a * q1 + q0;
    if (q2 > bound) {
      const mpz_class t = (bound - q0) / q1;
      Rational semi(p0 + t * p1, q0 + t * q1);
      Rational conv(p1, q1);
      semi.canonicalize();
      conv.canonicalize();
      return abs(semi - x) < abs(conv - x) ? semi : conv;
    }
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (y == Rational(a)) {
      Rational out(p1, q1);
      out.canonicalize();
      return out;
    }
    y = 1 / (y - Rational(a));
  }
}

RationalizeResult rationalize_and_verify(const FeasibilityProblem& problem, const SolveReport& report) {
  if (report.status != SolveStatus::kFeasible) {
    throw PreconditionError("rationalization needs a FEASIBLE report");
  }
  RationalizeResult out;
  const ReducedSystem s = make_reduced(problem, report.face);
  const std::size_t m = s.m;

  std::vector<Eigen::MatrixXd> candidates;
  // push towards the relative interior so that rounding keeps H positive definite
  const double top = max_eig(report.reduced);
  for (int j = 1; j <= 20 && top > 0; ++j) {
    const double eps = std::ldexp(top, -j);
    Eigen::VectorXd x = svec(report.reduced);
    bool found = false;
    for (int it = 0; it < 5000; ++it) {
      x = affine_project(s, svec(clip(smat(x, m), eps)));
      if (min_eig(smat(x, m)) >= eps / 2) {
        found = true;
        break;
      }
    }
    if (found) {
      candidates.push_back(smat(x, m));
      break;
    }
  }
  candidates.push_back(report.reduced);

  const RationalMatrix c = entry_matrix(restrict_constraints(problem, s.w), m);
  const auto rows = independent_rows(c);
  RationalMatrix ci(rows.size(), c.cols());
  RationalVector bi(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < c.cols(); ++j) ci(i, j) = c(rows[i], j);
    bi[i] = problem.targets[rows[i]];
  }
  const RationalMatrix cit = ci.transpose();
  const RationalMatrix gram_rows = ci * cit;
  // (C_I C_I^T)^{-1} via one elimination on [S | I]
  RationalMatrix aug(rows.size(), 2 * rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) aug(i, j) = gram_rows(i, j);
    aug(i, rows.size() + i) = 1;
  }
  const Rref inv = rref(aug);
  RationalMatrix sinv(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) sinv(i, j) = inv.reduced(i, rows.size() + j);
  }

  for (const auto& cand : candidates) {
    for (int e = 0; e <= 20; ++e) {
      const mpz_class bound = mpz_class(1) << e;
      RationalVector h(c.cols());
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a; b < m; ++b) {
          h[tri_index(a, b, m)] =
              best_rational(Rational(cand(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b))), bound);
        }
      }
      // exact least-norm correction onto the affine set
      RationalVector resid(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        Rational acc = bi[i];
        for (std::size_t j = 0; j < c.cols(); ++j) {
          if (ci(i, j) != 0) acc -= ci(i, j) * h[j];
        }
        resid[i] = acc;
      }
      RationalVector y(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        Rational acc = 0;
        for (std::size_t j = 0; j < rows.size(); ++j) {
          if (resid[j] != 0) acc += sinv(i, j) * resid[j];
        }
        y[i] = acc;
      }
      for (std::size_t j = 0; j < c.cols(); ++j) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
          if (cit(j, i) != 0) h[j] += cit(j, i) * y[i];
        }
      }
      RationalMatrix hm(m, m);
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a; b < m; ++b) {
          hm(a, b) = h[tri_index(a, b, m)];
          hm(b, a) = hm(a, b);
        }
      }
      GramCertificate cert = GramCertificate::make(problem.params, s.w * hm * s.w.transpose());
      if (verify_certificate(cert).verified) {
        out.certificate = std::move(cert);
        out.denominator_bound = 1L << e;
        return out;
      }
    }
  }
  out.failure = "no denominator bound up to 2^20 produced an exactly verified certificate";
  return out;
}

}  // namespace conditionh
