#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "conditionh/gram.hpp"

namespace conditionh {

/// Entry (row, col, coefficient) of a symmetric constraint matrix. Both (u,v) and
/// (v,u) are listed for off-diagonal positions.
struct SymEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  Rational coef;
};

/// <A_i, G> = b_i, one per class. An ordered pair (u,v) contributes 1/2 at (u,v) and
/// 1/2 at (v,u), so <A_i, G> is the ordered-pair sum for every symmetric G.
struct FeasibilityProblem {
  CaseParams params;
  std::size_t dimension = 0;
  std::vector<std::vector<SymEntry>> constraints;
  std::vector<Rational> targets;

  /// Exact <A_i, G> for every constraint.
  std::vector<Rational> evaluate(const RationalMatrix& g) const;
  /// Floating-point version.
  Eigen::VectorXd evaluate(const Eigen::MatrixXd& g) const;
};

FeasibilityProblem assemble(const CaseParams& params);

struct SolveOptions {
  double tolerance = 1e-10;
  int max_iterations = 50000;
  /// Start from this Gram matrix instead of the least-norm affine point.
  std::optional<Eigen::MatrixXd> seed;
  /// Restrict to a face found by exact rank-one exposing vectors before iterating.
  bool facial_reduction = true;
};

enum class SolveStatus { kFeasible, kStalled };

struct SolveReport {
  SolveStatus status = SolveStatus::kStalled;
  CaseParams params;
  Eigen::MatrixXd gram;  ///< best iterate, G = W H W^T
  double residual = 0;   ///< max(affine residual, -lambda_min(G), 0)
  double min_eigenvalue = 0;
  int iterations = 0;
  double tolerance = 0;
  int max_iterations = 0;
  /// Face parametrisation: G = W H W^T with H of size reduced_dimension.
  RationalMatrix face;
  Eigen::MatrixXd reduced;
  std::size_t reduced_dimension = 0;

  /// "status=<FEASIBLE|STALLED> residual=<r> iterations=<n>"
  std::string summary() const;
};

/// Exact face W (n x m) containing every feasible G; identity when no exposing
/// vector of the searched shapes exists or the affine system is inconsistent.
RationalMatrix reduce_face(const FeasibilityProblem& problem);

/// Alternating projections between the affine set and the PSD cone.
SolveReport solve(const FeasibilityProblem& problem, const SolveOptions& options = {});

/// Best rational approximation with denominator at most bound.
Rational best_rational(const Rational& x, const mpz_class& bound);

struct RationalizeResult {
  std::optional<GramCertificate> certificate;
  std::string failure;
  long denominator_bound = 0;
};

/// Rounds a FEASIBLE report to an exactly verified certificate. Throws
/// PreconditionError when the report is STALLED.
RationalizeResult rationalize_and_verify(const FeasibilityProblem& problem, const SolveReport& report);

}  // namespace conditionh
