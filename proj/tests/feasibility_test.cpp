#include <doctest.h>

#include <random>

#include "conditionh/error.hpp"
#include "conditionh/feasibility.hpp"

using namespace conditionh;

namespace {

FeasibilityProblem problem(int p, int r) { return assemble(CaseParams::make(p, r)); }

}  // namespace

TEST_CASE("assemble") {
  auto a = problem(5, 3);
  CHECK(a.dimension == 2);
  CHECK(a.constraints.size() == 2);
  CHECK(a.targets == std::vector<Rational>{5, 5});
  auto b = problem(9, 3);
  CHECK(b.dimension == 4);
  CHECK(b.constraints.size() == 10);
  auto c = problem(11, 3);
  CHECK(c.dimension == 5);
  for (const auto& t : c.targets) CHECK(t == 11);

  for (const auto& con : b.constraints) {
    for (const auto& e : con) {
      bool mirrored = false;
      for (const auto& f : con) mirrored |= f.row == e.col && f.col == e.row && f.coef == e.coef;
      CHECK(mirrored);
    }
  }
}

TEST_CASE("assembled functionals equal ordered-pair sums") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 7);
  const std::vector<std::pair<int, int>> cases{{5, 3}, {7, 3}, {9, 3}, {9, 5}, {8, 3}, {10, 5}, {11, 3}, {12, 7}};
  for (int trial = 0; trial < 50; ++trial) {
    auto [p, r] = cases[static_cast<std::size_t>(trial) % cases.size()];
    auto params = CaseParams::make(p, r);
    auto prob = assemble(params);
    RationalMatrix g(prob.dimension, prob.dimension);
    for (std::size_t i = 0; i < prob.dimension; ++i) {
      for (std::size_t j = i; j < prob.dimension; ++j) {
        g(i, j) = Rational(num(rng), den(rng));
        g(i, j).canonicalize();
        g(j, i) = g(i, j);
      }
    }
    auto key = verify_key(GramCertificate::make(params, g));
    CHECK(prob.evaluate(g) == key.sums);
    auto approx = prob.evaluate(g.to_double());
    for (std::size_t i = 0; i < key.sums.size(); ++i) {
      CHECK(approx(static_cast<Eigen::Index>(i)) == doctest::Approx(key.sums[i].get_d()).epsilon(1e-12));
    }
  }
}

TEST_CASE("best rational approximation") {
  CHECK(best_rational(Rational(0.3333333333), 10) == Rational(1, 3));
  CHECK(best_rational(Rational(3.141592653589793), 7) == Rational(22, 7));
  CHECK(best_rational(Rational(3.141592653589793), 1000) == Rational(355, 113));
  CHECK(best_rational(Rational(-2.4), 1) == Rational(-2));
  CHECK(best_rational(Rational(5, 1), 1) == Rational(5));
  CHECK(best_rational(Rational(0.0), 4) == Rational(0));
  CHECK_THROWS_AS(best_rational(Rational(1, 2), 0), DomainError);
  // exhaustive oracle on small denominators
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int t = 0; t < 100; ++t) {
    const Rational x(u(rng));
    for (int bound : {1, 2, 5, 16, 37}) {
      const Rational got = best_rational(x, bound);
      CHECK(got.get_den() <= bound);
      for (int d = 1; d <= bound; ++d) {
        Rational scaled = x * d;
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
        for (const mpz_class& n : {fl, mpz_class(fl + 1)}) {
          CHECK(abs(got - x) <= abs(Rational(n, d) - x));
        }
      }
    }
  }
}

TEST_CASE("solve: feasible and stalled instances") {
  auto r73 = solve(problem(7, 3));
  CHECK(r73.status == SolveStatus::kFeasible);
  CHECK(r73.residual < 1e-10);
  CHECK(r73.min_eigenvalue >= -1e-10);
  CHECK(solve(problem(5, 3)).status == SolveStatus::kFeasible);

  auto r93 = solve(problem(9, 3));
  CHECK(r93.status == SolveStatus::kStalled);
  CHECK(r93.iterations == 50000);
  CHECK(r93.residual > 1e-3);
  CHECK(solve(problem(6, 3)).status == SolveStatus::kStalled);

  SolveOptions few;
  few.max_iterations = 10;
  auto short_run = solve(problem(9, 3), few);
  CHECK(short_run.iterations == 10);
  CHECK(short_run.summary().rfind("status=STALLED residual=", 0) == 0);

  SolveOptions bad;
  bad.tolerance = 0;
  CHECK_THROWS_AS(solve(problem(5, 3), bad), DomainError);
}

TEST_CASE("solve is deterministic") {
  auto a = solve(problem(9, 5));
  auto b = solve(problem(9, 5));
  CHECK(a.iterations == b.iterations);
  CHECK(a.gram == b.gram);
}

TEST_CASE("boundary instances need the face reduction") {
  // (9,5) has no positive definite feasible point; without the reduction the
  // iteration creeps towards the boundary and does not reach 1e-10.
  SolveOptions plain;
  plain.facial_reduction = false;
  plain.max_iterations = 5000;
  CHECK(solve(problem(9, 5), plain).status == SolveStatus::kStalled);
  auto reduced = solve(problem(9, 5));
  CHECK(reduced.status == SolveStatus::kFeasible);
  CHECK(reduced.reduced_dimension < 6);
  // every built-in certificate lies in the reduced face: G = W H W^T is solvable
  auto cert = build_certificate(CertKind::kPartition, 9, 5);
  auto w = reduce_face(problem(9, 5));
  Eigen::MatrixXd wd = w.to_double();
  Eigen::MatrixXd g = cert.matrix.to_double();
  Eigen::MatrixXd proj = wd * (wd.transpose() * wd).ldlt().solve(wd.transpose());
  CHECK((proj * g * proj - g).norm() < 1e-9);
}

TEST_CASE("seeding at a built-in certificate finishes in one iteration") {
  struct Item {
    CertKind kind;
    int p, r;
  };
  std::vector<Item> items{{CertKind::kR1, 9, 1},          {CertKind::kRpm2, 9, 7},       {CertKind::kPartition, 7, 3},
                          {CertKind::kPartition, 9, 5},   {CertKind::kPartition, 13, 9}, {CertKind::kP11R3, 11, 3},
                          {CertKind::kCase2R1, 8, 1},     {CertKind::kCase2Rpm1, 10, 9}, {CertKind::kRpm2, 13, 11}};
  for (const auto& it : items) {
    CAPTURE(to_string(it.kind));
    auto cert = build_certificate(it.kind, it.p, it.r);
    SolveOptions opt;
    opt.seed = cert.matrix.to_double();
    auto rep = solve(assemble(cert.params), opt);
    CHECK(rep.status == SolveStatus::kFeasible);
    CHECK(rep.iterations == 1);
    CHECK(rep.residual < 1e-12);
  }
}

TEST_CASE("rationalization yields exact certificates") {
  for (auto [p, r] : {std::pair{5, 3}, {7, 3}, {9, 5}, {11, 3}}) {
    CAPTURE(p);
    CAPTURE(r);
    auto prob = problem(p, r);
    auto rep = solve(prob);
    REQUIRE(rep.status == SolveStatus::kFeasible);
    auto res = rationalize_and_verify(prob, rep);
    REQUIRE(res.certificate.has_value());
    CHECK(verify_certificate(*res.certificate).verified);
    CHECK(res.denominator_bound >= 1);
  }
  auto stalled = solve(problem(9, 3));
  CHECK_THROWS_AS(rationalize_and_verify(problem(9, 3), stalled), PreconditionError);
}

TEST_CASE("exploration mode accepts both-even instances") {
  auto prob = assemble(CaseParams::explore(8, 4));
  CHECK(prob.dimension == 3);
  CHECK(prob.constraints.size() == necklace_count(8, 4));
  SolveOptions opt;
  opt.max_iterations = 2000;
  auto rep = solve(prob, opt);
  CHECK(rep.iterations >= 1);
  CHECK(rep.iterations <= 2000);
}
