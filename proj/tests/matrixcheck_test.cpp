#include <doctest.h>

#include <cmath>
#include <random>

#include "conditionh/error.hpp"
#include "conditionh/matrixcheck.hpp"

using namespace conditionh;

namespace {

// Oracle: expand (A + tB)^p as a list of coefficient matrices.
double alpha_by_expansion(const DenseMatrix& a, const DenseMatrix& b, int p, int r) {
  const auto n = a.rows();
  std::vector<DenseMatrix> poly{DenseMatrix::Identity(n, n)};
  for (int step = 0; step < p; ++step) {
    std::vector<DenseMatrix> next(poly.size() + 1, DenseMatrix::Zero(n, n));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i] * a;
      next[i + 1] += poly[i] * b;
    }
    poly = std::move(next);
  }
  return poly[static_cast<std::size_t>(r)].trace();
}

DenseMatrix random_symmetric(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = u(rng);
  return (m + m.transpose()) / 2;
}

}  // namespace

TEST_CASE("random_psd") {
  CHECK(random_psd(3, 42) == random_psd(3, 42));
  CHECK(random_psd(3, 42) != random_psd(3, 43));
  for (int n = 1; n <= 6; ++n) {
    auto m = random_psd(n, static_cast<std::uint64_t>(n));
    CHECK(m == m.transpose());
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(m);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);
  }
  CHECK(random_psd(1, 7)(0, 0) >= 0);
  CHECK_THROWS_AS(random_psd(0, 1), DomainError);
}

TEST_CASE("alpha_coeff closed forms") {
  for (int p = 0; p <= 10; ++p) {
    for (int r = 0; r <= p; ++r) {
      const auto id = DenseMatrix::Identity(3, 3);
      CHECK(alpha_coeff(id, id, p, r) == doctest::Approx(3.0 * static_cast<double>(binomial(p, r))));
      DenseMatrix a(1, 1), b(1, 1);
      a << 0.7;
      b << 1.3;
      CHECK(alpha_coeff(a, b, p, r) ==
            doctest::Approx(static_cast<double>(binomial(p, r)) * std::pow(0.7, p - r) * std::pow(1.3, r)));
    }
  }
  auto a = random_psd(4, 1);
  auto b = random_psd(4, 2);
  DenseMatrix a7 = a * a * a * a * a * a * a;
  CHECK(alpha_coeff(a, b, 7, 0) == doctest::Approx(a7.trace()).epsilon(1e-12));
  CHECK_THROWS_AS(alpha_coeff(a, b, 17, 3), DomainError);
  CHECK_THROWS_AS(alpha_coeff(a, b, 5, 6), DomainError);
  CHECK_THROWS_AS(alpha_coeff(a, random_psd(3, 1), 5, 2), DomainError);
}

TEST_CASE("alpha_coeff matches the expansion oracle") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pd(1, 12), nd(1, 5);
  for (int trial = 0; trial < 50; ++trial) {
    const int p = pd(rng);
    const int r = std::uniform_int_distribution<int>(0, p)(rng);
    const int n = nd(rng);
    auto a = random_psd(n, 100 + 2 * static_cast<std::uint64_t>(trial));
    auto b = random_psd(n, 101 + 2 * static_cast<std::uint64_t>(trial));
    CAPTURE(p);
    CAPTURE(r);
    const double expected = alpha_by_expansion(a, b, p, r);
    const double got = alpha_coeff(a, b, p, r);
    CHECK(std::abs(got - expected) <= 1e-10 * std::max(1.0, std::abs(expected)));
    const double interp = alpha_coeff_interpolated(a, b, p, r);
    CHECK(std::abs(interp - expected) <= 1e-8 * std::max(1.0, std::abs(expected)));
  }
}

TEST_CASE("interpolation holds up at the top of the range") {
  for (int r = 0; r <= 16; ++r) {
    CAPTURE(r);
    auto a = random_psd(4, 7);
    DenseMatrix b = 30.0 * random_psd(4, 8);
    const double expected = alpha_by_expansion(a, b, 16, r);
    CHECK(std::abs(alpha_coeff(a, b, 16, r) - expected) <= 1e-10 * std::abs(expected));
  }
}

TEST_CASE("word traces are cyclically invariant") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const int p = 2 + trial % 10;
    auto words = enumerate_weighted_strings(p, p / 3);
    const auto& s = words[static_cast<std::size_t>(trial) % words.size()];
    auto a = random_symmetric(4, rng);
    auto b = random_symmetric(4, rng);
    const double t0 = word_trace(s, a, b);
    for (std::size_t i = 1; i < s.size(); ++i) {
      const double ti = word_trace(s.rotated(i), a, b);
      CHECK(std::abs(ti - t0) <= 1e-10 * std::max(1.0, std::abs(t0)));
    }
  }
  auto a = random_psd(3, 1);
  CHECK(word_trace(BitString::parse("-"), a, a) == 3.0);
}

TEST_CASE("certificate_trace_value") {
  auto a = random_psd(4, 11);
  auto b = random_psd(4, 12);
  for (int p : {3, 5, 7, 9}) {
    auto r1 = build_certificate(CertKind::kR1, p, 1);
    DenseMatrix ap = DenseMatrix::Identity(4, 4);
    for (int i = 0; i < p - 1; ++i) ap = ap * a;
    CHECK(certificate_trace_value(r1, a, b) == doctest::Approx(p * (ap * b).trace()).epsilon(1e-12));
  }
  const auto id = DenseMatrix::Identity(3, 3);
  for (auto [kind, p, r] : {std::tuple{CertKind::kPartition, 9, 5}, {CertKind::kP11R3, 11, 3},
                            {CertKind::kCase2Rpm1, 10, 9}, {CertKind::kRpm2, 7, 5}}) {
    auto g = build_certificate(kind, p, r);
    CHECK(certificate_trace_value(g, id, id) == doctest::Approx(3.0 * static_cast<double>(binomial(p, r))));
  }
  auto zero = build_certificate(CertKind::kPartition, 9, 5);
  zero.matrix = RationalMatrix(zero.matrix.rows(), zero.matrix.cols());
  CHECK(certificate_trace_value(zero, a, b) == 0.0);
}

TEST_CASE("certificate values are nonnegative on PSD pairs") {
  std::vector<GramCertificate> certs;
  for (int p = 3; p <= 13; p += 2) {
    certs.push_back(build_certificate(CertKind::kR1, p, 1));
    certs.push_back(build_certificate(CertKind::kRpm2, p, p - 2));
    if (p >= 5) certs.push_back(build_certificate(CertKind::kPartition, p, p - 4));
  }
  certs.push_back(build_certificate(CertKind::kP11R3, 11, 3));
  for (int p = 4; p <= 12; p += 2) {
    certs.push_back(build_certificate(CertKind::kCase2R1, p, 1));
    certs.push_back(build_certificate(CertKind::kCase2Rpm1, p, p - 1));
  }
  for (const auto& g : certs) {
    for (std::uint64_t s = 0; s < 5; ++s) {
      auto a = random_psd(3, 2 * s);
      auto b = random_psd(3, 2 * s + 1);
      const double scale = std::pow(std::max(a.norm(), b.norm()), g.params.p);
      CHECK(certificate_trace_value(g, a, b) >= -1e-9 * scale);
    }
  }
}

TEST_CASE("numeric_consistency") {
  auto r73 = numeric_consistency(7, 3, build_certificate(CertKind::kPartition, 7, 3), 20, 4, 1e-9);
  CHECK(r73.passed());
  CHECK(r73.trials.size() == 20);
  CHECK(r73.max_deviation <= 1e-9);
  CHECK(numeric_consistency(11, 3, build_certificate(CertKind::kP11R3, 11, 3), 20, 4, 1e-9).passed());
  CHECK(numeric_consistency(8, 1, build_certificate(CertKind::kCase2R1, 8, 1), 20, 3, 1e-9).passed());

  auto text = numeric_consistency(7, 3, build_certificate(CertKind::kPartition, 7, 3), 2, 3, 1e-9, 5).to_text();
  CHECK(text.rfind("seed=5 alpha=", 0) == 0);
  CHECK(text.find("\nseed=6 alpha=") != std::string::npos);
  CHECK(text.find("max_reldev=") != std::string::npos);
  CHECK(text.find("PASS") != std::string::npos);

  CHECK_THROWS_AS(numeric_consistency(9, 5, build_certificate(CertKind::kPartition, 7, 3), 1, 3, 1e-9), DomainError);
  auto broken = build_certificate(CertKind::kPartition, 7, 3);
  broken.matrix(0, 0) += 1;
  CHECK_THROWS_AS(numeric_consistency(7, 3, broken, 1, 3, 1e-9), PreconditionError);
}

TEST_CASE("format_double") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-3) == "-3");
  CHECK(format_double(1e-12) == "1e-12");
}
