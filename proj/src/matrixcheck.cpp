#include "conditionh/matrixcheck.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include "conditionh/error.hpp"

namespace conditionh {

namespace {

constexpr double kCrossTolerance = 1e-8;

void check_pair(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DomainError("A and B must be square of equal dimension");
  }
  if (a.rows() == 0) throw DomainError("empty matrices");
}

void check_range(int p, int r) {
  if (p < 0 || p > 16 || r < 0 || r > p) {
    throw DomainError("need 0 <= r <= p <= 16, got p=" + std::to_string(p) + " r=" + std::to_string(r));
  }
}

struct WordSum {
  double value = 0;
  double magnitude = 0;
};

WordSum alpha_by_words(const DenseMatrix& a, const DenseMatrix& b, int p, int r) {
  WordSum out;
  for (const auto& s : enumerate_weighted_strings(p, r)) {
    const double t = word_trace(s, a, b);
    out.value += t;
    out.magnitude += std::abs(t);
  }
  return out;
}

}  // namespace

DenseMatrix random_psd(int n, std::uint64_t seed) {
  if (n < 1) throw DomainError("n must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = u(rng);
  }
  DenseMatrix g = m * m.transpose();
  return (g + g.transpose()) / 2;
}

double word_trace(const BitString& s, const DenseMatrix& a, const DenseMatrix& b) {
  check_pair(a, b);
  if (s.size() == 0) return static_cast<double>(a.rows());
  DenseMatrix acc = s[0] ? b : a;
  for (std::size_t i = 1; i < s.size(); ++i) acc = acc * (s[i] ? b : a);
  return acc.trace();
}

double alpha_coeff_interpolated(const DenseMatrix& a, const DenseMatrix& b, int p, int r) {
  check_pair(a, b);
  check_range(p, r);
  if (p == 0) return static_cast<double>(a.rows());
  // scale B so that the t^r term carries most of the polynomial
  const double na = a.norm();
  const double nb = b.norm();
  double scale = 1;
  if (na > 0 && nb > 0) {
    const double target = na / nb * (r + 0.5) / (p - r + 0.5);
    scale = std::ldexp(1.0, static_cast<int>(std::lround(std::log2(target))));
  }
  const Eigen::MatrixXcd ac = a.cast<std::complex<double>>();
  const Eigen::MatrixXcd bc = (scale * b).cast<std::complex<double>>();
  const int m = p + 1;
  std::complex<double> sum = 0;
  for (int j = 0; j < m; ++j) {
    const double angle = 2 * std::numbers::pi * j / m;
    const std::complex<double> w = std::polar(1.0, angle);
    Eigen::MatrixXcd x = ac + w * bc;
    Eigen::MatrixXcd acc = x;
    for (int i = 1; i < p; ++i) acc = acc * x;
    sum += acc.trace() * std::polar(1.0, -angle * r);
  }
  return sum.real() / m / std::pow(scale, r);
}

double alpha_coeff(const DenseMatrix& a, const DenseMatrix& b, int p, int r) {
  check_pair(a, b);
  check_range(p, r);
  const WordSum words = alpha_by_words(a, b, p, r);
  const double interp = alpha_coeff_interpolated(a, b, p, r);
  const double denom = std::max({std::abs(words.value), words.magnitude, 1e-300});
  if (std::abs(words.value - interp) > kCrossTolerance * denom) {
    throw InternalError("alpha_coeff: word sum " + format_double(words.value) + " and interpolation " +
                        format_double(interp) + " disagree");
  }
  return words.value;
}

double certificate_trace_value(const GramCertificate& g, const DenseMatrix& a, const DenseMatrix& b) {
  check_pair(a, b);
  std::map<BitString, double> traces;
  double total = 0;
  for (std::size_t i = 0; i < g.basis.size(); ++i) {
    for (std::size_t j = 0; j < g.basis.size(); ++j) {
      if (g.matrix(i, j) == 0) continue;
      const BitString w = sigma(g.basis[i], g.basis[j], g.params);
      auto it = traces.find(w);
      if (it == traces.end()) it = traces.emplace(w, word_trace(w, a, b)).first;
      total += g.matrix(i, j).get_d() * it->second;
    }
  }
  return total;
}

std::string NumericReport::to_text() const {
  std::ostringstream os;
  for (const auto& t : trials) {
    os << "seed=" << t.seed << " alpha=" << format_double(t.alpha) << " cert=" << format_double(t.cert)
       << " reldev=" << format_double(t.reldev) << (t.ok ? "" : " FAIL") << '\n';
  }
  os << "trials=" << trials.size() << " max_reldev=" << format_double(max_deviation)
     << " tolerance=" << format_double(tolerance) << ' ' << (passed() ? "PASS" : "FAIL");
  if (!passed()) {
    os << " failed_seeds=";
    for (std::size_t i = 0; i < failed_seeds.size(); ++i) os << (i ? "," : "") << failed_seeds[i];
  }
  os << '\n';
  return os.str();
}

NumericReport numeric_consistency(int p, int r, const GramCertificate& g, int trials, int n, double tolerance,
                                  std::uint64_t base_seed) {
  if (g.params.p != p || g.params.r != r) throw DomainError("certificate does not match (p,r)");
  if (trials < 0 || n < 1 || !(tolerance > 0)) throw DomainError("need trials >= 0, n >= 1, tolerance > 0");
  if (!verify_certificate(g).verified) throw PreconditionError("certificate is not verified");
  NumericReport rep;
  rep.tolerance = tolerance;
  for (int s = 0; s < trials; ++s) {
    const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(s);
    const DenseMatrix a = random_psd(n, 2 * seed);
    const DenseMatrix b = random_psd(n, 2 * seed + 1);
    TrialResult t;
    t.seed = seed;
    t.alpha = alpha_coeff(a, b, p, r);
    t.cert = certificate_trace_value(g, a, b);
    t.reldev = std::abs(t.alpha - t.cert) / std::max(1.0, std::abs(t.alpha));
    t.ok = t.reldev <= tolerance && t.alpha >= -tolerance;
    rep.max_deviation = std::max(rep.max_deviation, t.reldev);
    if (!t.ok) rep.failed_seeds.push_back(seed);
    rep.trials.push_back(t);
  }
  return rep;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace conditionh
