#include "conditionh/gram.hpp"

#include <algorithm>
#include <array>

#include "conditionh/error.hpp"

namespace conditionh {

namespace {

void require(bool ok, CertKind kind, int p, int r) {
  if (!ok) {
    throw DomainError(to_string(kind) + " does not apply to p=" + std::to_string(p) + " r=" + std::to_string(r));
  }
}

RationalMatrix scalar_matrix(std::size_t n, const Rational& c) {
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = c;
  return out;
}

void add_outer(RationalMatrix& g, const std::vector<Rational>& z, const Rational& scale) {
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = 0; j < z.size(); ++j) g(i, j) += scale * z[i] * z[j];
  }
}

}  // namespace

std::size_t basis_index(const std::vector<BitString>& basis, const BitString& s) {
  auto it = std::lower_bound(basis.begin(), basis.end(), s);
  if (it == basis.end() || *it != s) throw DomainError("'" + s.str() + "' is not a basis element");
  return static_cast<std::size_t>(it - basis.begin());
}

std::vector<KeyConstraint> build_key_system(const CaseParams& params) {
  const auto basis = enumerate_weighted_strings(params.k, params.q);
  std::vector<KeyConstraint> out;
  for (auto& t : enumerate_necklaces(params.p, params.r)) {
    KeyConstraint c;
    for (const auto& [u, v] : preimage(t, params)) {
      c.pairs.emplace_back(basis_index(basis, u), basis_index(basis, v));
    }
    c.target = t.orbit_size;
    c.necklace = std::move(t);
    out.push_back(std::move(c));
  }
  return out;
}

GramCertificate GramCertificate::make(const CaseParams& params, RationalMatrix matrix) {
  GramCertificate g;
  g.params = params;
  g.basis = enumerate_weighted_strings(params.k, params.q);
  if (matrix.rows() != g.basis.size() || matrix.cols() != g.basis.size()) {
    throw DomainError("Gram matrix is " + std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols()) +
                      ", basis has " + std::to_string(g.basis.size()) + " elements");
  }
  if (!matrix.is_symmetric()) throw DomainError("Gram matrix is not symmetric");
  g.matrix = std::move(matrix);
  return g;
}

KeyReport verify_key(const GramCertificate& g) {
  const auto expected = enumerate_weighted_strings(g.params.k, g.params.q);
  if (g.basis != expected || g.matrix.rows() != expected.size() || g.matrix.cols() != expected.size()) {
    throw DomainError("certificate basis does not match p=" + std::to_string(g.params.p) +
                      " r=" + std::to_string(g.params.r));
  }
  KeyReport report;
  report.ok = true;
  const auto system = build_key_system(g.params);
  for (std::size_t i = 0; i < system.size(); ++i) {
    Rational sum = 0;
    for (const auto& [a, b] : system[i].pairs) sum += g.matrix(a, b);
    if (sum != Rational(static_cast<unsigned long>(system[i].target))) {
      if (report.ok) report.first_failure = i;
      report.ok = false;
    }
    report.sums.push_back(sum);
    report.targets.push_back(system[i].target);
    report.necklaces.push_back(system[i].necklace);
  }
  return report;
}

std::string to_string(CertKind kind) {
  switch (kind) {
    case CertKind::kR1: return "R1";
    case CertKind::kRpm2: return "RPM2";
    case CertKind::kPartition: return "PARTITION";
    case CertKind::kP11R3: return "P11R3";
    case CertKind::kCase2R1: return "CASE2_R1";
    case CertKind::kCase2Rpm1: return "CASE2_RPM1";
    case CertKind::kRp: return "RP";
    case CertKind::kEvenPower: return "EVEN_POWER";
  }
  return "?";
}

CertKind parse_cert_kind(std::string_view name) {
  static constexpr std::array kinds{CertKind::kR1,      CertKind::kRpm2,    CertKind::kPartition, CertKind::kP11R3,
                                    CertKind::kCase2R1, CertKind::kCase2Rpm1, CertKind::kRp,
                                    CertKind::kEvenPower};
  for (auto k : kinds) {
    if (to_string(k) == name) return k;
  }
  throw DomainError("unknown certificate kind '" + std::string(name) + "'");
}

std::vector<std::vector<BitString>> build_partition(int k, int q) {
  if (k < 2 || q != k - 2) {
    throw DomainError("partition needs q = k-2 with k >= 2, got k=" + std::to_string(k) + " q=" + std::to_string(q));
  }
  const auto all = enumerate_weighted_strings(k, q);
  // 1-based position test
  auto bit = [](const BitString& s, int pos) { return s[static_cast<std::size_t>(pos - 1)]; };
  auto ones = [&](const BitString& s, int from, int to) {
    for (int i = from; i <= to; ++i) {
      if (bit(s, i) != 1) return false;
    }
    return true;
  };
  std::vector<std::vector<BitString>> blocks;
  for (int m = 1; m <= k - 1; ++m) {
    std::vector<BitString> block;
    for (const auto& s : all) {
      bool in = false;
      if (m % 2 == 1) {
        const int j = (m - 1) / 2;
        in = ones(s, 1, j) && ones(s, k - j + 1, k) && bit(s, j + 1) == 0;
      } else {
        const int j = (m - 2) / 2;
        in = ones(s, 1, j + 1) && ones(s, k - j + 1, k) && bit(s, k - j) == 0;
      }
      if (in) block.push_back(s);
    }
    blocks.push_back(std::move(block));
  }
  std::size_t total = 0;
  for (const auto& b : blocks) total += b.size();
  if (total != all.size()) throw InternalError("partition blocks do not cover E_{k,k-2}");
  return blocks;
}

std::vector<std::size_t> partition_lemma_counts(int p) {
  if (p < 5 || p % 2 == 0) throw DomainError("partition property needs odd p >= 5");
  const CaseParams params = CaseParams::make(p, p - 4);
  const auto necklaces = enumerate_necklaces(p, p - 4);
  std::vector<std::size_t> counts(necklaces.size(), 0);
  for (const auto& block : build_partition(params.k, params.q)) {
    for (const auto& u : block) {
      for (const auto& v : block) {
        const Necklace t = orbit(sigma(u, v, params));
        auto it = std::lower_bound(necklaces.begin(), necklaces.end(), t);
        if (it == necklaces.end() || *it != t) throw InternalError("sigma image outside E_{p,r}");
        ++counts[static_cast<std::size_t>(it - necklaces.begin())];
      }
    }
  }
  return counts;
}

GramCertificate build_certificate(CertKind kind, int p, int r) {
  const bool odd = p % 2 == 1;
  switch (kind) {
    case CertKind::kR1: require(odd && r == 1, kind, p, r); break;
    case CertKind::kRpm2: require(odd && p >= 3 && r == p - 2, kind, p, r); break;
    case CertKind::kPartition: require(odd && p >= 5 && r == p - 4, kind, p, r); break;
    case CertKind::kP11R3: require(p == 11 && r == 3, kind, p, r); break;
    case CertKind::kCase2R1: require(!odd && p >= 2 && r == 1, kind, p, r); break;
    case CertKind::kCase2Rpm1: require(!odd && p >= 2 && r == p - 1, kind, p, r); break;
    case CertKind::kRp: require(odd && r == p, kind, p, r); break;
    case CertKind::kEvenPower: require(!odd && p >= 2 && r == p, kind, p, r); break;
  }
  const CaseParams params = kind == CertKind::kEvenPower ? CaseParams::explore(p, r) : CaseParams::make(p, r);
  const std::size_t n = binomial(params.k, params.q);
  const Rational pp(p);
  RationalMatrix g;
  switch (kind) {
    case CertKind::kR1:
    case CertKind::kRpm2:
    case CertKind::kCase2R1:
    case CertKind::kCase2Rpm1:
      g = scalar_matrix(n, pp);
      break;
    case CertKind::kRp:
    case CertKind::kEvenPower:
      g = scalar_matrix(n, Rational(1));
      break;
    case CertKind::kPartition: {
      g = RationalMatrix(n, n);
      const auto basis = enumerate_weighted_strings(params.k, params.q);
      for (const auto& block : build_partition(params.k, params.q)) {
        for (const auto& u : block) {
          for (const auto& v : block) g(basis_index(basis, u), basis_index(basis, v)) += pp;
        }
      }
      break;
    }
    case CertKind::kP11R3: {
      // basis order 00001, 00010, 00100, 01000, 10000
      g = RationalMatrix(n, n);
      add_outer(g, {1, 1, 1, 1, -1}, pp);
      add_outer(g, {0, 0, 1, -1, -1}, 2 * pp);
      add_outer(g, {0, 0, 2, -2, 0}, pp);
      add_outer(g, {0, 0, 0, 2, 0}, pp);
      break;
    }
  }
  GramCertificate cert = GramCertificate::make(params, std::move(g));
  VerifyResult check = verify_certificate(cert);
  if (!check.verified) {
    throw InternalError(to_string(kind) + " at p=" + std::to_string(p) + " r=" + std::to_string(r) +
                        " failed verification: " + check.reason);
  }
  return cert;
}

VerifyResult verify_certificate(const GramCertificate& g) {
  VerifyResult out;
  try {
    out.key = verify_key(g);
  } catch (const DomainError& e) {
    out.reason = e.what();
    return out;
  }
  if (!g.matrix.is_symmetric()) {
    out.reason = "matrix is not symmetric";
    return out;
  }
  if (!out.key.ok) {
    const std::size_t i = *out.key.first_failure;
    out.reason = "key constraint for class " + out.key.necklaces[i].canonical.str() + ": sum " +
                 to_string(out.key.sums[i]) + " != target " + std::to_string(out.key.targets[i]);
    return out;
  }
  out.psd = psd_exact(g.matrix);
  if (!out.psd->psd) {
    std::string w;
    for (const auto& x : out.psd->witness) w += (w.empty() ? "" : " ") + to_string(x);
    out.reason = "not PSD: x = (" + w + ") gives x^T G x = " + to_string(out.psd->witness_value);
    return out;
  }
  out.verified = true;
  return out;
}

}  // namespace conditionh
