#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "conditionh/exact_linalg.hpp"
#include "conditionh/rational.hpp"
#include "conditionh/words.hpp"

namespace conditionh {

using IndexPair = std::pair<std::size_t, std::size_t>;

/// One equation of the key system: the G entries at `pairs` (ordered, indices into
/// the lexicographic basis of E_{k,q}) must sum to `target`, the class size.
struct KeyConstraint {
  Necklace necklace;
  std::vector<IndexPair> pairs;
  std::size_t target = 0;
};

std::vector<KeyConstraint> build_key_system(const CaseParams& params);

/// Position of s in a sorted basis; throws DomainError if absent.
std::size_t basis_index(const std::vector<BitString>& basis, const BitString& s);

struct GramCertificate {
  CaseParams params;
  std::vector<BitString> basis;
  RationalMatrix matrix;

  /// Attaches the canonical basis; throws DomainError on size mismatch or asymmetry.
  static GramCertificate make(const CaseParams& params, RationalMatrix matrix);
};

struct KeyReport {
  bool ok = false;
  std::vector<Rational> sums;
  std::vector<std::size_t> targets;
  std::vector<Necklace> necklaces;
  /// Index of the first violated constraint, if any.
  std::optional<std::size_t> first_failure;
};

KeyReport verify_key(const GramCertificate& g);

enum class CertKind { kR1, kRpm2, kPartition, kP11R3, kCase2R1, kCase2Rpm1, kRp, kEvenPower };

std::string to_string(CertKind kind);
/// Accepts the CLI spellings R1, RPM2, PARTITION, P11R3, CASE2_R1, CASE2_RPM1, RP, EVEN_POWER.
CertKind parse_cert_kind(std::string_view name);

/// Blocks D_1..D_{k-1} of E_{k,k-2}; throws DomainError unless q = k-2 and k >= 2.
std::vector<std::vector<BitString>> build_partition(int k, int q);

/// For each class of E_{p,p-4} (p odd >= 5), the number of triples (m, u, v) with
/// u, v in D_m and sigma(u,v) in the class. The partition property says all are 1.
std::vector<std::size_t> partition_lemma_counts(int p);

/// Builds and verifies; throws DomainError when (kind, p, r) do not match and
/// InternalError if the result fails verification.
GramCertificate build_certificate(CertKind kind, int p, int r);

struct VerifyResult {
  bool verified = false;
  std::string reason;
  KeyReport key;
  std::optional<PsdResult> psd;
};

VerifyResult verify_certificate(const GramCertificate& g);

}  // namespace conditionh
