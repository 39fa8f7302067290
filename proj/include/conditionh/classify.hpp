#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "conditionh/gram.hpp"
#include "conditionh/obstructions.hpp"

namespace conditionh {

enum class VerdictStatus { kHolds, kFails, kUnknown };

/// How a FAILS verdict is refuted.
enum class RefutationRoute {
  kWitnessA,     ///< p odd, 5 <= r <= p-6
  kWitnessB,     ///< p odd >= 13, r = 3
  kWitnessC,     ///< p even, 5 <= r <= p-3
  kP9R3,         ///< the (9,3) table and propagation
  kPropagation,  ///< forced-entry propagation, used at (6,3)
};

std::string to_string(VerdictStatus s);
std::string to_string(RefutationRoute r);

using PR = std::pair<int, int>;

struct Verdict {
  int p = 0;
  int r = 0;
  VerdictStatus status = VerdictStatus::kUnknown;
  std::optional<CertKind> certificate;
  std::optional<RefutationRoute> refutation;
  /// Set when the verdict is carried by another instance (mirror r -> p-r, or the
  /// interchange of A and B). The check runs there, never here.
  std::optional<PR> partner;
  std::string justification;

  /// "HOLDS(P11R3)", "FAILS(WITNESS_C)", "UNKNOWN".
  std::string label() const;
  /// "p=<p> r=<r> <label>[ via=(p',r')]"
  std::string table_line() const;
};

/// Throws DomainError unless p >= 1 and 0 <= r <= p.
Verdict classify(int p, int r);

struct VerdictCheck {
  bool ok = false;
  std::string detail;
};

/// Builds and verifies the certificate, or runs the refutation, at the partner
/// when there is one. UNKNOWN always checks.
VerdictCheck check_verdict(const Verdict& v);

struct RefutationRun {
  std::optional<Refutation> refutation;
  std::string problem;  ///< set when no refutation was produced
};

/// Produces the refutation behind a FAILS verdict, at the partner when there is one.
/// Throws PreconditionError for other verdicts.
RefutationRun run_refutation(const Verdict& v);

/// Every (p,r) with 1 <= p <= max_p, 0 <= r <= p, one line each.
std::string classification_table(int max_p);

struct HillarResult {
  bool implied = false;
  std::optional<PR> source;  ///< element of the swap closure that dominates the target
};

/// Closes known under (p,r) -> (p,p-r) and looks for (p,r) with p >= p', r >= r'
/// and p-r >= p'-r'. The smallest such pair is reported.
HillarResult hillar_implied(const std::set<PR>& known, PR target);

enum class BmvState { kNonnegProved, kOpen };

struct BmvResult {
  BmvState state = BmvState::kOpen;
  std::optional<PR> witness;
  std::string to_string() const;
};

/// hillar_implied with known = every HOLDS pair with first coordinate <= bound.
/// Throws DomainError when bound < p.
BmvResult bmv_status(int p, int r, int bound);

}  // namespace conditionh
