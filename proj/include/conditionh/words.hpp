#pragma once

#include <cstdint>
#include <vector>

#include "conditionh/bitstring.hpp"

namespace conditionh {

/// A cyclic class of words: its lexicographically least rotation and the class size.
struct Necklace {
  BitString canonical;
  std::size_t orbit_size = 0;

  auto operator<=>(const Necklace&) const = default;
  bool operator==(const Necklace&) const = default;
};

enum class CaseKind {
  kOddOdd,       ///< p = 2k+1, r = 2q+1; words u 1 rev(v)
  kEvenOdd,      ///< p = 2k+2, r = 2q+1; words u 1 rev(v) 0
  kEvenEvenExplore,  ///< p = 2k+2, r = 2q+2; words u 1 rev(v) 1 (exploration only)
};

/// Parameters of one instance. Construct through make() or explore().
struct CaseParams {
  int p = 0;
  int r = 0;
  CaseKind kind = CaseKind::kOddOdd;
  int k = 0;  ///< half-word length
  int q = 0;  ///< half-word weight

  /// Odd r only: p odd gives kOddOdd, p even gives kEvenOdd. Throws DomainError otherwise.
  static CaseParams make(int p, int r);

  /// Both even with 2 <= r <= p. The solver accepts these; nothing else relies on them.
  static CaseParams explore(int p, int r);

  /// Length of the window on each side of the centre letter (k' = p - k - 1).
  int window() const noexcept { return p - k - 1; }

  bool operator==(const CaseParams&) const = default;
};

std::uint64_t binomial(int n, int m);

/// All words of length n and weight m in lexicographic order (the canonical basis order).
std::vector<BitString> enumerate_weighted_strings(int n, int m);

Necklace orbit(const BitString& s);

/// One entry per cyclic class of E_{p,r}, sorted by canonical representative.
std::vector<Necklace> enumerate_necklaces(int p, int r);

/// Burnside count (1/p) sum_{d | gcd(p,r)} phi(d) C(p/d, r/d).
std::uint64_t necklace_count(int p, int r);

BitString sigma(const BitString& u, const BitString& v, const CaseParams& params);

/// Ordered pairs (u,v) with sigma(u,v) in the class t, sorted. Found by scanning the
/// rotations of t for the centre 1 (and the trailing letter in the even cases).
std::vector<StringPair> preimage(const Necklace& t, const CaseParams& params);

struct PairCounts {
  std::size_t n = 0;       ///< |preimage of the class of sigma(u,v)|
  std::size_t ntilde = 0;  ///< orbit size of sigma(u,v)

  bool operator==(const PairCounts&) const = default;
};

PairCounts pair_counts(const BitString& u, const BitString& v, const CaseParams& params);

/// Window-count criterion for |preimage| on full orbits. Positions are 1-based as in
/// the statement: an index i with s_i = 1 counts when its k' predecessors (i > k') or
/// successors (otherwise) hold exactly q ones; in the p-even case the far end of that
/// window must also be 0. Throws PreconditionError when the orbit of s is not full.
std::size_t remark_size_count(const BitString& s, const CaseParams& params);

/// Every class of E_{p,r} has a non-empty preimage under pi o sigma.
bool check_proposition_nec(int p, int r);

}  // namespace conditionh
