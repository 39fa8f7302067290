#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conditionh/gram.hpp"
#include "conditionh/words.hpp"

namespace conditionh {

/// w = 0^{k-q} 1^q and three further words of E_{k,q}; y = z is allowed.
struct ObstructionWitness {
  CaseParams params;
  BitString w, x, y, z;
};

/// One machine-checkable claim: "FACT <name> <k=v,...> = <value>".
struct Fact {
  std::string name;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::string value;

  std::string to_line() const;
  static Fact parse(const std::string& line);
  bool operator==(const Fact&) const = default;
};

enum class RefutationKind { kLemmaNeg, kCsPropagation };

std::string to_string(RefutationKind kind);

struct Refutation {
  RefutationKind kind = RefutationKind::kCsPropagation;
  CaseParams params;
  std::optional<ObstructionWitness> witness;
  std::vector<Fact> transcript;

  /// FACT lines followed by "CONCLUSION condition-h-refuted <kind>".
  std::string to_text() const;
};

/// Parses the text form back (witness is not reconstructed). Throws ParseError.
Refutation parse_refutation(const std::string& text);

struct ReplayResult {
  bool ok = false;
  std::string message;
};

/// Recomputes every fact with the words operations and checks that the final facts
/// amount to a contradiction of the claimed kind.
ReplayResult replay(const Refutation& refutation);

/// Ñ(w,u) = p for every u, and N(w,u) = 1 when u starts with 0 or p is even.
bool verify_lemma_first(const CaseParams& params);

struct ObstructionCheck {
  std::optional<Refutation> refutation;
  std::string rejected;  ///< first failed condition when refutation is empty

  bool ok() const noexcept { return refutation.has_value(); }
};

/// Throws DomainError if a word has the wrong length or weight.
ObstructionCheck verify_obstruction(const ObstructionWitness& witness);

/// 'a', 'b' or 'c' when (p,r) lies in one of the three witness families.
std::optional<char> witness_family_label(int p, int r);

/// Throws DomainError outside the families.
ObstructionWitness witness_family(int p, int r);

struct ForcedEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  Rational value;
  Necklace source;
};

struct PropagationResult {
  bool infeasible = false;
  std::vector<ForcedEntry> forced;
  std::optional<Refutation> refutation;
};

/// Singleton constraints force entries; reports conflicts, negative or zero
/// diagonals with nonzero off-diagonals, and violated 2x2 principal minors.
PropagationResult forced_entry_propagation(const CaseParams& params);

struct TableRow {
  BitString typical;
  std::size_t orbit_size = 0;
  std::vector<StringPair> preimage;
};

/// The three classes used at (9,3): 000111000, 010010010, 000110010.
std::vector<TableRow> p9r3_table();

Refutation refute_p9r3();

}  // namespace conditionh
