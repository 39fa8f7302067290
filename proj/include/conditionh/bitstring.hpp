#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace conditionh {

/// A finite word over {0,1}. Index 0 is the leftmost letter; 1 stands for B, 0 for A.
///
/// Full words (elements of E_{p,r}) always have length >= 1. Half-words used as
/// Gram basis elements may be empty when k = 0 (p = 1 or p = 2).
class BitString {
 public:
  BitString() = default;

  /// Throws DomainError if any entry is not 0 or 1.
  explicit BitString(std::vector<std::uint8_t> bits);

  /// Parses ASCII "0101..."; "-" denotes the empty word.
  static BitString parse(std::string_view text);

  /// Concatenation of runs, e.g. {{0, 3}, {1, 2}} is 00011.
  static BitString from_runs(std::initializer_list<std::pair<int, int>> runs);

  static BitString repeat(std::uint8_t bit, std::size_t count);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  int weight() const noexcept;

  std::uint8_t operator[](std::size_t i) const noexcept { return bits_[i]; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  /// Cyclic left rotation: result[i] = (*this)[(i + shift) mod size].
  BitString rotated(std::size_t shift) const;
  BitString reversed() const;
  BitString slice(std::size_t begin, std::size_t length) const;

  /// ASCII form; the empty word prints as "" (see token() for a non-empty token).
  std::string str() const;
  /// Like str(), but the empty word prints as "-".
  std::string token() const;

  friend BitString operator+(const BitString& a, const BitString& b);

  auto operator<=>(const BitString&) const = default;
  bool operator==(const BitString&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

using StringPair = std::pair<BitString, BitString>;

}  // namespace conditionh
