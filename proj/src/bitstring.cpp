#include "conditionh/bitstring.hpp"

#include <algorithm>
#include <numeric>

#include "conditionh/error.hpp"

namespace conditionh {

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw DomainError("BitString entries must be 0 or 1");
  }
}

BitString BitString::parse(std::string_view text) {
  if (text == "-") return BitString{};
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw DomainError("not a binary word: '" + std::string(text) + "'");
    }
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return BitString(std::move(bits));
}

BitString BitString::from_runs(std::initializer_list<std::pair<int, int>> runs) {
  std::vector<std::uint8_t> bits;
  for (auto [bit, count] : runs) {
    if (bit != 0 && bit != 1) throw DomainError("run letter must be 0 or 1");
    if (count < 0) throw DomainError("negative run length");
    bits.insert(bits.end(), static_cast<std::size_t>(count), static_cast<std::uint8_t>(bit));
  }
  return BitString(std::move(bits));
}

BitString BitString::repeat(std::uint8_t bit, std::size_t count) {
  return BitString(std::vector<std::uint8_t>(count, bit));
}

int BitString::weight() const noexcept {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

BitString BitString::rotated(std::size_t shift) const {
  BitString out = *this;
  if (!bits_.empty()) {
    std::rotate(out.bits_.begin(), out.bits_.begin() + static_cast<std::ptrdiff_t>(shift % bits_.size()),
                out.bits_.end());
  }
  return out;
}

BitString BitString::reversed() const {
  BitString out = *this;
  std::reverse(out.bits_.begin(), out.bits_.end());
  return out;
}

BitString BitString::slice(std::size_t begin, std::size_t length) const {
  if (begin + length > bits_.size()) throw DomainError("slice out of range");
  auto first = bits_.begin() + static_cast<std::ptrdiff_t>(begin);
  return BitString(std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>(length)));
}

std::string BitString::str() const {
  std::string out;
  out.reserve(bits_.size());
  for (auto b : bits_) out.push_back(static_cast<char>('0' + b));
  return out;
}

std::string BitString::token() const { return bits_.empty() ? std::string("-") : str(); }

BitString operator+(const BitString& a, const BitString& b) {
  BitString out = a;
  out.bits_.insert(out.bits_.end(), b.bits_.begin(), b.bits_.end());
  return out;
}

}  // namespace conditionh
