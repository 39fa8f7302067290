#include "conditionh/words.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "conditionh/error.hpp"

namespace conditionh {

namespace {

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      while (n % f == 0) n /= f;
      result -= result / f;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

void require_half_word(const BitString& w, const CaseParams& params, const char* name) {
  if (static_cast<int>(w.size()) != params.k || w.weight() != params.q) {
    throw DomainError(std::string(name) + " must have length " + std::to_string(params.k) + " and weight " +
                      std::to_string(params.q) + ", got '" + w.str() + "'");
  }
}

}  // namespace

CaseParams CaseParams::make(int p, int r) {
  if (p < 1 || r < 0 || r > p) {
    throw DomainError("need 0 <= r <= p and p >= 1, got p=" + std::to_string(p) + " r=" + std::to_string(r));
  }
  if (r % 2 == 0) {
    throw DomainError("odd r required for a Gram formulation, got r=" + std::to_string(r));
  }
  CaseParams c;
  c.p = p;
  c.r = r;
  c.q = (r - 1) / 2;
  if (p % 2 == 1) {
    c.kind = CaseKind::kOddOdd;
    c.k = (p - 1) / 2;
  } else {
    c.kind = CaseKind::kEvenOdd;
    c.k = (p - 2) / 2;
  }
  return c;
}

CaseParams CaseParams::explore(int p, int r) {
  if (p < 2 || p % 2 != 0 || r % 2 != 0 || r < 2 || r > p) {
    throw DomainError("exploration needs p, r even with 2 <= r <= p, got p=" + std::to_string(p) +
                      " r=" + std::to_string(r));
  }
  CaseParams c;
  c.p = p;
  c.r = r;
  c.kind = CaseKind::kEvenEvenExplore;
  c.k = (p - 2) / 2;
  c.q = (r - 2) / 2;
  return c;
}

std::uint64_t binomial(int n, int m) {
  if (m < 0 || n < 0 || m > n) return 0;
  m = std::min(m, n - m);
  std::uint64_t result = 1;
  for (int i = 1; i <= m; ++i) {
    result = result * static_cast<std::uint64_t>(n - m + i) / static_cast<std::uint64_t>(i);
  }
  return result;
}

std::vector<BitString> enumerate_weighted_strings(int n, int m) {
  if (n < 0 || m < 0 || m > n) {
    throw DomainError("need 0 <= m <= n, got n=" + std::to_string(n) + " m=" + std::to_string(m));
  }
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 0);
  std::fill(bits.end() - m, bits.end(), std::uint8_t{1});
  std::vector<BitString> out;
  out.reserve(binomial(n, m));
  do {
    out.emplace_back(bits);
  } while (std::next_permutation(bits.begin(), bits.end()));
  return out;
}

Necklace orbit(const BitString& s) {
  const std::size_t n = s.size();
  if (n == 0) return {s, 1};
  std::size_t period = n;
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d == 0 && s.rotated(d) == s) {
      period = d;
      break;
    }
  }
  BitString best = s;
  for (std::size_t shift = 1; shift < period; ++shift) {
    BitString candidate = s.rotated(shift);
    if (candidate < best) best = std::move(candidate);
  }
  return {std::move(best), period};
}

std::vector<Necklace> enumerate_necklaces(int p, int r) {
  if (p < 1) throw DomainError("p must be positive");
  std::vector<Necklace> out;
  for (auto& s : enumerate_weighted_strings(p, r)) {
    Necklace n = orbit(s);
    if (n.canonical == s) out.push_back(std::move(n));
  }
  return out;
}

std::uint64_t necklace_count(int p, int r) {
  if (p < 1 || r < 0 || r > p) throw DomainError("need 0 <= r <= p, p >= 1");
  const int g = std::gcd(p, r);
  std::uint64_t total = 0;
  for (int d = 1; d <= g; ++d) {
    if (g % d == 0) total += euler_phi(static_cast<std::uint64_t>(d)) * binomial(p / d, r / d);
  }
  return total / static_cast<std::uint64_t>(p);
}

BitString sigma(const BitString& u, const BitString& v, const CaseParams& params) {
  require_half_word(u, params, "u");
  require_half_word(v, params, "v");
  BitString out = u + BitString::repeat(1, 1) + v.reversed();
  switch (params.kind) {
    case CaseKind::kOddOdd:
      break;
    case CaseKind::kEvenOdd:
      out = out + BitString::repeat(0, 1);
      break;
    case CaseKind::kEvenEvenExplore:
      out = out + BitString::repeat(1, 1);
      break;
  }
  return out;
}

std::vector<StringPair> preimage(const Necklace& t, const CaseParams& params) {
  const auto p = static_cast<std::size_t>(params.p);
  const auto k = static_cast<std::size_t>(params.k);
  if (t.canonical.size() != p || t.canonical.weight() != params.r) {
    throw DomainError("necklace '" + t.canonical.str() + "' is not in E_{" + std::to_string(params.p) + "," +
                      std::to_string(params.r) + "}");
  }
  std::vector<StringPair> out;
  for (std::size_t shift = 0; shift < t.orbit_size; ++shift) {
    BitString s = t.canonical.rotated(shift);
    if (s[k] != 1) continue;
    if (params.kind == CaseKind::kEvenOdd && s[p - 1] != 0) continue;
    if (params.kind == CaseKind::kEvenEvenExplore && s[p - 1] != 1) continue;
    BitString u = s.slice(0, k);
    if (u.weight() != params.q) continue;
    out.emplace_back(std::move(u), s.slice(k + 1, k).reversed());
  }
  std::sort(out.begin(), out.end());
  return out;
}

PairCounts pair_counts(const BitString& u, const BitString& v, const CaseParams& params) {
  Necklace t = orbit(sigma(u, v, params));
  return {preimage(t, params).size(), t.orbit_size};
}

std::size_t remark_size_count(const BitString& s, const CaseParams& params) {
  if (params.kind == CaseKind::kEvenEvenExplore) {
    throw DomainError("window criterion is stated for odd r only");
  }
  const int p = params.p;
  if (static_cast<int>(s.size()) != p || s.weight() != params.r) {
    throw DomainError("'" + s.str() + "' is not in E_{p,r}");
  }
  if (orbit(s).orbit_size != static_cast<std::size_t>(p)) {
    throw PreconditionError("window criterion needs a full orbit, '" + s.str() + "' has a shorter one");
  }
  const int kp = params.window();
  const bool even = params.kind == CaseKind::kEvenOdd;
  // 1-based accessor
  auto at = [&](int i) { return static_cast<int>(s[static_cast<std::size_t>(i - 1)]); };
  std::size_t count = 0;
  for (int i = 1; i <= p; ++i) {
    if (at(i) != 1) continue;
    int ones = 0;
    int far_end = 0;
    if (i >= kp + 1) {
      for (int j = i - kp; j <= i - 1; ++j) ones += at(j);
      far_end = at(i - kp);
    } else {
      for (int j = i + 1; j <= i + kp; ++j) ones += at(j);
      far_end = at(i + kp);
    }
    if (ones != params.q) continue;
    if (even && far_end != 0) continue;
    ++count;
  }
  return count;
}

bool check_proposition_nec(int p, int r) {
  const CaseParams params = CaseParams::make(p, r);
  for (const auto& t : enumerate_necklaces(p, r)) {
    if (preimage(t, params).empty()) return false;
  }
  return true;
}

}  // namespace conditionh
