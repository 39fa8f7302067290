#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

#include "conditionh/error.hpp"
#include "conditionh/words.hpp"

using namespace conditionh;

namespace {

BitString bs(const char* s) { return BitString::parse(s); }

std::vector<std::string> strs(const std::vector<BitString>& v) {
  std::vector<std::string> out;
  for (const auto& b : v) out.push_back(b.str());
  return out;
}

// Oracle: all distinct rotations via a set.
std::set<BitString> rotation_set(const BitString& s) {
  std::set<BitString> out;
  for (std::size_t i = 0; i < s.size(); ++i) out.insert(s.rotated(i));
  return out;
}

// Oracle: try every ordered pair.
std::vector<StringPair> brute_preimage(const Necklace& t, const CaseParams& params) {
  auto rots = rotation_set(t.canonical);
  std::vector<StringPair> out;
  auto basis = enumerate_weighted_strings(params.k, params.q);
  for (const auto& u : basis) {
    for (const auto& v : basis) {
      if (rots.count(sigma(u, v, params))) out.emplace_back(u, v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t choose_oracle(int n, int m) {
  std::vector<std::vector<std::uint64_t>> c(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    c[i][0] = 1;
    for (int j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
  }
  return c[n][m];
}

}  // namespace

TEST_CASE("bitstring basics") {
  auto s = bs("0011");
  CHECK(s.weight() == 2);
  CHECK(s.rotated(1).str() == "0110");
  CHECK(s.reversed().str() == "1100");
  CHECK(s.slice(1, 2).str() == "01");
  CHECK((s + bs("1")).str() == "00111");
  CHECK(BitString::from_runs({{0, 3}, {1, 2}}).str() == "00011");
  CHECK(BitString::parse("-").empty());
  CHECK(BitString().token() == "-");
  CHECK_THROWS_AS(BitString::parse("012"), DomainError);
  CHECK_THROWS_AS(s.slice(3, 2), DomainError);
}

TEST_CASE("enumerate_weighted_strings") {
  CHECK(strs(enumerate_weighted_strings(2, 1)) == std::vector<std::string>{"01", "10"});
  CHECK(strs(enumerate_weighted_strings(4, 1)) == std::vector<std::string>{"0001", "0010", "0100", "1000"});
  CHECK(enumerate_weighted_strings(9, 3).size() == 84);
  CHECK_THROWS_AS(enumerate_weighted_strings(3, 4), DomainError);
  CHECK_THROWS_AS(enumerate_weighted_strings(3, -1), DomainError);

  for (int n = 1; n <= 10; ++n) {
    for (int m = 0; m <= n; ++m) {
      auto all = enumerate_weighted_strings(n, m);
      CHECK(all.size() == choose_oracle(n, m));
      CHECK(std::is_sorted(all.begin(), all.end()));
      CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
      for (const auto& s : all) CHECK(s.weight() == m);
    }
  }
}

TEST_CASE("orbit") {
  auto a = orbit(bs("010010010"));
  CHECK(a.orbit_size == 3);
  CHECK(a.canonical.str() == "001001001");
  auto b = orbit(bs("000111000"));
  CHECK(b.orbit_size == 9);
  CHECK(b.canonical.str() == "000000111");
  auto c = orbit(bs("00000"));
  CHECK(c.orbit_size == 1);
  CHECK(c.canonical.str() == "00000");

  for (const auto& s : enumerate_weighted_strings(10, 4)) {
    auto n = orbit(s);
    auto rots = rotation_set(s);
    CHECK(n.orbit_size == rots.size());
    CHECK(n.canonical == *rots.begin());
    CHECK(10 % n.orbit_size == 0);
  }
}

TEST_CASE("necklace enumeration against Burnside and binomials") {
  CHECK(enumerate_necklaces(9, 3).size() == 10);
  CHECK(enumerate_necklaces(5, 3).size() == 2);
  CHECK(necklace_count(6, 3) == 4);
  CHECK(necklace_count(9, 3) == 10);
  auto zero = enumerate_necklaces(7, 0);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].orbit_size == 1);

  for (int p = 1; p <= 14; ++p) {
    CHECK(necklace_count(p, p) == 1);
    for (int r = 0; r <= p; ++r) {
      auto all = enumerate_necklaces(p, r);
      std::uint64_t total = 0;
      std::set<BitString> seen;
      for (const auto& n : all) {
        total += n.orbit_size;
        seen.insert(n.canonical);
      }
      CHECK(total == choose_oracle(p, r));
      CHECK(seen.size() == all.size());
      CHECK(all.size() == necklace_count(p, r));
    }
  }
}

TEST_CASE("case parameters") {
  auto c1 = CaseParams::make(11, 5);
  CHECK(c1.kind == CaseKind::kOddOdd);
  CHECK(c1.k == 5);
  CHECK(c1.q == 2);
  CHECK(c1.window() == 5);
  auto c2 = CaseParams::make(8, 3);
  CHECK(c2.kind == CaseKind::kEvenOdd);
  CHECK(c2.k == 3);
  CHECK(c2.q == 1);
  CHECK(c2.window() == 4);
  CHECK_THROWS_AS(CaseParams::make(9, 4), DomainError);
  CHECK_THROWS_AS(CaseParams::make(9, 11), DomainError);
  auto e = CaseParams::explore(8, 4);
  CHECK(e.k == 3);
  CHECK(e.q == 1);
  CHECK_THROWS_AS(CaseParams::explore(9, 4), DomainError);
}

TEST_CASE("sigma") {
  CHECK(sigma(bs("00001"), bs("00100"), CaseParams::make(11, 3)).str() == "00001100100");
  CHECK(sigma(bs("001"), bs("010"), CaseParams::make(8, 3)).str() == "00110100");
  CHECK(sigma(bs("0000"), bs("0000"), CaseParams::make(9, 1)).str() == "000010000");
  CHECK_THROWS_AS(sigma(bs("011"), bs("010"), CaseParams::make(8, 3)), DomainError);
  CHECK_THROWS_AS(sigma(bs("01"), bs("010"), CaseParams::make(8, 3)), DomainError);

  for (int p = 3; p <= 12; ++p) {
    for (int r = 1; r <= p; r += 2) {
      auto params = CaseParams::make(p, r);
      if (params.q > params.k) continue;
      auto basis = enumerate_weighted_strings(params.k, params.q);
      for (const auto& u : basis) {
        for (const auto& v : basis) {
          auto s = sigma(u, v, params);
          CHECK(static_cast<int>(s.size()) == p);
          CHECK(s.weight() == r);
          CHECK(s[static_cast<std::size_t>(params.k)] == 1);
          if (p % 2 == 0) CHECK(s[s.size() - 1] == 0);
        }
      }
    }
  }
}

TEST_CASE("preimage examples") {
  auto params = CaseParams::make(9, 3);
  using P = std::vector<StringPair>;
  CHECK(preimage(orbit(bs("000111000")), params) == P{{bs("0001"), bs("0001")}});
  CHECK(preimage(orbit(bs("010010010")), params) == P{{bs("0100"), bs("0100")}});
  CHECK(preimage(orbit(bs("000110010")), params) == P{{bs("0001"), bs("0100")}});
  CHECK_THROWS_AS(preimage(orbit(bs("0001")), params), DomainError);
}

TEST_CASE("preimage orbit scan agrees with brute force") {
  for (int p = 1; p <= 14; ++p) {
    for (int r = 1; r <= p; r += 2) {
      auto params = CaseParams::make(p, r);
      if (params.q > params.k) continue;
      if (binomial(params.k, params.q) > 40) continue;
      for (const auto& t : enumerate_necklaces(p, r)) {
        CHECK(preimage(t, params) == brute_preimage(t, params));
      }
    }
  }
  for (int p = 4; p <= 12; p += 2) {
    for (int r = 2; r <= p; r += 2) {
      auto params = CaseParams::explore(p, r);
      for (const auto& t : enumerate_necklaces(p, r)) {
        CHECK(preimage(t, params) == brute_preimage(t, params));
      }
    }
  }
}

TEST_CASE("pair counts") {
  auto params = CaseParams::make(9, 3);
  CHECK(pair_counts(bs("0100"), bs("0100"), params) == PairCounts{1, 3});

  for (int p = 3; p <= 13; p += 2) {
    for (int r = 1; r < p; r += 2) {
      auto c = CaseParams::make(p, r);
      auto w = BitString::from_runs({{0, c.k - c.q}, {1, c.q}});
      CHECK(pair_counts(w, w, c) == PairCounts{1, static_cast<std::size_t>(p)});
      for (const auto& u : enumerate_weighted_strings(c.k, c.q)) {
        for (const auto& v : enumerate_weighted_strings(c.k, c.q)) {
          CHECK(p % pair_counts(u, v, c).ntilde == 0);
        }
      }
    }
  }

  // family-(a) shape at (11,5): z = 0 1^q 0^{k-q-1}
  auto c = CaseParams::make(11, 5);
  CHECK(pair_counts(bs("01100"), bs("01100"), c).n == 3);
}

TEST_CASE("window criterion matches preimage size on full orbits") {
  auto c93 = CaseParams::make(9, 3);
  CHECK(remark_size_count(bs("000110010"), c93) == 1);
  CHECK_THROWS_AS(remark_size_count(bs("010010010"), c93), PreconditionError);

  auto c115 = CaseParams::make(11, 5);
  CHECK(remark_size_count(sigma(bs("01100"), bs("01100"), c115), c115) == 3);
  auto w = bs("00011");
  CHECK(remark_size_count(sigma(w, w, c115), c115) == 1);

  for (int p = 2; p <= 14; ++p) {
    for (int r = 1; r <= p; r += 2) {
      auto params = CaseParams::make(p, r);
      if (params.q > params.k) continue;
      for (const auto& s : enumerate_weighted_strings(p, r)) {
        auto n = orbit(s);
        if (n.orbit_size != static_cast<std::size_t>(p)) continue;
        CHECK(remark_size_count(s, params) == preimage(n, params).size());
      }
    }
  }
}

TEST_CASE("every class has a preimage") {
  CHECK(check_proposition_nec(9, 3));
  CHECK(check_proposition_nec(8, 3));
  CHECK(check_proposition_nec(13, 5));
  for (int p = 1; p <= 14; ++p) {
    for (int r = 1; r <= p; r += 2) {
      if (p % 2 == 0 && r == p) continue;
      CHECK(check_proposition_nec(p, r));
    }
  }
}
