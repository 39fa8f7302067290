#include "conditionh/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>

#include "conditionh/classify.hpp"
#include "conditionh/feasibility.hpp"
#include "conditionh/golden_table.hpp"
#include "conditionh/matrixcheck.hpp"
#include "conditionh/obstructions.hpp"

namespace conditionh {

namespace {

// Returns an empty string on success, otherwise the first problem found.
using Check = std::function<std::string(std::string& summary)>;

std::string pr(int p, int r) { return "(" + std::to_string(p) + "," + std::to_string(r) + ")"; }

std::string ac1(std::string& summary) {
  std::vector<std::tuple<CertKind, int, int>> jobs;
  for (int p = 3; p <= 15; p += 2) jobs.emplace_back(CertKind::kR1, p, 1);
  for (int p = 5; p <= 15; p += 2) jobs.emplace_back(CertKind::kRpm2, p, p - 2);
  for (int p = 5; p <= 15; p += 2) jobs.emplace_back(CertKind::kPartition, p, p - 4);
  jobs.emplace_back(CertKind::kP11R3, 11, 3);
  for (int p = 4; p <= 14; p += 2) {
    jobs.emplace_back(CertKind::kCase2R1, p, 1);
    jobs.emplace_back(CertKind::kCase2Rpm1, p, p - 1);
  }
  for (const auto& [kind, p, r] : jobs) {
    auto res = verify_certificate(build_certificate(kind, p, r));
    if (!res.verified) return to_string(kind) + " at " + pr(p, r) + ": " + res.reason;
  }
  summary = std::to_string(jobs.size()) + " certificates VERIFIED";
  return {};
}

std::string ac2(std::string& summary) {
  std::size_t classes = 0;
  for (int p = 5; p <= 15; p += 2) {
    const auto counts = partition_lemma_counts(p);
    if (counts.size() != necklace_count(p, p - 4)) return "class count mismatch at p=" + std::to_string(p);
    for (auto c : counts) {
      if (c != 1) return "a class with " + std::to_string(c) + " triples at p=" + std::to_string(p);
    }
    classes += counts.size();
  }
  summary = std::to_string(classes) + " classes, each hit exactly once";
  return {};
}

std::string ac3(std::string& summary) {
  const std::vector<std::pair<char, std::vector<std::pair<int, int>>>> families{
      {'a', {{11, 5}, {13, 5}, {13, 7}, {15, 5}, {15, 7}, {15, 9}}},
      {'b', {{13, 3}, {15, 3}}},
      {'c', {{8, 5}, {10, 5}, {10, 7}, {12, 5}, {12, 7}, {12, 9}}},
  };
  int witnesses = 0;
  for (const auto& [fam, cases] : families) {
    for (const auto& [p, r] : cases) {
      if (witness_family_label(p, r) != fam) return "wrong family at " + pr(p, r);
      auto res = verify_obstruction(witness_family(p, r));
      if (!res.ok()) return "witness rejected at " + pr(p, r) + ": " + res.rejected;
      if (!replay(*res.refutation).ok) return "replay failed at " + pr(p, r);
      ++witnesses;
    }
  }
  const auto rows = p9r3_table();
  const BitString v1 = BitString::parse("0001");
  const BitString v2 = BitString::parse("0100");
  const std::vector<std::size_t> sizes{9, 3, 9};
  const std::vector<std::vector<StringPair>> pre{{{v1, v1}}, {{v2, v2}}, {{v1, v2}}};
  if (rows.size() != 3) return "table has " + std::to_string(rows.size()) + " rows";
  for (std::size_t i = 0; i < 3; ++i) {
    if (rows[i].orbit_size != sizes[i] || rows[i].preimage != pre[i]) return "table row " + std::to_string(i + 1);
  }
  if (!replay(refute_p9r3()).ok) return "(9,3) refutation does not replay";
  for (auto [p, r] : {std::pair{6, 3}, {9, 3}}) {
    auto prop = forced_entry_propagation(CaseParams::make(p, r));
    if (!prop.infeasible) return "propagation feasible at " + pr(p, r);
    if (!replay(*prop.refutation).ok) return "propagation replay failed at " + pr(p, r);
  }
  summary = std::to_string(witnesses) + " witnesses, (9,3) table, propagation at (6,3) and (9,3)";
  return {};
}

std::string ac4(std::string& summary) {
  int instances = 0;
  for (int p = 1; p <= 14; ++p) {
    for (int r = 0; r <= p; ++r) {
      const auto ns = enumerate_necklaces(p, r);
      std::uint64_t total = 0;
      for (const auto& t : ns) total += t.orbit_size;
      if (total != binomial(p, r)) return "orbit sizes at " + pr(p, r);
      if (ns.size() != necklace_count(p, r)) return "necklace count at " + pr(p, r);
      if (r % 2 == 1 && !check_proposition_nec(p, r)) return "empty preimage at " + pr(p, r);
      if (r % 2 == 1 && r < p && p <= 13 && !verify_lemma_first(CaseParams::make(p, r))) {
        return "first-word property at " + pr(p, r);
      }
      ++instances;
    }
  }
  summary = std::to_string(instances) + " (p,r) pairs";
  return {};
}

std::string ac5(std::string& summary) {
  const std::vector<std::tuple<CertKind, int, int>> jobs{{CertKind::kPartition, 7, 3},
                                                         {CertKind::kPartition, 9, 5},
                                                         {CertKind::kP11R3, 11, 3},
                                                         {CertKind::kPartition, 11, 7},
                                                         {CertKind::kPartition, 13, 9}};
  double worst = 0;
  for (const auto& [kind, p, r] : jobs) {
    auto rep = numeric_consistency(p, r, build_certificate(kind, p, r), 20, 4, 1e-9);
    if (!rep.passed()) return "deviation at " + pr(p, r) + ", seed " + std::to_string(rep.failed_seeds.front());
    worst = std::max(worst, rep.max_deviation);
  }
  summary = "100 trials, max reldev " + format_double(worst);
  return {};
}

std::string ac6(std::string& summary) {
  SolveOptions opt;
  opt.tolerance = 1e-10;
  opt.max_iterations = 50000;
  for (auto [p, r] : {std::pair{5, 3}, {7, 3}, {9, 5}}) {
    const auto prob = assemble(CaseParams::make(p, r));
    const auto rep = solve(prob, opt);
    if (rep.status != SolveStatus::kFeasible) return "solver stalled at " + pr(p, r);
    const auto rat = rationalize_and_verify(prob, rep);
    if (!rat.certificate) return "rationalization failed at " + pr(p, r) + ": " + rat.failure;
  }
  for (auto [p, r] : {std::pair{9, 3}, {6, 3}}) {
    const auto rep = solve(assemble(CaseParams::make(p, r)), opt);
    if (rep.status != SolveStatus::kStalled) return "solver claims feasibility at " + pr(p, r);
  }
  summary = "3 exact certificates, 2 STALLED";
  return {};
}

std::string ac7(std::string& summary) {
  const std::string table = classification_table(15);
  if (table != kGoldenTableP15) {
    std::size_t i = 0;
    while (i < table.size() && i < std::string(kGoldenTableP15).size() && table[i] == kGoldenTableP15[i]) ++i;
    const auto start = table.rfind('\n', i);
    return "table differs near line: " + table.substr(start == std::string::npos ? 0 : start + 1, 40);
  }
  const auto bmv = bmv_status(6, 3, 7);
  if (bmv.to_string() != "NONNEG_PROVED via=(7,3)") return "bmv_status(6,3,7) = " + bmv.to_string();
  summary = "table matches, bmv_status(6,3,7) = " + bmv.to_string();
  return {};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::ostream& out) {
  struct Spec {
    const char* id;
    const char* title;
    double budget;
    Check run;
  };
  const std::vector<Spec> specs{
      {"AC1", "exact certificate suite", 10, ac1},   {"AC2", "partition property", 10, ac2},
      {"AC3", "refutation suite", 10, ac3},          {"AC4", "combinatorial invariants", 30, ac4},
      {"AC5", "numeric oracle", 30, ac5},            {"AC6", "feasibility agreement", 60, ac6},
      {"AC7", "classification table", 10, ac7},
  };
  std::vector<CriterionResult> results;
  for (const auto& s : specs) {
    CriterionResult res{s.id, s.title, false, {}, 0, s.budget};
    const auto t0 = std::chrono::steady_clock::now();
    std::string summary;
    std::string problem;
    try {
      problem = s.run(summary);
    } catch (const std::exception& e) {
      problem = std::string("exception: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (problem.empty() && res.seconds > s.budget) problem = "over the time budget";
    res.passed = problem.empty();
    res.detail = res.passed ? summary : problem;
    char timing[64];
    std::snprintf(timing, sizeof timing, " (%.2f s, budget %.0f s)", res.seconds, s.budget);
    out << res.id << ' ' << (res.passed ? "PASS" : "FAIL") << ' ' << res.title << ": " << res.detail << timing
        << '\n';
    out.flush();
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace conditionh
