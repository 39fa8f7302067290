#include "conditionh/classify.hpp"

#include <sstream>

#include "conditionh/error.hpp"
#include "conditionh/obstructions.hpp"

namespace conditionh {

namespace {

std::string pr_text(PR x) { return "(" + std::to_string(x.first) + "," + std::to_string(x.second) + ")"; }

Verdict holds(int p, int r, CertKind kind, std::string why) {
  Verdict v;
  v.p = p;
  v.r = r;
  v.status = VerdictStatus::kHolds;
  v.certificate = kind;
  v.justification = std::move(why);
  return v;
}

Verdict fails(int p, int r, RefutationRoute route, std::string why) {
  Verdict v;
  v.p = p;
  v.r = r;
  v.status = VerdictStatus::kFails;
  v.refutation = route;
  v.justification = std::move(why);
  return v;
}

Verdict carried_by(int p, int r, const Verdict& base, const std::string& why) {
  Verdict v = base;
  v.p = p;
  v.r = r;
  v.partner = PR{base.p, base.r};
  v.justification = why + "; " + base.justification;
  return v;
}

Verdict classify_odd_odd(int p, int r) {
  if (r == 1) return holds(p, r, CertKind::kR1, "r = 1: Gram matrix p*I over the single half-word");
  if (r == p) return holds(p, r, CertKind::kRp, "edge case r = p, supplied here: singleton certificate, alpha = Tr(B^p)");
  if (r == p - 2) return holds(p, r, CertKind::kRpm2, "r = p-2: Gram matrix p*I");
  if (r == p - 4) return holds(p, r, CertKind::kPartition, "r = p-4: block partition certificate");
  if (p == 11 && r == 3) return holds(p, r, CertKind::kP11R3, "(11,3): explicit sum of four squares");
  if (p == 9 && r == 3) return fails(p, r, RefutationRoute::kP9R3, "(9,3): forced entries violate a 2x2 minor");
  if (r == 3 && p >= 13) return fails(p, r, RefutationRoute::kWitnessB, "r = 3, p >= 13: obstruction witness (b)");
  if (r >= 5 && r <= p - 6) return fails(p, r, RefutationRoute::kWitnessA, "5 <= r <= p-6: obstruction witness (a)");
  throw InternalError("no rule for " + pr_text({p, r}));
}

Verdict classify_even_odd(int p, int r) {
  if (r == 1) return holds(p, r, CertKind::kCase2R1, "p even, r = 1: Gram matrix p*I");
  if (r == p - 1) return holds(p, r, CertKind::kCase2Rpm1, "p even, r = p-1: Gram matrix p*I");
  if (p == 6 && r == 3) return fails(p, r, RefutationRoute::kPropagation, "(6,3): forced entries violate a 2x2 minor");
  if (r >= 5 && r <= p - 3) return fails(p, r, RefutationRoute::kWitnessC, "p even, 5 <= r <= p-3: obstruction witness (c)");
  if (r == 3 && p >= 8) {
    return carried_by(p, r, classify_even_odd(p, p - 3), "r = 3: interchange of A and B gives " + pr_text({p, p - 3}));
  }
  throw InternalError("no rule for " + pr_text({p, r}));
}

}  // namespace

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::kHolds: return "HOLDS";
    case VerdictStatus::kFails: return "FAILS";
    case VerdictStatus::kUnknown: return "UNKNOWN";
  }
  return "?";
}

std::string to_string(RefutationRoute r) {
  switch (r) {
    case RefutationRoute::kWitnessA: return "WITNESS_A";
    case RefutationRoute::kWitnessB: return "WITNESS_B";
    case RefutationRoute::kWitnessC: return "WITNESS_C";
    case RefutationRoute::kP9R3: return "P9R3";
    case RefutationRoute::kPropagation: return "PROPAGATION";
  }
  return "?";
}

std::string Verdict::label() const {
  if (certificate) return to_string(status) + "(" + to_string(*certificate) + ")";
  if (refutation) return to_string(status) + "(" + to_string(*refutation) + ")";
  return to_string(status);
}

std::string Verdict::table_line() const {
  std::string out = "p=" + std::to_string(p) + " r=" + std::to_string(r) + " " + label();
  if (partner) out += " via=" + pr_text(*partner);
  return out;
}

Verdict classify(int p, int r) {
  if (p < 1 || r < 0 || r > p) {
    throw DomainError("need p >= 1 and 0 <= r <= p, got p=" + std::to_string(p) + " r=" + std::to_string(r));
  }
  const bool p_odd = p % 2 == 1;
  const bool r_odd = r % 2 == 1;
  if (p_odd && r_odd) return classify_odd_odd(p, r);
  if (!p_odd && r_odd) return classify_even_odd(p, r);
  if (p_odd) {
    return carried_by(p, r, classify_odd_odd(p, p - r), "r -> p-r with A and B interchanged gives " + pr_text({p, p - r}));
  }
  if (r == p) return holds(p, r, CertKind::kEvenPower, "edge case r = p, supplied here: singleton certificate, alpha = Tr(B^p)");
  if (r == 0) {
    return carried_by(p, r, classify(p, p), "r -> p-r with A and B interchanged gives " + pr_text({p, p}));
  }
  Verdict v;
  v.p = p;
  v.r = r;
  v.justification = "p and r both even: outside the classified range";
  return v;
}

VerdictCheck check_verdict(const Verdict& v) {
  const int p = v.partner ? v.partner->first : v.p;
  const int r = v.partner ? v.partner->second : v.r;
  const std::string at = " at " + pr_text({p, r});
  VerdictCheck out;
  switch (v.status) {
    case VerdictStatus::kUnknown:
      out.ok = true;
      out.detail = "nothing to check";
      return out;
    case VerdictStatus::kHolds: {
      if (!v.certificate) throw InternalError("HOLDS verdict without certificate kind");
      const auto res = verify_certificate(build_certificate(*v.certificate, p, r));
      out.ok = res.verified;
      out.detail = to_string(*v.certificate) + (res.verified ? " VERIFIED" : " REJECTED: " + res.reason) + at;
      return out;
    }
    case VerdictStatus::kFails:
      break;
  }
  const auto run = run_refutation(v);
  if (!run.refutation) {
    out.detail = run.problem;
    return out;
  }
  const auto rep = replay(*run.refutation);
  out.ok = rep.ok;
  out.detail = to_string(*v.refutation) + (rep.ok ? " REPLAYED" : " REPLAY FAILED: " + rep.message) + at;
  return out;
}

RefutationRun run_refutation(const Verdict& v) {
  if (v.status != VerdictStatus::kFails || !v.refutation) throw PreconditionError(v.label() + " has no refutation");
  const int p = v.partner ? v.partner->first : v.p;
  const int r = v.partner ? v.partner->second : v.r;
  const std::string at = " at " + pr_text({p, r});
  RefutationRun out;
  switch (*v.refutation) {
    case RefutationRoute::kWitnessA:
    case RefutationRoute::kWitnessB:
    case RefutationRoute::kWitnessC: {
      auto res = verify_obstruction(witness_family(p, r));
      if (!res.ok()) {
        out.problem = "witness rejected" + at + ": " + res.rejected;
      } else {
        out.refutation = std::move(res.refutation);
      }
      break;
    }
    case RefutationRoute::kP9R3:
      out.refutation = refute_p9r3();
      break;
    case RefutationRoute::kPropagation: {
      auto res = forced_entry_propagation(CaseParams::make(p, r));
      if (!res.infeasible) {
        out.problem = "propagation found no contradiction" + at;
      } else {
        out.refutation = std::move(res.refutation);
      }
      break;
    }
  }
  return out;
}

std::string classification_table(int max_p) {
  if (max_p < 1) throw DomainError("max_p must be positive");
  std::ostringstream os;
  for (int p = 1; p <= max_p; ++p) {
    for (int r = 0; r <= p; ++r) os << classify(p, r).table_line() << '\n';
  }
  return os.str();
}

HillarResult hillar_implied(const std::set<PR>& known, PR target) {
  std::set<PR> closure;
  for (const auto& [p, r] : known) {
    if (r < 0 || r > p) continue;
    closure.insert({p, r});
    closure.insert({p, p - r});
  }
  const auto [tp, tr] = target;
  for (const auto& [p, r] : closure) {
    if (p >= tp && r >= tr && p - r >= tp - tr) return {true, PR{p, r}};
  }
  return {};
}

std::string BmvResult::to_string() const {
  if (state == BmvState::kOpen) return "OPEN";
  return "NONNEG_PROVED via=" + pr_text(*witness);
}

BmvResult bmv_status(int p, int r, int bound) {
  if (p < 1 || r < 0 || r > p) throw DomainError("need p >= 1 and 0 <= r <= p");
  if (bound < p) throw DomainError("bound must be at least p");
  std::set<PR> known;
  for (int pp = 1; pp <= bound; ++pp) {
    for (int rr = 0; rr <= pp; ++rr) {
      if (classify(pp, rr).status == VerdictStatus::kHolds) known.insert({pp, rr});
    }
  }
  const auto h = hillar_implied(known, {p, r});
  BmvResult out;
  if (h.implied) {
    out.state = BmvState::kNonnegProved;
    out.witness = h.source;
  }
  return out;
}

}  // namespace conditionh
