#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "conditionh/acceptance.hpp"
#include "conditionh/certificate_io.hpp"
#include "conditionh/classify.hpp"
#include "conditionh/error.hpp"
#include "conditionh/feasibility.hpp"
#include "conditionh/matrixcheck.hpp"

using namespace conditionh;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

int cmd_classify(int p, int r, bool json) {
  const Verdict v = classify(p, r);
  if (json) {
    nlohmann::json j;
    j["p"] = v.p;
    j["r"] = v.r;
    j["status"] = to_string(v.status);
    j["label"] = v.label();
    j["certificate"] = v.certificate ? nlohmann::json(to_string(*v.certificate)) : nlohmann::json(nullptr);
    j["refutation"] = v.refutation ? nlohmann::json(to_string(*v.refutation)) : nlohmann::json(nullptr);
    j["partner"] = v.partner ? nlohmann::json::array({v.partner->first, v.partner->second}) : nlohmann::json(nullptr);
    j["justification"] = v.justification;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << v.table_line() << '\n' << v.justification << '\n';
  }
  return kOk;
}

int cmd_cert_verify(const std::string& file) {
  GramCertificate g;
  try {
    g = load_certificate(file);
  } catch (const ParseError& e) {
    std::cout << "REJECTED: " << e.what() << '\n';
    return kFailed;
  }
  const auto res = verify_certificate(g);
  std::cout << "p=" << g.params.p << " r=" << g.params.r << " basis=" << g.basis.size()
            << " constraints=" << res.key.targets.size() << '\n';
  Rational worst = 0;
  for (std::size_t i = 0; i < res.key.sums.size(); ++i) {
    const Rational d = abs(res.key.sums[i] - Rational(static_cast<long>(res.key.targets[i])));
    if (d > worst) worst = d;
    if (d != 0) {
      std::cout << "residual necklace=" << res.key.necklaces[i].canonical.token() << " sum=" << to_string(res.key.sums[i])
                << " target=" << res.key.targets[i] << '\n';
    }
  }
  std::cout << "max_residual=" << to_string(worst) << '\n';
  if (res.psd) {
    std::cout << "psd=" << (res.psd->psd ? "yes" : "no");
    if (!res.psd->psd) {
      std::cout << " witness=[";
      for (std::size_t i = 0; i < res.psd->witness.size(); ++i) {
        std::cout << (i ? "," : "") << to_string(res.psd->witness[i]);
      }
      std::cout << "] value=" << to_string(res.psd->witness_value);
    }
    std::cout << '\n';
  }
  if (res.verified) {
    std::cout << "VERIFIED\n";
    return kOk;
  }
  std::cout << "REJECTED: " << res.reason << '\n';
  return kFailed;
}

int cmd_refute(int p, int r) {
  const Verdict v = classify(p, r);
  if (v.status != VerdictStatus::kFails) {
    std::cout << v.table_line() << ": nothing to refute\n";
    return kFailed;
  }
  if (v.partner) std::cout << "# carried by (" << v.partner->first << "," << v.partner->second << "): " << v.justification << '\n';
  const auto run = run_refutation(v);
  if (!run.refutation) {
    std::cout << "FAILED: " << run.problem << '\n';
    return kFailed;
  }
  std::cout << run.refutation->to_text();
  const auto rep = replay(*run.refutation);
  std::cout << (rep.ok ? "REPLAYED" : "REPLAY FAILED: " + rep.message) << '\n';
  return rep.ok ? kOk : kFailed;
}

int cmd_sdp(int p, int r, double tol, int max_iters, bool rationalize, const std::string& out, bool explore) {
  const bool both_even = p % 2 == 0 && r % 2 == 0;
  if (both_even && !explore) throw DomainError("p and r are both even; pass --explore");
  const CaseParams params = both_even ? CaseParams::explore(p, r) : CaseParams::make(p, r);
  const auto prob = assemble(params);
  SolveOptions opt;
  opt.tolerance = tol;
  opt.max_iterations = max_iters;
  const auto rep = solve(prob, opt);
  std::cout << "p=" << p << " r=" << r << " dimension=" << prob.dimension << " constraints=" << prob.constraints.size()
            << " face=" << rep.reduced_dimension << '\n';
  std::cout << rep.summary() << '\n';
  if (rep.status != SolveStatus::kFeasible) return kFailed;
  if (!rationalize) return kOk;
  const auto rat = rationalize_and_verify(prob, rep);
  if (!rat.certificate) {
    std::cout << "rationalize: FAILED " << rat.failure << '\n';
    return kFailed;
  }
  std::cout << "rationalize: VERIFIED denominator_bound=" << rat.denominator_bound << '\n';
  if (out.empty()) {
    write_certificate(std::cout, *rat.certificate);
  } else {
    save_certificate(out, *rat.certificate);
    std::cout << "wrote " << out << '\n';
  }
  return kOk;
}

int cmd_numcheck(int p, int r, const std::string& file, int trials, int n, std::uint64_t seed, double tol) {
  const GramCertificate g = load_certificate(file);
  const auto rep = numeric_consistency(p, r, g, trials, n, tol, seed);
  std::cout << rep.to_text();
  return rep.passed() ? kOk : kFailed;
}

int cmd_selftest() {
  int failed = 0;
  for (const auto& c : run_acceptance(std::cout)) failed += c.passed ? 0 : 1;
  return failed == 0 ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Condition H certificates, refutations and classification"};
  app.require_subcommand(1);
  int result = kOk;

  int p = 0, r = 0;
  bool json = false;
  auto* classify_cmd = app.add_subcommand("classify", "verdict for one (p,r)");
  classify_cmd->add_option("--p", p)->required();
  classify_cmd->add_option("--r", r)->required();
  classify_cmd->add_flag("--json", json);

  int max_p = 15;
  auto* table_cmd = app.add_subcommand("table", "classification table");
  table_cmd->add_option("--max-p", max_p)->required();

  auto* cert_cmd = app.add_subcommand("cert", "build or verify certificate files");
  cert_cmd->require_subcommand(1);
  std::string kind, out, file;
  auto* build_cmd = cert_cmd->add_subcommand("build", "write a built-in certificate");
  build_cmd->add_option("--kind", kind)->required();
  build_cmd->add_option("--p", p)->required();
  build_cmd->add_option("--r", r)->required();
  build_cmd->add_option("--out", out)->required();
  auto* verify_cmd = cert_cmd->add_subcommand("verify", "check a certificate file exactly");
  verify_cmd->add_option("--file", file)->required();

  auto* refute_cmd = app.add_subcommand("refute", "print and replay a refutation transcript");
  refute_cmd->add_option("--p", p)->required();
  refute_cmd->add_option("--r", r)->required();

  double tol = 1e-10;
  int max_iters = 50000;
  bool rationalize = false, explore = false;
  auto* sdp_cmd = app.add_subcommand("sdp", "numerical feasibility search");
  sdp_cmd->add_option("--p", p)->required();
  sdp_cmd->add_option("--r", r)->required();
  sdp_cmd->add_option("--tol", tol)->check(CLI::PositiveNumber);
  sdp_cmd->add_option("--max-iters", max_iters)->check(CLI::PositiveNumber);
  sdp_cmd->add_flag("--rationalize", rationalize);
  sdp_cmd->add_option("--out", out);
  sdp_cmd->add_flag("--explore", explore, "allow p and r both even");

  int trials = 20, n = 4;
  std::uint64_t seed = 0;
  double check_tol = 1e-9;
  auto* num_cmd = app.add_subcommand("numcheck", "compare a certificate with alpha on random PSD pairs");
  num_cmd->add_option("--p", p)->required();
  num_cmd->add_option("--r", r)->required();
  num_cmd->add_option("--cert", file)->required();
  num_cmd->add_option("--trials", trials)->check(CLI::NonNegativeNumber);
  num_cmd->add_option("--n", n)->check(CLI::PositiveNumber);
  num_cmd->add_option("--seed", seed);
  num_cmd->add_option("--tol", check_tol)->check(CLI::PositiveNumber);

  int bound = 0;
  auto* bmv_cmd = app.add_subcommand("bmv", "nonnegativity of alpha via monotonicity from HOLDS pairs");
  bmv_cmd->add_option("--p", p)->required();
  bmv_cmd->add_option("--r", r)->required();
  bmv_cmd->add_option("--bound", bound)->required();

  auto* selftest_cmd = app.add_subcommand("selftest", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*classify_cmd) {
      result = cmd_classify(p, r, json);
    } else if (*table_cmd) {
      std::cout << classification_table(max_p);
    } else if (*build_cmd) {
      save_certificate(out, build_certificate(parse_cert_kind(kind), p, r));
      std::cout << "wrote " << out << '\n';
    } else if (*verify_cmd) {
      result = cmd_cert_verify(file);
    } else if (*refute_cmd) {
      result = cmd_refute(p, r);
    } else if (*sdp_cmd) {
      result = cmd_sdp(p, r, tol, max_iters, rationalize, out, explore);
    } else if (*num_cmd) {
      result = cmd_numcheck(p, r, file, trials, n, seed, check_tol);
    } else if (*bmv_cmd) {
      std::cout << bmv_status(p, r, bound).to_string() << '\n';
    } else if (*selftest_cmd) {
      result = cmd_selftest();
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return result;
}
