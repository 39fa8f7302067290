#include "conditionh/obstructions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "conditionh/error.hpp"

namespace conditionh {

namespace {

using Inputs = std::vector<std::pair<std::string, std::string>>;

Inputs base_inputs(const CaseParams& c) { return {{"p", std::to_string(c.p)}, {"r", std::to_string(c.r)}}; }

Fact make_fact(std::string name, Inputs inputs, std::string value) {
  return Fact{std::move(name), std::move(inputs), std::move(value)};
}

Fact pair_fact(const char* name, const CaseParams& c, const BitString& u, const BitString& v, std::size_t value) {
  Inputs in = base_inputs(c);
  in.emplace_back("u", u.token());
  in.emplace_back("v", v.token());
  return make_fact(name, std::move(in), std::to_string(value));
}

std::string format_pairs(const std::vector<StringPair>& pairs) {
  std::string out = "{";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i) out += ",";
    out += "(" + pairs[i].first.token() + "," + pairs[i].second.token() + ")";
  }
  return out + "}";
}

Fact preimage_fact(const CaseParams& c, const BitString& s) {
  Inputs in = base_inputs(c);
  in.emplace_back("s", s.token());
  return make_fact("preimage", std::move(in), format_pairs(preimage(orbit(s), c)));
}

Fact orbit_fact(const CaseParams& c, const BitString& s) {
  Inputs in = base_inputs(c);
  in.emplace_back("s", s.token());
  return make_fact("orbit_size", std::move(in), std::to_string(orbit(s).orbit_size));
}

const std::string& input(const Fact& f, const std::string& key) {
  for (const auto& [k, v] : f.inputs) {
    if (k == key) return v;
  }
  throw ParseError("fact '" + f.name + "' lacks input '" + key + "'");
}

int input_int(const Fact& f, const std::string& key) {
  const std::string& s = input(f, key);
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw ParseError("bad integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad integer '" + s + "'");
  }
}

BitString input_word(const Fact& f, const std::string& key) {
  try {
    return BitString::parse(input(f, key));
  } catch (const DomainError&) {
    throw ParseError("bad word in fact '" + f.name + "'");
  }
}

CaseParams fact_params(const Fact& f) { return CaseParams::make(input_int(f, "p"), input_int(f, "r")); }

std::pair<Rational, Rational> split_relation(const std::string& value, const std::string& op) {
  auto pos = value.find(op);
  if (pos == std::string::npos) throw ParseError("expected '" + op + "' in '" + value + "'");
  return {parse_rational(value.substr(0, pos)), parse_rational(value.substr(pos + op.size()))};
}

BitString w_of(const CaseParams& c) { return BitString::from_runs({{0, c.k - c.q}, {1, c.q}}); }

std::string label(const char* what, const BitString& a, const BitString& b) {
  return std::string(what) + "(" + a.token() + "," + b.token() + ")";
}

}  // namespace

std::string Fact::to_line() const {
  std::string out = "FACT " + name + " ";
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (i) out += ",";
    out += inputs[i].first + "=" + inputs[i].second;
  }
  return out + " = " + value;
}

Fact Fact::parse(const std::string& line) {
  std::istringstream in(line);
  std::string tag, name, args, eq, value, extra;
  if (!(in >> tag >> name >> args >> eq >> value) || tag != "FACT" || eq != "=" || (in >> extra)) {
    throw ParseError("malformed fact line: '" + line + "'");
  }
  Fact f;
  f.name = name;
  f.value = value;
  std::istringstream parts(args);
  std::string item;
  while (std::getline(parts, item, ',')) {
    auto pos = item.find('=');
    if (pos == std::string::npos || pos == 0) throw ParseError("malformed input '" + item + "'");
    f.inputs.emplace_back(item.substr(0, pos), item.substr(pos + 1));
  }
  return f;
}

std::string to_string(RefutationKind kind) {
  return kind == RefutationKind::kLemmaNeg ? "LEMMA_NEG" : "CS_PROPAGATION";
}

std::string Refutation::to_text() const {
  std::string out;
  for (const auto& f : transcript) out += f.to_line() + "\n";
  out += "CONCLUSION condition-h-refuted " + to_string(kind) + "\n";
  return out;
}

Refutation parse_refutation(const std::string& text) {
  Refutation out;
  std::istringstream in(text);
  std::string line;
  bool concluded = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (concluded) throw ParseError("text after CONCLUSION");
    if (line.rfind("CONCLUSION ", 0) == 0) {
      const std::string prefix = "CONCLUSION condition-h-refuted ";
      if (line.rfind(prefix, 0) != 0) throw ParseError("malformed conclusion");
      const std::string kind = line.substr(prefix.size());
      if (kind == "LEMMA_NEG") {
        out.kind = RefutationKind::kLemmaNeg;
      } else if (kind == "CS_PROPAGATION") {
        out.kind = RefutationKind::kCsPropagation;
      } else {
        throw ParseError("unknown refutation kind '" + kind + "'");
      }
      concluded = true;
      continue;
    }
    out.transcript.push_back(Fact::parse(line));
  }
  if (!concluded) throw ParseError("missing CONCLUSION line");
  if (out.transcript.empty()) throw ParseError("empty transcript");
  try {
    out.params = fact_params(out.transcript.front());
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  return out;
}

bool verify_lemma_first(const CaseParams& params) {
  const BitString w = w_of(params);
  const auto p = static_cast<std::size_t>(params.p);
  for (const auto& u : enumerate_weighted_strings(params.k, params.q)) {
    const PairCounts c = pair_counts(w, u, params);
    if (c.ntilde != p) return false;
    const bool starts_with_zero = u.empty() || u[0] == 0;
    if ((starts_with_zero || params.kind == CaseKind::kEvenOdd) && c.n != 1) return false;
  }
  return true;
}

ObstructionCheck verify_obstruction(const ObstructionWitness& wit) {
  const CaseParams& c = wit.params;
  for (const BitString* s : {&wit.w, &wit.x, &wit.y, &wit.z}) {
    if (static_cast<int>(s->size()) != c.k || s->weight() != c.q) {
      throw DomainError("witness word '" + s->token() + "' is not in E_{" + std::to_string(c.k) + "," +
                        std::to_string(c.q) + "}");
    }
  }
  ObstructionCheck out;
  if (wit.w != w_of(c)) {
    out.rejected = "w must be " + w_of(c).token();
    return out;
  }
  if (wit.x == wit.y) {
    out.rejected = "x = y";
    return out;
  }
  if (wit.x == wit.z) {
    out.rejected = "x = z";
    return out;
  }
  if (wit.x == wit.w || wit.y == wit.w || wit.z == wit.w) {
    out.rejected = "x, y, z must differ from w";
    return out;
  }

  const auto p = static_cast<std::size_t>(c.p);
  Refutation ref;
  ref.kind = RefutationKind::kLemmaNeg;
  ref.params = c;
  ref.witness = wit;

  const std::vector<std::pair<const BitString*, const BitString*>> unit_pairs{
      {&wit.w, &wit.w}, {&wit.w, &wit.x}, {&wit.w, &wit.y}, {&wit.x, &wit.x}};
  for (auto [a, b] : unit_pairs) {
    const PairCounts pc = pair_counts(*a, *b, c);
    ref.transcript.push_back(pair_fact("N", c, *a, *b, pc.n));
    ref.transcript.push_back(pair_fact("Ntilde", c, *a, *b, pc.ntilde));
    if (pc.n != 1) {
      out.rejected = label("N", *a, *b) + " = " + std::to_string(pc.n) + ", expected 1";
      return out;
    }
    if (pc.ntilde != p) {
      out.rejected = label("Ntilde", *a, *b) + " = " + std::to_string(pc.ntilde) + ", expected " + std::to_string(p);
      return out;
    }
  }

  const BitString szz = sigma(wit.z, wit.z, c);
  std::vector<StringPair> expected{{wit.z, wit.z}, {wit.x, wit.y}, {wit.y, wit.x}};
  std::sort(expected.begin(), expected.end());
  ref.transcript.push_back(preimage_fact(c, szz));
  if (preimage(orbit(szz), c) != expected) {
    out.rejected = "preimage of the class of sigma(z,z) is " + ref.transcript.back().value + ", expected " +
                   format_pairs(expected);
    return out;
  }
  const PairCounts zz = pair_counts(wit.z, wit.z, c);
  ref.transcript.push_back(pair_fact("N", c, wit.z, wit.z, zz.n));
  ref.transcript.push_back(pair_fact("Ntilde", c, wit.z, wit.z, zz.ntilde));

  // Ñ(z,z) <= p < 2p, while the key system would force Ñ(z,z) >= 2p
  Inputs in = base_inputs(c);
  in.emplace_back("z", wit.z.token());
  ref.transcript.push_back(make_fact("divisor_bound", std::move(in),
                                     std::to_string(zz.ntilde) + "<" + std::to_string(2 * p)));
  if (zz.ntilde > p) throw InternalError("orbit larger than word length");
  out.refutation = std::move(ref);
  return out;
}

std::optional<char> witness_family_label(int p, int r) {
  if (p < 1 || r < 0 || r > p || r % 2 == 0) return std::nullopt;
  if (p % 2 == 1) {
    if (r >= 5 && r <= p - 6) return 'a';
    if (r == 3 && p >= 13) return 'b';
    return std::nullopt;
  }
  if (r >= 5 && r <= p - 3) return 'c';
  return std::nullopt;
}

ObstructionWitness witness_family(int p, int r) {
  const auto fam = witness_family_label(p, r);
  if (!fam) {
    throw DomainError("no witness family covers p=" + std::to_string(p) + " r=" + std::to_string(r));
  }
  const CaseParams c = CaseParams::make(p, r);
  const int k = c.k;
  const int q = c.q;
  ObstructionWitness wit;
  wit.params = c;
  wit.w = w_of(c);
  switch (*fam) {
    case 'a':
      wit.x = BitString::from_runs({{0, 1}, {1, 1}, {0, k - q - 1}, {1, q - 1}});
      wit.y = BitString::from_runs({{0, k - q - 2}, {1, q}, {0, 2}});
      wit.z = BitString::from_runs({{0, 1}, {1, q}, {0, k - q - 1}});
      break;
    case 'b':
      wit.x = BitString::from_runs({{0, k - 3}, {1, 1}, {0, 2}});
      wit.y = BitString::from_runs({{0, 1}, {1, 1}, {0, k - 2}});
      wit.z = wit.y;
      break;
    default:
      wit.x = BitString::from_runs({{1, 1}, {0, k - q}, {1, q - 1}});
      wit.y = BitString::from_runs({{0, k - q - 1}, {1, q}, {0, 1}});
      wit.z = BitString::from_runs({{1, q}, {0, k - q}});
      break;
  }
  return wit;
}

PropagationResult forced_entry_propagation(const CaseParams& params) {
  const auto basis = enumerate_weighted_strings(params.k, params.q);
  PropagationResult out;
  // unordered index pair -> forcing facts in key-system order
  std::map<IndexPair, std::vector<ForcedEntry>> by_entry;
  for (const auto& con : build_key_system(params)) {
    if (con.pairs.size() != 1) continue;
    const auto [i, j] = con.pairs.front();
    ForcedEntry e{i, j, Rational(static_cast<unsigned long>(con.target)), con.necklace};
    by_entry[{std::min(i, j), std::max(i, j)}].push_back(e);
    out.forced.push_back(std::move(e));
  }

  auto forced_fact = [&](const ForcedEntry& e) {
    Inputs in = base_inputs(params);
    in.emplace_back("s", e.source.canonical.token());
    in.emplace_back("u", basis[e.row].token());
    in.emplace_back("v", basis[e.col].token());
    return make_fact("forced_entry", std::move(in), to_string(e.value));
  };
  auto fail = [&](std::vector<const ForcedEntry*> used, Fact violation) {
    Refutation ref;
    ref.kind = RefutationKind::kCsPropagation;
    ref.params = params;
    for (const auto* e : used) ref.transcript.push_back(forced_fact(*e));
    ref.transcript.push_back(std::move(violation));
    out.infeasible = true;
    out.refutation = std::move(ref);
    return out;
  };
  auto entry_inputs = [&](std::size_t i, std::size_t j) {
    Inputs in = base_inputs(params);
    in.emplace_back("u", basis[i].token());
    in.emplace_back("v", basis[j].token());
    return in;
  };

  for (const auto& [key, list] : by_entry) {
    for (const auto& e : list) {
      if (e.value != list.front().value) {
        return fail({&list.front(), &e},
                    make_fact("symmetry_conflict", entry_inputs(key.first, key.second),
                              to_string(list.front().value) + "!=" + to_string(e.value)));
      }
    }
  }
  auto diag = [&](std::size_t i) -> const ForcedEntry* {
    auto it = by_entry.find({i, i});
    return it == by_entry.end() ? nullptr : &it->second.front();
  };
  for (const auto& [key, list] : by_entry) {
    if (key.first == key.second && list.front().value < 0) {
      return fail({&list.front()}, make_fact("negative_diagonal", entry_inputs(key.first, key.first),
                                             to_string(list.front().value) + "<0"));
    }
  }
  for (const auto& [key, list] : by_entry) {
    if (key.first == key.second || list.front().value == 0) continue;
    for (std::size_t idx : {key.first, key.second}) {
      const ForcedEntry* d = diag(idx);
      if (d && d->value == 0) {
        return fail({d, &list.front()}, make_fact("zero_diagonal", entry_inputs(key.first, key.second),
                                                  "0*" + to_string(list.front().value) + "!=0"));
      }
    }
  }
  for (const auto& [key, list] : by_entry) {
    if (key.first == key.second) continue;
    const ForcedEntry* a = diag(key.first);
    const ForcedEntry* b = diag(key.second);
    if (!a || !b) continue;
    const Rational off = list.front().value;
    const Rational lhs = off * off;
    const Rational rhs = a->value * b->value;
    if (lhs > rhs) {
      return fail({a, b, &list.front()}, make_fact("cs_violation", entry_inputs(key.first, key.second),
                                                   to_string(lhs) + ">" + to_string(rhs)));
    }
  }
  return out;
}

std::vector<TableRow> p9r3_table() {
  const CaseParams c = CaseParams::make(9, 3);
  std::vector<TableRow> rows;
  for (const char* s : {"000111000", "010010010", "000110010"}) {
    TableRow row;
    row.typical = BitString::parse(s);
    const Necklace t = orbit(row.typical);
    row.orbit_size = t.orbit_size;
    row.preimage = preimage(t, c);
    rows.push_back(std::move(row));
  }
  return rows;
}

Refutation refute_p9r3() {
  const CaseParams c = CaseParams::make(9, 3);
  Refutation ref;
  ref.kind = RefutationKind::kCsPropagation;
  ref.params = c;
  for (const auto& row : p9r3_table()) {
    ref.transcript.push_back(orbit_fact(c, row.typical));
    ref.transcript.push_back(preimage_fact(c, row.typical));
  }
  PropagationResult prop = forced_entry_propagation(c);
  if (!prop.infeasible || prop.refutation->transcript.back().name != "cs_violation") {
    throw InternalError("propagation did not reproduce the (9,3) minor violation");
  }
  for (auto& f : prop.refutation->transcript) ref.transcript.push_back(std::move(f));
  return ref;
}

ReplayResult replay(const Refutation& refutation) {
  ReplayResult out;
  if (refutation.transcript.empty()) {
    out.message = "empty transcript";
    return out;
  }
  // forced values per ordered (u,v) as claimed by verified forced_entry facts
  std::map<std::pair<BitString, BitString>, std::vector<Rational>> forced;
  try {
    for (const auto& f : refutation.transcript) {
      const CaseParams c = fact_params(f);
      if (c != refutation.params) {
        out.message = "fact parameters differ from the refutation's";
        return out;
      }
      bool good = false;
      if (f.name == "N" || f.name == "Ntilde") {
        const PairCounts pc = pair_counts(input_word(f, "u"), input_word(f, "v"), c);
        good = f.value == std::to_string(f.name == "N" ? pc.n : pc.ntilde);
      } else if (f.name == "preimage") {
        good = f.value == format_pairs(preimage(orbit(input_word(f, "s")), c));
      } else if (f.name == "orbit_size") {
        good = f.value == std::to_string(orbit(input_word(f, "s")).orbit_size);
      } else if (f.name == "forced_entry") {
        const BitString s = input_word(f, "s");
        const BitString u = input_word(f, "u");
        const BitString v = input_word(f, "v");
        const Necklace t = orbit(s);
        good = preimage(t, c) == std::vector<StringPair>{{u, v}} &&
               parse_rational(f.value) == Rational(static_cast<unsigned long>(t.orbit_size));
        if (good) {
          forced[{u, v}].push_back(parse_rational(f.value));
          if (u != v) forced[{v, u}].push_back(parse_rational(f.value));
        }
      } else if (f.name == "divisor_bound") {
        const BitString z = input_word(f, "z");
        const std::size_t nt = pair_counts(z, z, c).ntilde;
        good = f.value == std::to_string(nt) + "<" + std::to_string(2 * c.p) && nt <= static_cast<std::size_t>(c.p);
      } else if (f.name == "cs_violation" || f.name == "symmetry_conflict" || f.name == "negative_diagonal" ||
                 f.name == "zero_diagonal") {
        const BitString u = input_word(f, "u");
        const BitString v = input_word(f, "v");
        auto values = [&](const BitString& a, const BitString& b) {
          auto it = forced.find({a, b});
          return it == forced.end() ? std::vector<Rational>{} : it->second;
        };
        if (f.name == "cs_violation") {
          auto [lhs, rhs] = split_relation(f.value, ">");
          auto uu = values(u, u), vv = values(v, v), uv = values(u, v);
          good = !uu.empty() && !vv.empty() && !uv.empty() && lhs == uv[0] * uv[0] && rhs == uu[0] * vv[0] &&
                 lhs > rhs;
        } else if (f.name == "symmetry_conflict") {
          auto [a, b] = split_relation(f.value, "!=");
          auto uv = values(u, v);
          good = a != b && std::count(uv.begin(), uv.end(), a) > 0 && std::count(uv.begin(), uv.end(), b) > 0;
        } else if (f.name == "negative_diagonal") {
          auto [a, zero] = split_relation(f.value, "<");
          auto uu = values(u, u);
          good = u == v && zero == 0 && a < 0 && std::count(uu.begin(), uu.end(), a) > 0;
        } else {
          auto uv = values(u, v);
          auto uu = values(u, u), vv = values(v, v);
          bool zero_diag = (!uu.empty() && uu[0] == 0) || (!vv.empty() && vv[0] == 0);
          good = zero_diag && !uv.empty() && uv[0] != 0;
        }
      } else {
        out.message = "unknown fact '" + f.name + "'";
        return out;
      }
      if (!good) {
        out.message = "fact does not re-verify: " + f.to_line();
        return out;
      }
    }
  } catch (const std::exception& e) {
    out.message = e.what();
    return out;
  }

  const Fact& last = refutation.transcript.back();
  if (refutation.kind == RefutationKind::kCsPropagation) {
    static const std::set<std::string> terminal{"cs_violation", "symmetry_conflict", "negative_diagonal",
                                                "zero_diagonal"};
    if (!terminal.count(last.name)) {
      out.message = "transcript does not end in a violated necessary condition";
      return out;
    }
    out.ok = true;
    return out;
  }

  // Witness refutation: locate z and the x,y pair, then require the hypothesis facts.
  const CaseParams& c = refutation.params;
  if (last.name != "divisor_bound") {
    out.message = "transcript does not end with the orbit-size bound";
    return out;
  }
  const BitString z = input_word(last, "z");
  const BitString w = w_of(c);
  const std::string p_str = std::to_string(c.p);
  auto has = [&](const char* name, const BitString& a, const BitString& b, const std::string& value) {
    for (const auto& f : refutation.transcript) {
      if (f.name == name && input(f, "u") == a.token() && input(f, "v") == b.token() && f.value == value) return true;
    }
    return false;
  };
  std::optional<std::vector<StringPair>> zz_pre;
  for (const auto& f : refutation.transcript) {
    if (f.name == "preimage" && input_word(f, "s") == sigma(z, z, c)) zz_pre = preimage(orbit(sigma(z, z, c)), c);
  }
  if (!zz_pre || zz_pre->size() != 3) {
    out.message = "missing three-element preimage for sigma(z,z)";
    return out;
  }
  if (std::find(zz_pre->begin(), zz_pre->end(), StringPair{z, z}) == zz_pre->end()) {
    out.message = "preimage of sigma(z,z) does not contain (z,z)";
    return out;
  }
  auto hypotheses_hold = [&](const BitString& x, const BitString& y) {
    if (x == y || x == z || x == w || y == w || z == w) return false;
    if (std::find(zz_pre->begin(), zz_pre->end(), StringPair{y, x}) == zz_pre->end()) return false;
    for (auto [a, b] : std::vector<std::pair<BitString, BitString>>{{w, w}, {w, x}, {w, y}, {x, x}}) {
      if (!has("N", a, b, "1") || !has("Ntilde", a, b, p_str)) return false;
    }
    return true;
  };
  bool found = false;
  for (const auto& [a, b] : *zz_pre) {
    if (!(a == z && b == z) && hypotheses_hold(a, b)) found = true;
  }
  if (!found) {
    out.message = "transcript does not establish the hypotheses for any (x,y)";
    return out;
  }
  out.ok = true;
  return out;
}

}  // namespace conditionh
