#include "conditionh/certificate_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "conditionh/error.hpp"

namespace conditionh {

namespace {

std::string next_line(std::istream& in, const char* what) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) return line;
  }
  throw ParseError(std::string("unexpected end of certificate while reading ") + what);
}

int parse_field(const std::string& token, const std::string& key) {
  if (token.rfind(key + "=", 0) != 0) throw ParseError("expected " + key + "=<int>, got '" + token + "'");
  try {
    std::size_t used = 0;
    int value = std::stoi(token.substr(key.size() + 1), &used);
    if (used != token.size() - key.size() - 1) throw ParseError("bad integer in '" + token + "'");
    return value;
  } catch (const std::logic_error&) {
    throw ParseError("bad integer in '" + token + "'");
  }
}

}  // namespace

void write_certificate(std::ostream& out, const GramCertificate& g) {
  out << "conditionh-cert v1 p=" << g.params.p << " r=" << g.params.r << "\n";
  out << "basis " << g.basis.size() << "\n";
  for (const auto& b : g.basis) out << b.token() << "\n";
  for (std::size_t i = 0; i < g.matrix.rows(); ++i) {
    for (std::size_t j = 0; j < g.matrix.cols(); ++j) {
      if (j) out << ' ';
      out << to_string(g.matrix(i, j));
    }
    out << "\n";
  }
}

GramCertificate read_certificate(std::istream& in) {
  std::istringstream header(next_line(in, "header"));
  std::string magic, version, pf, rf, extra;
  header >> magic >> version >> pf >> rf;
  if (magic != "conditionh-cert" || version != "v1" || (header >> extra)) {
    throw ParseError("bad certificate header");
  }
  const int p = parse_field(pf, "p");
  const int r = parse_field(rf, "r");
  CaseParams params;
  try {
    params = (p % 2 == 0 && r % 2 == 0) ? CaseParams::explore(p, r) : CaseParams::make(p, r);
  } catch (const DomainError& e) {
    throw ParseError(std::string("certificate parameters: ") + e.what());
  }

  std::istringstream basis_line(next_line(in, "basis size"));
  std::string word;
  long n = -1;
  if (!(basis_line >> word >> n) || word != "basis" || n < 0 || (basis_line >> extra)) {
    throw ParseError("expected 'basis <n>'");
  }
  const auto expected = enumerate_weighted_strings(params.k, params.q);
  if (static_cast<std::size_t>(n) != expected.size()) {
    throw ParseError("basis size " + std::to_string(n) + " does not match p=" + std::to_string(p) +
                     " r=" + std::to_string(r));
  }
  for (const auto& e : expected) {
    std::string line = next_line(in, "basis");
    BitString b;
    try {
      b = BitString::parse(line);
    } catch (const DomainError&) {
      throw ParseError("bad basis word '" + line + "'");
    }
    if (b != e) throw ParseError("basis mismatch: expected " + e.token() + ", got " + line);
  }

  RationalMatrix m(expected.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    std::istringstream row(next_line(in, "matrix"));
    std::string token;
    for (std::size_t j = 0; j < expected.size(); ++j) {
      if (!(row >> token)) throw ParseError("row " + std::to_string(i + 1) + " is too short");
      m(i, j) = parse_rational(token);
    }
    if (row >> token) throw ParseError("row " + std::to_string(i + 1) + " is too long");
  }
  std::string trailing;
  while (std::getline(in, trailing)) {
    if (trailing.find_first_not_of(" \t\r") != std::string::npos) throw ParseError("trailing data after matrix");
  }
  if (!m.is_symmetric()) throw ParseError("matrix is not symmetric");
  return GramCertificate::make(params, std::move(m));
}

void save_certificate(const std::string& path, const GramCertificate& g) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  write_certificate(out, g);
  if (!out) throw ParseError("write to '" + path + "' failed");
}

GramCertificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_certificate(in);
}

}  // namespace conditionh
