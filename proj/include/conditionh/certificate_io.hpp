#pragma once

#include <iosfwd>
#include <string>

#include "conditionh/gram.hpp"

namespace conditionh {

/// Text format:
///   conditionh-cert v1 p=<p> r=<r>
///   basis <n>
///   <n basis words, one per line; "-" for the empty word>
///   <n rows of n rationals separated by single spaces>
void write_certificate(std::ostream& out, const GramCertificate& g);

/// Throws ParseError on malformed input, a basis that does not match (p,r), or an
/// asymmetric matrix.
GramCertificate read_certificate(std::istream& in);

void save_certificate(const std::string& path, const GramCertificate& g);
GramCertificate load_certificate(const std::string& path);

}  // namespace conditionh
