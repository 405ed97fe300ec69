#include "macpoly/rational.hpp"

#include <cctype>
#include <string>

#include "macpoly/errors.hpp"

namespace macpoly {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Arithmetic: return "arithmetic";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::DegenerateSpectrum: return "degenerate-spectrum";
    case ErrorKind::LimitFailure: return "limit-failure";
    case ErrorKind::PoleProximity: return "pole-proximity";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

Rational parse_rational(std::string_view s) {
  std::string str(s);
  if (str.empty()) fail(ErrorKind::InvalidInput, "empty rational");
  for (std::size_t i = 0; i < str.size(); ++i) {
    const char c = str[i];
    const bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' || ((c == '-' || c == '+') && i == 0);
    if (!ok) fail(ErrorKind::InvalidInput, "bad rational '" + str + "'");
  }
  if (str[0] == '+') str = str.substr(1);
  Rational r;
  if (r.set_str(str, 10) != 0) fail(ErrorKind::InvalidInput, "bad rational '" + str + "'");
  if (r.get_den() == 0) fail(ErrorKind::InvalidInput, "zero denominator in '" + str + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }
std::string to_string(const BigInt& z) { return z.get_str(); }

}  // namespace macpoly
