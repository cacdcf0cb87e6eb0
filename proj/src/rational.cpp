#include "multiflow/error.hpp"
#include "multiflow/rational.hpp"

#include <cctype>

namespace multiflow {

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NonIntegral: return "NonIntegral";
    case ErrorKind::NoSuchDemand: return "NoSuchDemand";
    case ErrorKind::OddSetSize: return "OddSetSize";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::Violated: return "Violated";
    case ErrorKind::NotSeriesParallel: return "NotSeriesParallel";
    case ErrorKind::NotTwoConnected: return "NotTwoConnected";
    case ErrorKind::CrossingDemand: return "CrossingDemand";
    case ErrorKind::BothDeficitsPositive: return "BothDeficitsPositive";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::InternalError: return "InternalError";
    case ErrorKind::NotK2mShape: return "NotK2mShape";
    case ErrorKind::NotBipartite: return "NotBipartite";
    case ErrorKind::NotRing: return "NotRing";
    case ErrorKind::NotEulerian: return "NotEulerian";
    case ErrorKind::NotFullyCompliant: return "NotFullyCompliant";
    case ErrorKind::NotCompliant: return "NotCompliant";
    case ErrorKind::NoPath: return "NoPath";
    case ErrorKind::DegenerateLengths: return "DegenerateLengths";
    case ErrorKind::MissingCoverage: return "MissingCoverage";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::NotACover: return "NotACover";
    case ErrorKind::UncoveredDemand: return "UncoveredDemand";
    case ErrorKind::NotFractionallyRoutable: return "NotFractionallyRoutable";
    case ErrorKind::EmbeddingMismatch: return "EmbeddingMismatch";
    case ErrorKind::NotSingleFace: return "NotSingleFace";
    case ErrorKind::OddM: return "OddM";
    case ErrorKind::NonPositiveC: return "NonPositiveC";
    case ErrorKind::ResourceCap: return "ResourceCap";
  }
  return "Unknown";
}

Rational parse_rational(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw Error(ErrorKind::InvalidInput, "empty rational");
  auto slash = t.find('/');
  auto digits_ok = [](const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  std::string num = slash == std::string::npos ? t : t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false))
    throw Error(ErrorKind::InvalidInput, "malformed rational '" + text + "'");
  if (num[0] == '+') num = num.substr(1);
  mpz_class n(num), d(den);
  if (d == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + text + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Rational floor_of(const Rational& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(r);
}

Rational ceil_of(const Rational& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(r);
}

Rational min_of(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational max_of(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace multiflow
