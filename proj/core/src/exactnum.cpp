#include "ccrank/exactnum.hpp"

#include <algorithm>
#include <cctype>

namespace ccrank {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotSurjective: return "NotSurjective";
    case Errc::ResourceCap: return "ResourceCap";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::UnknownName: return "UnknownName";
    case Errc::SpanMismatch: return "SpanMismatch";
    case Errc::OrderTooLow: return "OrderTooLow";
    case Errc::NotHomogeneous: return "NotHomogeneous";
    case Errc::ConstantRankViolated: return "ConstantRankViolated";
    case Errc::InclusionViolated: return "InclusionViolated";
    case Errc::BadSize: return "BadSize";
    case Errc::UnderResolved: return "UnderResolved";
    case Errc::CompatibilityViolated: return "CompatibilityViolated";
    case Errc::NotSpanning: return "NotSpanning";
    case Errc::KernelMembershipViolated: return "KernelMembershipViolated";
    case Errc::ResidualTooLarge: return "ResidualTooLarge";
    case Errc::MeanNotInImage: return "MeanNotInImage";
    case Errc::NotAnnihilator: return "NotAnnihilator";
    case Errc::OrderNotSupported: return "OrderNotSupported";
    case Errc::NoWitness: return "NoWitness";
    case Errc::ParseError: return "ParseError";
    case Errc::InternalError: return "InternalError";
  }
  return "Unknown";
}

Rational parse_rational(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) fail(Errc::ParseError, "empty rational");
  if (s[0] == '+') s.erase(0, 1);
  auto ok = [](const std::string& t) {
    std::size_t k = (!t.empty() && t[0] == '-') ? 1 : 0;
    if (k == t.size()) return false;
    return std::all_of(t.begin() + k, t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!ok(num) || !ok(den) || den[0] == '-') fail(Errc::ParseError, "bad rational '" + raw + "'");
  Rational q;
  try {
    q = Rational(mpz_class(num), mpz_class(den));
  } catch (const std::exception&) {
    fail(Errc::ParseError, "bad rational '" + raw + "'");
  }
  if (sgn(q.get_den()) == 0) fail(Errc::ParseError, "zero denominator in '" + raw + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const GaussRational& z) {
  if (z.is_real()) return to_string(z.re());
  std::string im;
  const Rational& b = z.im();
  if (b == 1)
    im = "i";
  else if (b == -1)
    im = "-i";
  else
    im = to_string(b) + "i";
  if (sgn(z.re()) == 0) return im;
  return to_string(z.re()) + (sgn(b) > 0 ? "+" : "") + im;
}

GaussRational parse_gauss(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) fail(Errc::ParseError, "empty complex number");
  if (s.back() != 'i') return GaussRational(parse_rational(s));
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  std::string re = split == std::string::npos ? "0" : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  Rational b;
  if (im.empty() || im == "+")
    b = 1;
  else if (im == "-")
    b = -1;
  else
    b = parse_rational(im);
  return GaussRational(parse_rational(re), b);
}

std::ostream& operator<<(std::ostream& os, const GaussRational& z) { return os << to_string(z); }

std::vector<std::string> to_strings(const std::vector<GaussRational>& v) {
  std::vector<std::string> out;
  for (const auto& z : v) out.push_back(to_string(z));
  return out;
}

}  // namespace ccrank
