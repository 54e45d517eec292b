#include "vetocore/rational.hpp"

#include <cctype>

namespace vetocore {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational make_rational(long num, long den) {
  if (den == 0) throw Error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  // Trim.
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty number");

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
    if (text.empty()) throw ParseError("sign without digits");
  }

  std::string s(text);
  auto slash = s.find('/');
  Rational result;
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw ParseError("malformed fraction '" + s + "'");
    Rational r(Integer(num, 10), Integer(den, 10));
    if (r.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    r.canonicalize();
    result = r;
  } else {
    auto dot = s.find('.');
    if (dot == std::string::npos) {
      if (!all_digits(s)) throw ParseError("malformed number '" + s + "'");
      result = Rational(Integer(s, 10));
    } else {
      std::string ip = s.substr(0, dot);
      std::string fp = s.substr(dot + 1);
      if (ip.empty() && fp.empty()) throw ParseError("malformed number '" + s + "'");
      if (!ip.empty() && !all_digits(ip))
        throw ParseError("malformed number '" + s + "'");
      if (!fp.empty() && !all_digits(fp))
        throw ParseError("malformed number '" + s + "'");
      Integer scale = 1;
      for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
      Integer whole = ip.empty() ? Integer(0) : Integer(ip, 10);
      Integer frac = fp.empty() ? Integer(0) : Integer(fp, 10);
      Rational r(whole * scale + frac, scale);
      r.canonicalize();
      result = r;
    }
  }
  if (negative) result = -result;
  return result;
}

std::string to_string(const Rational& value) {
  return value.get_str();
}

double to_double(const Rational& value) {
  return value.get_d();
}

}  // namespace vetocore
