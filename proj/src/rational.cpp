#include "jks/rational.hpp"

#include "jks/errors.hpp"

#include <string>

namespace jks {

std::string to_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(std::string_view text) {
  std::string s;
  for (std::size_t i = 0; i < text.size(); ++i) {
    // U+2212 MINUS SIGN is E2 88 92 in UTF-8.
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      s.push_back('-');
      i += 2;
      continue;
    }
    if (text[i] != ' ') s.push_back(text[i]);
  }
  const auto bad = [&] {
    return Error(ErrorKind::ParseError, "not a rational number: '" + std::string(text) + "'");
  };
  if (s.empty()) throw bad();
  const auto slash = s.find('/');
  const auto valid_int = [](const std::string& t, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) throw bad();
  if (num[0] == '+') num.erase(0, 1);
  Integer d(den);
  if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  return Rational(Integer(num), d);
}

Rational factorial(int n) {
  Rational r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Rational binomial(int e, int k) {
  if (k < 0) return 0;
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= Rational(e - i, i + 1);
  return r;
}

}  // namespace jks
